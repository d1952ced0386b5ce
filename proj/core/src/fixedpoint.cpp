#include "hyperbeta/fixedpoint.hpp"

#include "hyperbeta/error.hpp"
#include "hyperbeta/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace hyperbeta {

std::string_view to_string(FitStatus status)
{
  switch (status) {
  case FitStatus::Converged: return "converged";
  case FitStatus::DivergedUnbounded: return "diverged_unbounded";
  case FitStatus::DivergedPeriodic: return "diverged_periodic";
  case FitStatus::MaxIterExceeded: return "max_iter";
  case FitStatus::BoundaryDegrees: return "boundary_degrees";
  }
  return "unknown";
}

FitStatus parse_fit_status(std::string_view name)
{
  for (auto s : {FitStatus::Converged, FitStatus::DivergedUnbounded, FitStatus::DivergedPeriodic,
                 FitStatus::MaxIterExceeded, FitStatus::BoundaryDegrees})
    if (to_string(s) == name)
      return s;
  throw Error(ErrorCode::InvalidArgument, "unknown fit status '" + std::string(name) + "'");
}

double sup_norm(const LayeredValues& v)
{
  double m = 0.0;
  for (const auto& layer : v)
    for (double x : layer)
      m = std::max(m, std::abs(x));
  return m;
}

namespace {

struct EdgePass {
  std::vector<double> inner;      // Σ_{e∋i} exp(β̃_e − β_i) / (1 + exp(β̃_e))
  std::vector<double> curvature;  // Σ_{e∋i} |e| p_e (1 − p_e), when requested
};

// One pass over the edges with |e| in `sizes`. `inner` is the sum inside φ_i
// (s = e ∖ {i}); E_i = inner_i · e^{β_i} is the expected degree.
EdgePass edge_pass(int n, std::span<const int> sizes, std::span<const double> beta, bool with_curvature)
{
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(n));
  std::vector<CompensatedSum> curv(with_curvature ? static_cast<std::size_t>(n) : 0);
  for (int k : sizes) {
    for (std::span<const Node> e : KSubsets(n, k)) {
      double z = 0.0;
      for (Node v : e)
        z += beta[static_cast<std::size_t>(v)];
      const double log_denominator = softplus(z);
      for (Node v : e)
        acc[static_cast<std::size_t>(v)].add(std::exp(z - beta[static_cast<std::size_t>(v)] - log_denominator));
      if (with_curvature) {
        const double p = logistic(z);
        const double w = k * p * (1.0 - p);
        for (Node v : e)
          curv[static_cast<std::size_t>(v)].add(w);
      }
    }
  }
  EdgePass out;
  out.inner.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    out.inner[i] = acc[i].value();
  out.curvature.resize(curv.size());
  for (std::size_t i = 0; i < curv.size(); ++i)
    out.curvature[i] = curv[i].value();
  return out;
}

std::vector<double> inner_sums(int n, std::span<const int> sizes, std::span<const double> beta)
{
  return edge_pass(n, sizes, beta, false).inner;
}

void require_positive(std::span<const double> degrees, int layer_size)
{
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (!(degrees[i] > 0.0)) {
      std::string where = "node " + std::to_string(i + 1);
      if (layer_size > 0)
        where += ", size " + std::to_string(layer_size);
      throw Error(ErrorCode::NonpositiveDegree, "degree must be positive (" + where + ")");
    }
  }
}

std::vector<double> phi_block(int n, std::span<const int> sizes, std::span<const double> beta,
                              std::span<const double> degrees)
{
  if (static_cast<int>(beta.size()) != n || static_cast<int>(degrees.size()) != n)
    throw Error(ErrorCode::InvalidArgument, "beta and degrees must have length n");
  const std::vector<double> sums = inner_sums(n, sizes, beta);
  std::vector<double> out(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i)
    out[i] = std::log(degrees[i]) - std::log(sums[i]);
  return out;
}

} // namespace

std::vector<double> phi_uniform(const EdgeSpace& space, std::span<const double> beta, std::span<const double> degrees)
{
  if (!space.is_uniform())
    throw Error(ErrorCode::InvalidArgument, "phi_uniform needs a single edge size");
  require_positive(degrees, 0);
  return phi_block(space.n(), space.sizes(), beta, degrees);
}

LayeredValues phi_layered(const EdgeSpace& space, const LayeredValues& beta, const LayeredValues& degrees)
{
  const auto& sizes = space.sizes();
  if (beta.size() != sizes.size() || degrees.size() != sizes.size())
    throw Error(ErrorCode::InvalidArgument, "one parameter and degree layer per edge size expected");
  LayeredValues out;
  for (std::size_t l = 0; l < sizes.size(); ++l) {
    require_positive(degrees[l], sizes[l]);
    out.push_back(phi_block(space.n(), std::span<const int>(&sizes[l], 1), beta[l], degrees[l]));
  }
  return out;
}

std::vector<double> phi_general(const EdgeSpace& space, std::span<const double> beta, std::span<const double> degrees)
{
  require_positive(degrees, 0);
  return phi_block(space.n(), space.sizes(), beta, degrees);
}

LayeredValues check_moment_equations(const ModelSpec& spec, const ParamVector& beta, const DegreeSequence& degrees)
{
  LayeredValues expected = grad_psi(spec, beta);
  const LayeredValues target = target_degrees(spec, degrees);
  for (std::size_t l = 0; l < expected.size(); ++l)
    for (std::size_t i = 0; i < expected[l].size(); ++i)
      expected[l][i] -= target[l][i];
  return expected;
}

namespace {

// A group of parameters updated together: one layer of a Layered model,
// or the single vector of a Uniform/General model.
struct Block {
  std::vector<int> sizes;
  std::vector<double> degrees;
  std::vector<double>* beta;
  double omega = 1.0;
  double omega_min = 1.0;
  double safety = 1.0;
  double previous_step = std::numeric_limits<double>::infinity();
};

bool on_boundary(const Block& block, int n)
{
  double cap = 0.0;
  for (int k : block.sizes)
    cap += static_cast<double>(binomial(n - 1, k - 1));
  return std::any_of(block.degrees.begin(), block.degrees.end(),
                     [cap](double d) { return !(d > 0.0) || d >= cap; });
}

double max_abs(const ParamVector& beta) { return sup_norm(beta.layers); }

double distance(const ParamVector& a, const ParamVector& b)
{
  double m = 0.0;
  for (std::size_t l = 0; l < a.layers.size(); ++l)
    for (std::size_t i = 0; i < a.layers[l].size(); ++i)
      m = std::max(m, std::abs(a.layers[l][i] - b.layers[l][i]));
  return m;
}

bool all_finite(const ParamVector& beta)
{
  for (const auto& layer : beta.layers)
    for (double b : layer)
      if (!std::isfinite(b))
        return false;
  return true;
}

bool is_power_multiple(int l, int start)
{
  if (start <= 0 || l < start || l % start != 0)
    return false;
  const int q = l / start;
  return (q & (q - 1)) == 0;
}

constexpr double kRecurrenceTolerance = 1e-8;
constexpr double kRecurrenceRatio = 1e-6;

} // namespace

FitResult fit_fixed_point(const ModelSpec& spec, const DegreeSequence& degrees, const FixedPointOptions& opts)
{
  if (!(opts.tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (opts.max_iter < 1 || opts.period_window < 2)
    throw Error(ErrorCode::InvalidArgument, "max_iter must be >= 1 and period_window >= 2");
  if (opts.slow_growth_doublings < 1 || (opts.slow_growth_start >> opts.slow_growth_doublings) < 1 ||
      !(opts.slow_growth_tolerance > 0.0))
    throw Error(ErrorCode::InvalidArgument, "slow-growth check needs start >= 2^doublings and a positive tolerance");

  const int n = spec.n();
  const LayeredValues target = target_degrees(spec, degrees);

  FitResult result;
  result.beta = ParamVector::zeros(spec);

  std::vector<Block> blocks;
  for (int l = 0; l < spec.layer_count(); ++l) {
    Block b;
    b.sizes = spec.sizes_of_layer(l);
    b.degrees = target[static_cast<std::size_t>(l)];
    b.beta = &result.beta.layers[static_cast<std::size_t>(l)];
    if (opts.step_control == StepControl::Adaptive)
      b.omega_min = 1.0 / static_cast<double>(b.sizes.back());
    blocks.push_back(std::move(b));
  }

  auto finish = [&](FitStatus status) {
    result.status = status;
    result.moment_residual = all_finite(result.beta)
                                 ? sup_norm(check_moment_equations(spec, result.beta, degrees))
                                 : std::numeric_limits<double>::infinity();
    return result;
  };

  for (const Block& b : blocks)
    if (on_boundary(b, n))
      return finish(FitStatus::BoundaryDegrees);

  const int window = opts.period_window;
  std::deque<ParamVector> recent;  // most recent first
  std::vector<double> max_history;
  std::vector<double> step_history;
  max_history.reserve(static_cast<std::size_t>(opts.max_iter) + 1);
  step_history.reserve(static_cast<std::size_t>(opts.max_iter));

  for (int l = 0; l < opts.max_iter; ++l) {
    const double current_max = max_abs(result.beta);
    max_history.push_back(current_max);
    if (opts.iterate_stride > 0 && l % opts.iterate_stride == 0)
      result.iterates.emplace_back(l, result.beta);

    // φ(β_l) − β_l per block; the inner sums also give E_i = sum_i · e^{β_i}.
    double step = 0.0;
    double residual = 0.0;
    std::vector<std::vector<double>> deltas;
    for (Block& b : blocks) {
      const bool adaptive = opts.step_control == StepControl::Adaptive;
      const EdgePass pass = edge_pass(n, b.sizes, *b.beta, adaptive);
      std::vector<double> delta(pass.inner.size());
      double block_step = 0.0;
      double spread = 0.0;  // max row sum of D⁻¹ ∇²ψ, bounds its spectrum
      for (std::size_t i = 0; i < delta.size(); ++i) {
        delta[i] = std::log(b.degrees[i]) - std::log(pass.inner[i]) - (*b.beta)[i];
        block_step = std::max(block_step, std::abs(delta[i]));
        const double expected = pass.inner[i] * std::exp((*b.beta)[i]);
        residual = std::max(residual, std::abs(expected - b.degrees[i]));
        if (adaptive)
          spread = std::max(spread, pass.curvature[i] / expected);
      }
      if (!std::isfinite(block_step))
        block_step = std::numeric_limits<double>::infinity();
      if (adaptive) {
        if (block_step > b.previous_step)
          b.safety = std::max(b.safety * 0.5, b.omega_min);
        b.omega = b.safety * (spread > opts.relaxation ? opts.relaxation / spread : 1.0);
      }
      b.previous_step = block_step;
      step = std::max(step, block_step);
      deltas.push_back(std::move(delta));
    }
    if (opts.record_trace)
      result.trace.push_back({l, step, current_max, residual});

    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      Block& b = blocks[bi];
      for (std::size_t i = 0; i < deltas[bi].size(); ++i)
        (*b.beta)[i] += b.omega * deltas[bi][i];
    }
    result.iterations = l + 1;
    result.final_step = step;
    step_history.push_back(step);

    if (!std::isfinite(step) || !all_finite(result.beta))
      return finish(FitStatus::DivergedUnbounded);
    if (step <= opts.tol)
      return finish(FitStatus::Converged);

    // A non-adjacent earlier iterate recurs: the sequence cycles. A converging
    // sequence also brings iterates within the tolerance, so the recurrence
    // has to be tight relative to the current step as well.
    const double recurrence = std::min(kRecurrenceTolerance, kRecurrenceRatio * step);
    for (std::size_t lag = 1; lag < recent.size(); ++lag) {
      if (distance(result.beta, recent[lag]) <= recurrence)
        return finish(FitStatus::DivergedPeriodic);
    }
    recent.push_front(result.beta);
    if (static_cast<int>(recent.size()) > window)
      recent.pop_back();

    const int next = l + 1;
    const double new_max = max_abs(result.beta);
    if (new_max > opts.divergence_bound && next >= window &&
        new_max > max_history[static_cast<std::size_t>(next - window)])
      return finish(FitStatus::DivergedUnbounded);

    // Logarithmic drift to the boundary: max|β| keeps rising while the step
    // shrinks like 1/t, so t·step stays flat from doubling to doubling. A
    // geometric tail multiplies t·step by 2ρ^{t/2} per doubling and can't
    // stay flat twice in a row.
    if (is_power_multiple(next, opts.slow_growth_start)) {
      const auto scaled = [&](int t) { return t * step_history[static_cast<std::size_t>(t - 1)]; };
      const double tol = 1.0 + opts.slow_growth_tolerance;
      bool drifting = true;
      double later_max = new_max;
      for (int j = 0, t = next; j < opts.slow_growth_doublings && drifting; ++j, t /= 2) {
        const double earlier_max = max_history[static_cast<std::size_t>(t / 2)];
        const double r = scaled(t) / scaled(t / 2);
        drifting = earlier_max < later_max && r <= tol && r * tol >= 1.0;
        later_max = earlier_max;
      }
      if (drifting)
        return finish(FitStatus::DivergedUnbounded);
    }
  }
  return finish(FitStatus::MaxIterExceeded);
}

std::string trace_csv(const FitResult& result)
{
  std::ostringstream out;
  out << "iteration,step,max_abs_beta,residual\n";
  for (const TraceRow& row : result.trace)
    out << row.iteration << ',' << format_real(row.step) << ',' << format_real(row.max_abs_beta) << ','
        << format_real(row.residual) << '\n';
  return out.str();
}

} // namespace hyperbeta
