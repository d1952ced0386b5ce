#include "hyperbeta/ips.hpp"

#include "hyperbeta/error.hpp"
#include "hyperbeta/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyperbeta {

SymmetricTable::SymmetricTable(EdgeSpace space, std::vector<double> present, std::vector<double> absent)
    : space_(std::move(space)), present_(std::move(present)), absent_(std::move(absent))
{
  if (present_.size() != space_.edge_count() || absent_.size() != present_.size())
    throw Error(ErrorCode::InvalidArgument, "table needs one present and one absent cell per edge");
}

double SymmetricTable::multiplicity(int r, int size)
{
  double m = 1.0;
  for (int t = r - size + 1; t <= r - 1; ++t)
    m *= t;
  return m;
}

std::vector<double> SymmetricTable::margins() const
{
  std::vector<CompensatedSum> acc(static_cast<std::size_t>(space_.n()));
  std::size_t idx = 0;
  for (int k : space_.sizes()) {
    const double m = multiplicity(k);
    for (std::span<const Node> e : KSubsets(space_.n(), k)) {
      const double mass = m * present_[idx++];
      for (Node v : e)
        acc[static_cast<std::size_t>(v)].add(mass);
    }
  }
  std::vector<double> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i)
    out[i] = acc[i].value();
  return out;
}

std::vector<double> SymmetricTable::probabilities() const
{
  std::vector<double> out;
  out.reserve(present_.size());
  std::size_t idx = 0;
  for (int k : space_.sizes()) {
    const double m = multiplicity(k);
    const std::uint64_t count = binomial(space_.n(), k);
    for (std::uint64_t c = 0; c < count; ++c, ++idx) {
      const double p = m * present_[idx];
      const double total = p + absent_[idx];
      out.push_back(total > 0.0 ? p / total : 0.0);
    }
  }
  return out;
}

namespace {

void check_degrees(const EdgeSpace& space, std::span<const double> degrees)
{
  if (static_cast<int>(degrees.size()) != space.n())
    throw Error(ErrorCode::InvalidArgument, "degree vector must have length n");
  for (double d : degrees)
    if (!std::isfinite(d) || d < 0.0)
      throw Error(ErrorCode::InvalidArgument, "degrees must be finite and non-negative");
}

double margin_gap(std::span<const double> margins, std::span<const double> degrees)
{
  double gap = 0.0;
  for (std::size_t i = 0; i < margins.size(); ++i)
    gap = std::max(gap, std::abs(margins[i] - degrees[i]));
  return gap;
}

SymmetricTable scale(const SymmetricTable& table, std::span<const double> degrees, std::span<const double> margins)
{
  const int n = table.space().n();
  std::vector<double> factor(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double d = degrees[static_cast<std::size_t>(i)];
    const double m = margins[static_cast<std::size_t>(i)];
    if (m > 0.0)
      factor[static_cast<std::size_t>(i)] = d / m;
    else if (d == 0.0)
      factor[static_cast<std::size_t>(i)] = 1.0;
    else
      throw Error(ErrorCode::ZeroMarginWithPositiveTarget,
                  "node " + std::to_string(i + 1) + " has zero margin but positive degree");
  }

  SymmetricTable next = table;
  auto& present = next.present_mut();
  auto& absent = next.absent_mut();
  const double exponent = 1.0 / static_cast<double>(table.slots());
  std::size_t idx = 0;
  for (int k : table.space().sizes()) {
    const double mult = table.multiplicity(k);
    for (std::span<const Node> e : KSubsets(n, k)) {
      double g = 1.0;
      for (Node v : e)
        g *= factor[static_cast<std::size_t>(v)];
      const double cell = present[idx] * std::pow(g, exponent);
      const double mass = mult * cell + absent[idx];
      if (mass > 0.0) {
        present[idx] = cell / mass;
        absent[idx] /= mass;
      } else {
        present[idx] = 0.0;
        absent[idx] = 1.0;
      }
      ++idx;
    }
  }
  return next;
}

IpsResult run(SymmetricTable table, std::span<const double> degrees, const IpsOptions& opts)
{
  if (!(opts.tol > 0.0) || opts.max_iter < 0)
    throw Error(ErrorCode::InvalidArgument, "tol must be positive and max_iter non-negative");
  IpsResult result{std::move(table)};
  for (int t = 0;; ++t) {
    const std::vector<double> margins = result.table.margins();
    result.margin_residual = margin_gap(margins, degrees);
    result.iterations = t;
    if (result.margin_residual <= opts.tol) {
      result.status = FitStatus::Converged;
      break;
    }
    if (t == opts.max_iter) {
      result.status = FitStatus::MaxIterExceeded;
      break;
    }
    result.table = scale(result.table, degrees, margins);
  }
  for (double p : result.table.probabilities())
    if (p <= opts.boundary_eps || p >= 1.0 - opts.boundary_eps)
      result.on_boundary = true;
  return result;
}

} // namespace

SymmetricTable ips_init(const EdgeSpace& space, std::span<const double> degrees)
{
  check_degrees(space, degrees);
  double total = 0.0;
  for (double d : degrees)
    total += d;
  double slots_filled = 0.0;
  for (int k : space.sizes())
    slots_filled += k * static_cast<double>(binomial(space.n(), k));
  const double p0 = total / slots_filled;
  if (p0 > 1.0)
    throw Error(ErrorCode::InvalidArgument, "degrees exceed the complete hypergraph");

  // Per-size start probabilities. One size: the edge density. Several sizes:
  // logit p_k = k·c, so the start is itself a beta-model point (the scaling
  // only adds Σ log F over the slots and keeps logits additive); c matches
  // the expected degree total.
  std::vector<double> start(space.sizes().size(), p0);
  if (space.sizes().size() > 1 && p0 > 0.0 && p0 < 1.0) {
    auto expected = [&](double c) {
      double sum = 0.0;
      for (int k : space.sizes())
        sum += k * static_cast<double>(binomial(space.n(), k)) * logistic(k * c);
      return sum;
    };
    double lo = -1.0, hi = 1.0;
    while (expected(lo) > total)
      lo *= 2;
    while (expected(hi) < total)
      hi *= 2;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      (expected(mid) < total ? lo : hi) = mid;
    }
    const double c = 0.5 * (lo + hi);
    for (std::size_t j = 0; j < start.size(); ++j)
      start[j] = logistic(space.sizes()[j] * c);
  }

  std::vector<double> present;
  std::vector<double> absent;
  present.reserve(space.edge_count());
  absent.reserve(space.edge_count());
  for (std::size_t j = 0; j < start.size(); ++j) {
    const int k = space.sizes()[j];
    const double cell = start[j] / SymmetricTable::multiplicity(space.max_size(), k);
    const std::uint64_t count = binomial(space.n(), k);
    present.insert(present.end(), count, cell);
    absent.insert(absent.end(), count, 1.0 - start[j]);
  }
  return SymmetricTable(space, std::move(present), std::move(absent));
}

SymmetricTable ips_step(const SymmetricTable& table, std::span<const double> degrees)
{
  check_degrees(table.space(), degrees);
  return scale(table, degrees, table.margins());
}

IpsResult ips_fit(const EdgeSpace& space, std::span<const double> degrees, const IpsOptions& opts)
{
  if (!space.is_uniform())
    throw Error(ErrorCode::InvalidArgument, "ips_fit needs a single edge size");
  return run(ips_init(space, degrees), degrees, opts);
}

std::vector<IpsResult> ips_fit_layered(const EdgeSpace& space, const LayeredValues& degrees, const IpsOptions& opts)
{
  if (degrees.size() != space.sizes().size())
    throw Error(ErrorCode::InvalidArgument, "one degree layer per edge size expected");
  std::vector<IpsResult> out;
  for (std::size_t l = 0; l < degrees.size(); ++l) {
    const int k = space.sizes()[l];
    try {
      out.push_back(ips_fit(EdgeSpace::uniform(space.n(), k), degrees[l], opts));
    } catch (const Error& e) {
      throw Error(e.code(), "size " + std::to_string(k) + ": " + e.what());
    }
  }
  return out;
}

IpsResult ips_fit_general(const EdgeSpace& space, std::span<const double> degrees, const IpsOptions& opts)
{
  return run(ips_init(space, degrees), degrees, opts);
}

LayeredValues IpsModelFit::probabilities() const
{
  LayeredValues out;
  for (const IpsResult& r : layers)
    out.push_back(r.probabilities());
  return out;
}

IpsModelFit ips_fit_model(const ModelSpec& spec, const DegreeSequence& degrees, const IpsOptions& opts)
{
  const LayeredValues target = target_degrees(spec, degrees);
  IpsModelFit fit;
  if (spec.variant() == Variant::Layered)
    fit.layers = ips_fit_layered(spec.space(), target, opts);
  else
    fit.layers.push_back(ips_fit_general(spec.space(), target.front(), opts));

  fit.status = FitStatus::Converged;
  for (std::size_t l = 0; l < fit.layers.size(); ++l) {
    const IpsResult& r = fit.layers[l];
    if (r.status != FitStatus::Converged)
      fit.status = r.status;
    fit.iterations = std::max(fit.iterations, r.iterations);
    fit.margin_residual = std::max(fit.margin_residual, r.margin_residual);
    fit.on_boundary = fit.on_boundary || r.on_boundary;

    double cap = 0.0;
    for (int k : spec.sizes_of_layer(static_cast<int>(l)))
      cap += static_cast<double>(binomial(spec.n() - 1, k - 1));
    for (double d : target[l])
      if (!(d > 0.0) || d >= cap)
        fit.boundary_degrees = true;
  }
  return fit;
}

LogitInversion logits_to_beta(const ModelSpec& spec, const LayeredValues& probabilities)
{
  const int n = spec.n();
  if (static_cast<int>(probabilities.size()) != spec.layer_count())
    throw Error(ErrorCode::InvalidArgument, "one probability vector per parameter layer expected");

  LogitInversion out;
  for (int l = 0; l < spec.layer_count(); ++l) {
    const std::vector<int> sizes = spec.sizes_of_layer(l);
    const std::vector<double>& p = probabilities[static_cast<std::size_t>(l)];
    std::uint64_t expected = 0;
    double incidence = 0.0;  // edges through a node
    double overlap = 0.0;    // edges through a pair of nodes
    for (int k : sizes) {
      expected += binomial(n, k);
      incidence += static_cast<double>(binomial(n - 1, k - 1));
      overlap += static_cast<double>(binomial(n - 2, k - 2));
    }
    if (p.size() != expected)
      throw Error(ErrorCode::InvalidArgument, "probability vector does not match the edge space");
    if (incidence == overlap)
      throw Error(ErrorCode::DegenerateDesign, "edge design does not identify beta");

    std::vector<double> logits(p.size());
    for (std::size_t e = 0; e < p.size(); ++e) {
      if (!(p[e] > 0.0 && p[e] < 1.0))
        throw Error(ErrorCode::ProbabilityOnBoundary, "edge probability on the boundary; the MLE does not exist");
      logits[e] = logit(p[e]);
    }

    std::vector<CompensatedSum> s(static_cast<std::size_t>(n));
    std::size_t idx = 0;
    for (int k : sizes)
      for (std::span<const Node> e : KSubsets(n, k)) {
        for (Node v : e)
          s[static_cast<std::size_t>(v)].add(logits[idx]);
        ++idx;
      }
    CompensatedSum s_total;
    for (const auto& si : s)
      s_total.add(si.value());
    const double t = s_total.value() / (incidence - overlap + n * overlap);
    std::vector<double> beta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      beta[static_cast<std::size_t>(i)] = (s[static_cast<std::size_t>(i)].value() - overlap * t) / (incidence - overlap);

    idx = 0;
    for (int k : sizes)
      for (std::span<const Node> e : KSubsets(n, k)) {
        double z = 0.0;
        for (Node v : e)
          z += beta[static_cast<std::size_t>(v)];
        out.inconsistency = std::max(out.inconsistency, std::abs(z - logits[idx++]));
      }
    out.beta.layers.push_back(std::move(beta));
  }
  return out;
}

std::string probability_csv(const EdgeSpace& space, std::span<const double> probabilities)
{
  if (probabilities.size() != space.edge_count())
    throw Error(ErrorCode::InvalidArgument, "probability vector does not match the edge space");
  std::ostringstream out;
  std::size_t idx = 0;
  for_each_edge(space, [&](std::span<const Node> e) {
    for (Node v : e)
      out << v + 1 << ',';
    out << format_real(probabilities[idx++]) << '\n';
  });
  return out.str();
}

} // namespace hyperbeta
