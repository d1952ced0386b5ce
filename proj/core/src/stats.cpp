#include "hyperbeta/stats.hpp"

#include "hyperbeta/error.hpp"

#include <cmath>
#include <limits>

namespace hyperbeta {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kEps = 1e-16;

void check_args(double a, double x)
{
  if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a))
    throw Error(ErrorCode::DomainError, "incomplete gamma needs a > 0 and x >= 0");
}

double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

// P(a, x) by its power series, good for x < a + 1.
double p_series(double a, double x)
{
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxTerms; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps)
      break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

// Q(a, x) by the Legendre continued fraction (modified Lentz), x >= a + 1.
double q_fraction(double a, double x)
{
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny)
      d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny)
      c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps)
      break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

} // namespace

FitFailedError::FitFailedError(Variant model, FitStatus status)
    : Error(ErrorCode::FitFailed, std::string(to_string(model)) + " fit ended with " + std::string(to_string(status))),
      model_(model), status_(status)
{
}

double gamma_p(double a, double x)
{
  check_args(a, x);
  if (x == 0.0)
    return 0.0;
  if (std::isinf(x))
    return 1.0;
  return x < a + 1.0 ? p_series(a, x) : 1.0 - q_fraction(a, x);
}

double gamma_q(double a, double x)
{
  check_args(a, x);
  if (x == 0.0)
    return 1.0;
  if (std::isinf(x))
    return 0.0;
  return x < a + 1.0 ? 1.0 - p_series(a, x) : q_fraction(a, x);
}

double chi2_sf(double x, double df)
{
  if (!(df > 0.0) || !(x >= 0.0))
    throw Error(ErrorCode::DomainError, "chi2_sf needs df > 0 and x >= 0");
  return gamma_q(df / 2.0, x / 2.0);
}

double chi2_quantile(double p, double df)
{
  if (!(p > 0.0 && p < 1.0) || !(df > 0.0))
    throw Error(ErrorCode::DomainError, "chi2_quantile needs p in (0,1) and df > 0");
  double lo = 0.0;
  double hi = std::max(1.0, df);
  while (chi2_sf(hi, df) > p) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi))
      throw Error(ErrorCode::DomainError, "chi2_quantile failed to bracket");
  }
  // sf is decreasing; bisect to full double resolution.
  for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi2_sf(mid, df) > p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

LrtResult lrt_layered_vs_general(const EdgeSpace& space, const DegreeSequence& degrees, const FixedPointOptions& opts,
                                 const std::vector<double>& levels)
{
  if (!degrees.has_layers())
    throw Error(ErrorCode::InvalidArgument, "the likelihood ratio test needs per-size degrees");
  if (space.sizes().size() < 2)
    throw Error(ErrorCode::InvalidArgument, "the likelihood ratio test needs at least two edge sizes");

  const ModelSpec layered(Variant::Layered, space);
  const ModelSpec general(Variant::General, space);
  const FitResult fit_layered = fit_fixed_point(layered, degrees, opts);
  if (fit_layered.status != FitStatus::Converged)
    throw FitFailedError(Variant::Layered, fit_layered.status);
  const FitResult fit_general = fit_fixed_point(general, degrees, opts);
  if (fit_general.status != FitStatus::Converged)
    throw FitFailedError(Variant::General, fit_general.status);

  LrtResult out;
  out.loglik_layered = log_likelihood(layered, fit_layered.beta, degrees);
  out.loglik_general = log_likelihood(general, fit_general.beta, degrees);
  out.lambda = 2.0 * (out.loglik_layered - out.loglik_general);
  out.df = static_cast<int>(space.sizes().size() - 1) * space.n();
  out.p_value = chi2_sf(std::max(out.lambda, 0.0), out.df);
  for (double level : levels)
    out.reject_at[level] = out.p_value < level;
  return out;
}

} // namespace hyperbeta
