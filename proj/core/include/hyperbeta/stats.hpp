#pragma once

#include "hyperbeta/error.hpp"
#include "hyperbeta/fixedpoint.hpp"
#include "hyperbeta/model.hpp"

#include <map>
#include <vector>

namespace hyperbeta {

/// Regularized lower/upper incomplete gamma P(a, x), Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution: Q(df/2, x/2).
double chi2_sf(double x, double df);
/// x with chi2_sf(x, df) = p.
double chi2_quantile(double p, double df);

/// A model fit inside a test did not converge.
class FitFailedError : public Error {
public:
  FitFailedError(Variant model, FitStatus status);
  Variant model() const noexcept { return model_; }
  FitStatus status() const noexcept { return status_; }

private:
  Variant model_;
  FitStatus status_;
};

struct LrtResult {
  double lambda = 0.0;
  int df = 0;
  double p_value = 1.0;
  double loglik_layered = 0.0;
  double loglik_general = 0.0;
  std::map<double, bool> reject_at;
};

/// Default significance levels reported by the test.
inline const std::vector<double>& lrt_levels()
{
  static const std::vector<double> levels{0.05, 0.01, 0.005};
  return levels;
}

/// Layered model against the general model (all layers share β) on
/// per-layer degrees; λ = 2(ℓ_layered − ℓ_general), df = (|K| − 1)·n.
/// Throws FitFailedError if either fit does not converge.
LrtResult lrt_layered_vs_general(const EdgeSpace& space, const DegreeSequence& degrees,
                                 const FixedPointOptions& opts = {},
                                 const std::vector<double>& levels = lrt_levels());

} // namespace hyperbeta
