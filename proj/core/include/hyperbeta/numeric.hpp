#pragma once

#include <cmath>

namespace hyperbeta {

/// exp(z) / (1 + exp(z)) without overflow.
inline double logistic(double z)
{
  if (z >= 0.0)
    return 1.0 / (1.0 + std::exp(-z));
  const double ez = std::exp(z);
  return ez / (1.0 + ez);
}

/// log(1 + exp(z)) without overflow.
inline double softplus(double z)
{
  if (z > 0.0)
    return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

inline double logit(double p) { return std::log(p) - std::log1p(-p); }

/// Neumaier's compensated summation.
class CompensatedSum {
public:
  void add(double x)
  {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      carry_ += (sum_ - t) + x;
    else
      carry_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

} // namespace hyperbeta
