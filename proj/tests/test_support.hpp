#pragma once

// Helpers shared by the unit tests: small brute-force oracles and random draws.

#include "hyperbeta/model.hpp"
#include "hyperbeta/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hbtest {

using namespace hyperbeta;

// Every k-subset of {0..n-1} by scanning bitmasks, sorted lexicographically.
inline std::vector<std::vector<int>> brute_subsets(int n, int k)
{
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k)
      continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i))
        s.push_back(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Logistic written out from its definition, no stability tricks.
inline double naive_p(double z) { return std::exp(z) / (1.0 + std::exp(z)); }

// Expected degrees by brute force: for every subset in every size, add p_e.
inline LayeredValues brute_expected_degrees(const ModelSpec& spec, const ParamVector& beta)
{
  const int n = spec.n();
  LayeredValues out(static_cast<std::size_t>(spec.layer_count()), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int k : spec.space().sizes()) {
    const int l = spec.layer_of_size(k);
    const auto& b = beta.layers[static_cast<std::size_t>(l)];
    for (const auto& e : brute_subsets(n, k)) {
      double z = 0.0;
      for (int v : e)
        z += b[static_cast<std::size_t>(v)];
      for (int v : e)
        out[static_cast<std::size_t>(l)][static_cast<std::size_t>(v)] += naive_p(z);
    }
  }
  return out;
}

inline ParamVector random_beta(const ModelSpec& spec, Rng& rng, double scale)
{
  ParamVector b = ParamVector::zeros(spec);
  for (auto& layer : b.layers)
    for (double& x : layer)
      x = scale * (2.0 * rng.uniform() - 1.0);
  return b;
}

inline double max_diff(const LayeredValues& a, const LayeredValues& b)
{
  double m = 0.0;
  for (std::size_t l = 0; l < a.size(); ++l)
    for (std::size_t i = 0; i < a[l].size(); ++i)
      m = std::max(m, std::abs(a[l][i] - b[l][i]));
  return m;
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b)
{
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Degree sequence shaped for the model from per-layer values.
inline DegreeSequence degrees_for(const ModelSpec& spec, const LayeredValues& values)
{
  if (spec.variant() == Variant::General)
    return DegreeSequence::from_totals(values.front());
  std::map<int, std::vector<double>> by_size;
  for (int l = 0; l < spec.layer_count(); ++l)
    by_size[spec.sizes_of_layer(l).front()] = values[static_cast<std::size_t>(l)];
  return DegreeSequence::from_layers(spec.n(), by_size);
}

// Ten-node reference example.
inline const std::vector<double> example1_degrees{6.28, 10.70, 17.59, 20.81, 16.55, 4.41, 7.47, 23.02, 4.50, 7.17};
inline const std::vector<double> example1_beta{-5.05, -0.57, 2.87, 4.85, 1.98, -6.69, -3.95, 5.97, -6.61, -4.24};

} // namespace hbtest
