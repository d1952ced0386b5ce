#pragma once

#include "hyperbeta/model.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hyperbeta {

struct SampleConfig {
  std::uint64_t seed = 0;
  int replicates = 1;
};

/// splitmix64 finalizer; used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of substream `index` derived from a base seed: seed XOR splitmix64(index).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Portable generator: std::mt19937_64 (bit-exact by the standard) with a
/// fixed 53-bit conversion to doubles, so draws match across platforms.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

/// Draws `cfg.replicates` hypergraphs with independent Bernoulli(p_e) edges.
/// Replicate r uses substream_seed(cfg.seed, r).
std::vector<Hypergraph> sample(const ModelSpec& spec, const ParamVector& beta, const SampleConfig& cfg);

/// Coordinatewise mean of the degree sequences. Throws EmptySampleSet.
DegreeSequence mean_degrees(std::span<const Hypergraph> samples, const EdgeSpace& space);

/// m = round-half-up(density * |E|).
std::uint64_t fixed_density_edge_count(const EdgeSpace& space, double density);

/// Each replicate is a uniformly random m-subset of the edge space, chosen
/// by sequential selection over the edge stream (O(m) memory).
std::vector<Hypergraph> sample_fixed_density(const EdgeSpace& space, double density, const SampleConfig& cfg);

} // namespace hyperbeta
