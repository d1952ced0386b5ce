#include "hyperbeta/sampler.hpp"

#include "hyperbeta/error.hpp"
#include "hyperbeta/numeric.hpp"

#include <cmath>

namespace hyperbeta {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) { return seed ^ splitmix64(index); }

namespace {

void check_config(const SampleConfig& cfg)
{
  if (cfg.replicates < 1)
    throw Error(ErrorCode::InvalidArgument, "replicates must be positive");
}

} // namespace

std::vector<Hypergraph> sample(const ModelSpec& spec, const ParamVector& beta, const SampleConfig& cfg)
{
  check_config(cfg);
  validate(spec, beta);
  std::vector<Hypergraph> out;
  out.reserve(static_cast<std::size_t>(cfg.replicates));
  for (int r = 0; r < cfg.replicates; ++r) {
    Rng rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    std::vector<Edge> edges;
    for (int k : spec.space().sizes()) {
      const auto& b = beta.layers[static_cast<std::size_t>(spec.layer_of_size(k))];
      for (std::span<const Node> e : KSubsets(spec.n(), k)) {
        double z = 0.0;
        for (Node v : e)
          z += b[static_cast<std::size_t>(v)];
        if (rng.uniform() < logistic(z))
          edges.emplace_back(e.begin(), e.end());
      }
    }
    out.emplace_back(spec.n(), std::move(edges));
  }
  return out;
}

DegreeSequence mean_degrees(std::span<const Hypergraph> samples, const EdgeSpace& space)
{
  if (samples.empty())
    throw Error(ErrorCode::EmptySampleSet, "cannot average an empty sample");
  std::map<int, std::vector<double>> sums;
  for (int k : space.sizes())
    sums[k].assign(static_cast<std::size_t>(space.n()), 0.0);
  for (const Hypergraph& h : samples) {
    const DegreeSequence d = degrees(h, space);
    for (auto& [k, layer] : sums) {
      const auto& src = d.layer(k);
      for (std::size_t i = 0; i < layer.size(); ++i)
        layer[i] += src[i];
    }
  }
  const double count = static_cast<double>(samples.size());
  for (auto& [k, layer] : sums)
    for (double& x : layer)
      x /= count;
  return DegreeSequence::from_layers(space.n(), std::move(sums));
}

std::uint64_t fixed_density_edge_count(const EdgeSpace& space, double density)
{
  if (!(density >= 0.0 && density <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "density must lie in [0, 1]");
  const double total = static_cast<double>(space.edge_count());
  return static_cast<std::uint64_t>(std::floor(density * total + 0.5));
}

std::vector<Hypergraph> sample_fixed_density(const EdgeSpace& space, double density, const SampleConfig& cfg)
{
  check_config(cfg);
  const std::uint64_t m = fixed_density_edge_count(space, density);
  const std::uint64_t total = space.edge_count();
  std::vector<Hypergraph> out;
  out.reserve(static_cast<std::size_t>(cfg.replicates));
  for (int r = 0; r < cfg.replicates; ++r) {
    Rng rng(substream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::uint64_t seen = 0;
    for (std::span<const Node> e : space.edges()) {
      const std::uint64_t needed = m - edges.size();
      if (needed == 0)
        break;
      // select with probability needed / remaining
      if (static_cast<double>(total - seen) * rng.uniform() < static_cast<double>(needed))
        edges.emplace_back(e.begin(), e.end());
      ++seen;
    }
    out.emplace_back(space.n(), std::move(edges));
  }
  return out;
}

} // namespace hyperbeta
