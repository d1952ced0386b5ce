#include "hyperbeta/fixedpoint.hpp"
#include "hyperbeta/ips.hpp"
#include "hyperbeta/sampler.hpp"

#include <benchmark/benchmark.h>

using namespace hyperbeta;

namespace {

std::vector<double> spread_beta(int n)
{
  std::vector<double> b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    b[static_cast<std::size_t>(i)] = -0.5 + static_cast<double>(i) / n;
  return b;
}

} // namespace

static void BM_EdgeStream(benchmark::State& state)
{
  const EdgeSpace sp = EdgeSpace::uniform(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    long sum = 0;
    for_each_edge(sp, [&](std::span<const Node> e) { sum += e[0]; });
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(sp.edge_count()));
}
BENCHMARK(BM_EdgeStream)->Arg(25)->Arg(100);

static void BM_PhiUniform(benchmark::State& state)
{
  const int n = static_cast<int>(state.range(0));
  const EdgeSpace sp = EdgeSpace::uniform(n, 3);
  const auto spec = ModelSpec::uniform(n, 3);
  ParamVector beta = ParamVector::zeros(spec);
  beta.layers[0] = spread_beta(n);
  const auto d = grad_psi(spec, beta).front();
  const std::vector<double> start(static_cast<std::size_t>(n), 0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(phi_uniform(sp, start, d));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(sp.edge_count()));
}
BENCHMARK(BM_PhiUniform)->Arg(25)->Arg(100);

static void BM_FitUniform(benchmark::State& state)
{
  const int n = static_cast<int>(state.range(0));
  const auto spec = ModelSpec::uniform(n, 3);
  ParamVector beta = ParamVector::zeros(spec);
  beta.layers[0] = spread_beta(n);
  const auto d = DegreeSequence::from_totals(grad_psi(spec, beta).front());
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_fixed_point(spec, d));
}
BENCHMARK(BM_FitUniform)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_IpsStep(benchmark::State& state)
{
  const int n = static_cast<int>(state.range(0));
  const EdgeSpace sp = EdgeSpace::uniform(n, 3);
  const auto spec = ModelSpec::uniform(n, 3);
  ParamVector beta = ParamVector::zeros(spec);
  beta.layers[0] = spread_beta(n);
  const auto d = grad_psi(spec, beta).front();
  const SymmetricTable t = ips_init(sp, d);
  for (auto _ : state)
    benchmark::DoNotOptimize(ips_step(t, d));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(sp.edge_count()));
}
BENCHMARK(BM_IpsStep)->Arg(25)->Arg(100);

static void BM_Sample(benchmark::State& state)
{
  const int n = static_cast<int>(state.range(0));
  const auto spec = ModelSpec::uniform(n, 3);
  ParamVector beta = ParamVector::zeros(spec);
  beta.layers[0] = spread_beta(n);
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample(spec, beta, {seed++, 1}));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(spec.space().edge_count()));
}
BENCHMARK(BM_Sample)->Arg(25)->Arg(100);

static void BM_SampleFixedDensity(benchmark::State& state)
{
  const EdgeSpace sp = EdgeSpace::uniform(static_cast<int>(state.range(0)), 3);
  std::uint64_t seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_fixed_density(sp, 0.3, {seed++, 1}));
}
BENCHMARK(BM_SampleFixedDensity)->Arg(25)->Arg(100);

BENCHMARK_MAIN();
