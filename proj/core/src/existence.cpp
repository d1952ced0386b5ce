#include "hyperbeta/existence.hpp"

#include "hyperbeta/error.hpp"
#include "hyperbeta/sampler.hpp"

#include <algorithm>
#include <sstream>

namespace hyperbeta {

std::string_view to_string(Verdict v)
{
  switch (v) {
  case Verdict::Exists: return "exists";
  case Verdict::NotExists: return "not_exists";
  case Verdict::Undetermined: return "undetermined";
  }
  return "unknown";
}

Verdict verdict_of(FitStatus status)
{
  switch (status) {
  case FitStatus::Converged: return Verdict::Exists;
  case FitStatus::DivergedUnbounded:
  case FitStatus::DivergedPeriodic:
  case FitStatus::BoundaryDegrees: return Verdict::NotExists;
  case FitStatus::MaxIterExceeded: return Verdict::Undetermined;
  }
  return Verdict::Undetermined;
}

std::optional<BoundaryCertificate> screen_boundary(const ModelSpec& spec, const DegreeSequence& degrees)
{
  const LayeredValues target = target_degrees(spec, degrees);
  for (int l = 0; l < spec.layer_count(); ++l) {
    double cap = 0.0;
    for (int k : spec.sizes_of_layer(l))
      cap += static_cast<double>(binomial(spec.n() - 1, k - 1));
    const auto& layer = target[static_cast<std::size_t>(l)];
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (layer[i] <= 0.0)
        return BoundaryCertificate{static_cast<int>(i), l, layer[i], 0.0};
      if (layer[i] >= cap)
        return BoundaryCertificate{static_cast<int>(i), l, layer[i], cap};
    }
  }
  return std::nullopt;
}

namespace {

double fraction(const ExistenceScan& scan, std::size_t j, Verdict v)
{
  if (j >= scan.densities.size())
    throw Error(ErrorCode::InvalidArgument, "density index out of range");
  if (scan.replicates == 0)
    return 0.0;
  const auto first = scan.cells.begin() + static_cast<std::ptrdiff_t>(j * static_cast<std::size_t>(scan.replicates));
  const auto hits = std::count_if(first, first + scan.replicates, [v](const ScanCell& c) { return c.verdict == v; });
  return static_cast<double>(hits) / scan.replicates;
}

} // namespace

double ExistenceScan::fraction_exists(std::size_t j) const { return fraction(*this, j, Verdict::Exists); }

double ExistenceScan::fraction_undetermined(std::size_t j) const { return fraction(*this, j, Verdict::Undetermined); }

std::string ExistenceScan::cells_csv() const
{
  std::ostringstream out;
  out << "density,replicate,verdict,status,iterations,max_abs_beta\n";
  for (const ScanCell& c : cells)
    out << format_real(c.density) << ',' << c.replicate << ',' << to_string(c.verdict) << ',' << to_string(c.status)
        << ',' << c.iterations << ',' << format_real(c.max_abs_beta) << '\n';
  return out.str();
}

std::string ExistenceScan::summary_csv() const
{
  std::ostringstream out;
  out << "density,fraction_exists,fraction_undetermined\n";
  for (std::size_t j = 0; j < densities.size(); ++j)
    out << format_real(densities[j]) << ',' << format_real(fraction_exists(j)) << ','
        << format_real(fraction_undetermined(j)) << '\n';
  return out.str();
}

ExistenceScan scan_existence(const ModelSpec& spec, const ScanConfig& cfg)
{
  if (cfg.replicates < 1)
    throw Error(ErrorCode::InvalidArgument, "replicates must be >= 1");
  if (!std::is_sorted(cfg.densities.begin(), cfg.densities.end()))
    throw Error(ErrorCode::InvalidArgument, "densities must be sorted ascending");
  for (double d : cfg.densities)
    if (!(d >= 0.0 && d <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "densities must lie in [0, 1]");

  ExistenceScan scan;
  scan.densities = cfg.densities;
  scan.replicates = cfg.replicates;
  const std::uint64_t base = splitmix64(cfg.seed);
  for (std::size_t j = 0; j < cfg.densities.size(); ++j) {
    const SampleConfig sc{substream_seed(base, j), cfg.replicates};
    const std::vector<Hypergraph> draws = sample_fixed_density(spec.space(), cfg.densities[j], sc);
    for (int r = 0; r < cfg.replicates; ++r) {
      const Hypergraph& h = draws[static_cast<std::size_t>(r)];
      const FitResult fit = fit_fixed_point(spec, degrees(h, spec.space()), cfg.fit);
      scan.cells.push_back({cfg.densities[j], r, static_cast<std::uint64_t>(h.edge_count()), fit.status,
                            verdict_of(fit.status), fit.iterations, sup_norm(fit.beta.layers)});
    }
  }
  return scan;
}

} // namespace hyperbeta
