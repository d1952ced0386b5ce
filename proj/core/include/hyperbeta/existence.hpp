#pragma once

#include "hyperbeta/fixedpoint.hpp"
#include "hyperbeta/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperbeta {

enum class Verdict { Exists, NotExists, Undetermined };

/// "exists", "not_exists", "undetermined".
std::string_view to_string(Verdict v);

/// Converged → Exists; diverged or boundary → NotExists; max_iter → Undetermined.
Verdict verdict_of(FitStatus status);

/// A node whose degree sits on the edge of the attainable range, which rules
/// out the MLE. Its absence says nothing about existence.
struct BoundaryCertificate {
  int node;     // 0-based
  int layer;    // parameter layer the degree belongs to
  double degree;
  double bound;  // 0 or the maximal degree of the layer
};

std::optional<BoundaryCertificate> screen_boundary(const ModelSpec& spec, const DegreeSequence& degrees);

struct ScanConfig {
  std::vector<double> densities;
  int replicates = 20;
  std::uint64_t seed = 0;
  FixedPointOptions fit;
};

struct ScanCell {
  double density;
  int replicate;
  std::uint64_t edges;
  FitStatus status;
  Verdict verdict;
  int iterations;
  double max_abs_beta;
};

struct ExistenceScan {
  std::vector<double> densities;
  int replicates = 0;
  std::vector<ScanCell> cells;  // density-major, replicate-minor

  /// Share of replicates at densities[j] with verdict Exists.
  double fraction_exists(std::size_t j) const;
  double fraction_undetermined(std::size_t j) const;

  /// density,replicate,verdict,status,iterations,max_abs_beta
  std::string cells_csv() const;
  /// density,fraction_exists,fraction_undetermined
  std::string summary_csv() const;
};

/// For each density, draws fixed-density hypergraphs over the model's edge
/// space and fits each one's exact degree sequence. Density j uses the
/// sampler seed substream_seed(splitmix64(seed), j).
ExistenceScan scan_existence(const ModelSpec& spec, const ScanConfig& cfg);

} // namespace hyperbeta
