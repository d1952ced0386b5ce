#pragma once

#include "hyperbeta/fixedpoint.hpp"
#include "hyperbeta/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace hyperbeta {

/// Symmetric r-way table stored one value per canonical edge. A size-j edge
/// stands for the full-table cells holding its j nodes plus r − j empty
/// labels; cells with a repeated node are structural zeros and are not
/// stored. Each edge also carries an "absent" cell so that the fitted edge
/// probability is multiplicity(j) · present / (multiplicity(j) · present + absent).
class SymmetricTable {
public:
  SymmetricTable(EdgeSpace space, std::vector<double> present, std::vector<double> absent);

  const EdgeSpace& space() const noexcept { return space_; }
  int slots() const noexcept { return space_.max_size(); }
  /// Full-table cells of a size-j edge with a given node in the first slot:
  /// (r − 1)! / (r − j)!.
  double multiplicity(int size) const { return multiplicity(slots(), size); }
  static double multiplicity(int slots, int size);

  std::span<const double> present() const noexcept { return present_; }
  std::span<const double> absent() const noexcept { return absent_; }
  std::vector<double>& present_mut() noexcept { return present_; }
  std::vector<double>& absent_mut() noexcept { return absent_; }

  /// Layer margins M_i: the sum of the full table with node i in the first slot.
  std::vector<double> margins() const;
  /// p_e per canonical edge.
  std::vector<double> probabilities() const;

private:
  EdgeSpace space_;
  std::vector<double> present_;
  std::vector<double> absent_;
};

/// The empty-label table used for the general model is the same structure
/// over a multi-size space.
using GeneralTable = SymmetricTable;

/// Starting table. With one edge size every cell holds 2ē / (n(n−1)⋯(n−k+1)),
/// i.e. p0 = Σd̄ / (k·C(n,k)). With several sizes a size-k edge starts at
/// logit p = k·c, c chosen so that Σ_k k·C(n,k)·p_k = Σd̄.
SymmetricTable ips_init(const EdgeSpace& space, std::span<const double> degrees);

/// One simultaneous scaling step: each cell is multiplied by the geometric
/// mean of the factors F_i = d̄_i / M_i over its r slots (F = 1 for empty
/// slots), then each edge's present/absent pair is renormalized to mass 1.
/// Throws ZeroMarginWithPositiveTarget.
SymmetricTable ips_step(const SymmetricTable& table, std::span<const double> degrees);

struct IpsOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  /// Probabilities this close to 0 or 1 mark the MLE as nonexistent.
  double boundary_eps = 1e-12;
};

struct IpsResult {
  SymmetricTable table;
  FitStatus status = FitStatus::MaxIterExceeded;  // Converged or MaxIterExceeded
  int iterations = 0;
  double margin_residual = 0.0;  // max_i |M_i − d̄_i|
  bool on_boundary = false;

  std::vector<double> probabilities() const { return table.probabilities(); }
};

IpsResult ips_fit(const EdgeSpace& space, std::span<const double> degrees, const IpsOptions& opts = {});

/// Independent fit per edge size against that size's degrees.
std::vector<IpsResult> ips_fit_layered(const EdgeSpace& space, const LayeredValues& degrees,
                                       const IpsOptions& opts = {});

/// Fits node margins only, over all sizes at once.
IpsResult ips_fit_general(const EdgeSpace& space, std::span<const double> degrees, const IpsOptions& opts = {});

/// Model-level IPS fit: per-layer tables for Layered, one table otherwise.
struct IpsModelFit {
  std::vector<IpsResult> layers;
  FitStatus status = FitStatus::MaxIterExceeded;
  int iterations = 0;  // max over layers
  double margin_residual = 0.0;
  bool boundary_degrees = false;
  bool on_boundary = false;

  bool mle_exists() const { return status == FitStatus::Converged && !boundary_degrees && !on_boundary; }
  /// Fitted p_e per parameter layer, canonical order within the layer's sizes.
  LayeredValues probabilities() const;
};

IpsModelFit ips_fit_model(const ModelSpec& spec, const DegreeSequence& degrees, const IpsOptions& opts = {});

struct LogitInversion {
  ParamVector beta;
  double inconsistency = 0.0;  // max_e |β̃_e − logit p_e|
};

/// Least-squares β with Σ_{i∈e} β_i ≈ logit p_e, solved in closed form on
/// the complete space. `probabilities` holds one vector per parameter layer
/// in canonical edge order. Throws ProbabilityOnBoundary, DegenerateDesign.
LogitInversion logits_to_beta(const ModelSpec& spec, const LayeredValues& probabilities);

/// Rows `i1,...,ik,p`, 1-based nodes, canonical edge order.
std::string probability_csv(const EdgeSpace& space, std::span<const double> probabilities);

} // namespace hyperbeta
