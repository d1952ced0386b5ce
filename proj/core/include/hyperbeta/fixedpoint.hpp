#pragma once

#include "hyperbeta/model.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperbeta {

/// How successive iterates are formed from the map φ.
enum class StepControl {
  /// β ← β + ω (φ(β) − β) with ω = min(1, c / ρ), where ρ bounds the
  /// spectrum of the map's curvature D⁻¹∇²ψ at the current β (max row sum,
  /// free from the same edge pass). The map's eigenvalues then stay above
  /// 1 − c. ω is further halved (down to 1/r) whenever ‖φ(β) − β‖∞ grows.
  /// Same fixed points as Plain.
  Adaptive,
  /// β ← φ(β) exactly. Can oscillate for k ≥ 3 at low density.
  Plain,
};

struct FixedPointOptions {
  double tol = 1e-10;
  int max_iter = 5000;
  /// |β_i| above which steady growth counts as divergence.
  double divergence_bound = 30.0;
  /// Window for the periodicity and growth checks.
  int period_window = 50;
  StepControl step_control = StepControl::Adaptive;
  /// c in the adaptive step.
  double relaxation = 1.5;

  // Logarithmic-growth detector, checked at iterations start, 2·start, ...:
  // t·step must change by less than this relative amount per doubling.
  double slow_growth_tolerance = 0.25;
  int slow_growth_doublings = 3;
  int slow_growth_start = 2048;

  bool record_trace = false;
  /// Keep every stride-th iterate in FitResult::iterates (0 keeps none).
  int iterate_stride = 0;
};

enum class FitStatus { Converged, DivergedUnbounded, DivergedPeriodic, MaxIterExceeded, BoundaryDegrees };

/// "converged", "diverged_unbounded", "diverged_periodic", "max_iter",
/// "boundary_degrees".
std::string_view to_string(FitStatus status);
FitStatus parse_fit_status(std::string_view name);

struct TraceRow {
  int iteration;
  double step;          // ‖φ(β_l) − β_l‖∞
  double max_abs_beta;  // ‖β_l‖∞
  double residual;      // ‖∇ψ(β_l) − d̄‖∞
};

struct FitResult {
  ParamVector beta;
  FitStatus status = FitStatus::MaxIterExceeded;
  int iterations = 0;
  double final_step = 0.0;
  double moment_residual = 0.0;
  std::vector<TraceRow> trace;
  std::vector<std::pair<int, ParamVector>> iterates;
};

/// φ_i(β) = log d̄_i − log Σ_{s ⊂ [n]∖{i}, |s| = k−1} exp(β̃_s) / (1 + exp(β̃_s + β_i)).
/// Throws NonpositiveDegree if some d̄_i ≤ 0.
std::vector<double> phi_uniform(const EdgeSpace& space, std::span<const double> beta, std::span<const double> degrees);

/// Each layer updated by phi_uniform with its own (k, β^(k), d̄^(k)).
LayeredValues phi_layered(const EdgeSpace& space, const LayeredValues& beta, const LayeredValues& degrees);

/// Same as phi_uniform with the inner sum running over every size in the space.
std::vector<double> phi_general(const EdgeSpace& space, std::span<const double> beta, std::span<const double> degrees);

/// Iterates φ from β = 0 until the fixed-point residual drops below tol, or
/// a divergence/boundary verdict is reached.
FitResult fit_fixed_point(const ModelSpec& spec, const DegreeSequence& degrees, const FixedPointOptions& opts = {});

/// ∇ψ(β̂) − d̄ in the model's parameter shape.
LayeredValues check_moment_equations(const ModelSpec& spec, const ParamVector& beta, const DegreeSequence& degrees);

double sup_norm(const LayeredValues& v);

/// CSV with header `iteration,step,max_abs_beta,residual`.
std::string trace_csv(const FitResult& result);

} // namespace hyperbeta
