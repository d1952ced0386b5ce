#pragma once

#include "hyperbeta/hypergraph.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperbeta {

enum class Variant { Uniform, Layered, General };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view name);

/// One real per node, per parameter layer. Uniform and General models have
/// a single layer; Layered models have one layer per edge size, in
/// ascending size order.
using LayeredValues = std::vector<std::vector<double>>;

/// Which beta model, over which edge space.
class ModelSpec {
public:
  ModelSpec(Variant variant, EdgeSpace space);

  static ModelSpec uniform(int n, int k) { return {Variant::Uniform, EdgeSpace::uniform(n, k)}; }
  static ModelSpec layered(int n, std::vector<int> sizes) { return {Variant::Layered, EdgeSpace(n, std::move(sizes))}; }
  static ModelSpec general(int n, std::vector<int> sizes) { return {Variant::General, EdgeSpace(n, std::move(sizes))}; }

  Variant variant() const noexcept { return variant_; }
  const EdgeSpace& space() const noexcept { return space_; }
  int n() const noexcept { return space_.n(); }

  int layer_count() const noexcept;
  /// Parameter layer used by edges of size k.
  int layer_of_size(int k) const;
  /// Edge sizes governed by a parameter layer.
  std::vector<int> sizes_of_layer(int layer) const;

private:
  Variant variant_;
  EdgeSpace space_;
};

/// Natural parameters β (Uniform/General) or β^(k) per size (Layered).
struct ParamVector {
  LayeredValues layers;

  static ParamVector zeros(const ModelSpec& spec);
  static ParamVector uniform_value(const ModelSpec& spec, double value);

  bool operator==(const ParamVector&) const = default;
};

/// Throws InvalidArgument if β has the wrong shape or non-finite entries.
void validate(const ModelSpec& spec, const ParamVector& beta);

/// Σ_{i ∈ e} β_i, taken from the layer matching |e|.
double edge_logit(const ModelSpec& spec, const ParamVector& beta, std::span<const Node> edge);

/// p_e = logistic(β̃_e). Throws EdgeOutsideSpace.
double edge_probability(const ModelSpec& spec, const ParamVector& beta, std::span<const Node> edge);

/// Log-partition function ψ(β) = Σ_e log(1 + exp(β̃_e)).
double psi(const ModelSpec& spec, const ParamVector& beta);

/// Expected degrees ∂ψ/∂β: per layer for Layered, totals otherwise.
LayeredValues grad_psi(const ModelSpec& spec, const ParamVector& beta);

/// log P_β(h) = Σ_i d_i β_i − ψ(β), layer-split for Layered.
double log_likelihood(const ModelSpec& spec, const ParamVector& beta, const Hypergraph& h);

/// Same identity from a (possibly averaged) degree sequence.
double log_likelihood(const ModelSpec& spec, const ParamVector& beta, const DegreeSequence& d);

/// Streams (edge, p_e) over the whole edge space in canonical order.
template <class Fn>
void mean_value_map(const ModelSpec& spec, const ParamVector& beta, Fn&& fn)
{
  for_each_edge(spec.space(), [&](std::span<const Node> e) {
    fn(e, edge_probability(spec, beta, e));
  });
}

/// Materialized p_e in canonical edge order. Intended for small spaces.
std::vector<double> mean_value_table(const ModelSpec& spec, const ParamVector& beta);

/// Degree targets in the model's parameter shape: per-layer degrees for
/// Uniform/Layered, totals for General.
LayeredValues target_degrees(const ModelSpec& spec, const DegreeSequence& d);

/// Parameter file: `n=<N>` then `k=<K>: b1 .. bN` (Layered) or
/// `beta: b1 .. bN` (Uniform/General).
ParamVector read_params(const ModelSpec& spec, std::string_view text);
std::string write_params(const ModelSpec& spec, const ParamVector& beta);

} // namespace hyperbeta
