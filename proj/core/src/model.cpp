#include "hyperbeta/model.hpp"

#include "hyperbeta/error.hpp"
#include "hyperbeta/numeric.hpp"
#include "text_format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hyperbeta {

std::string_view to_string(Variant v)
{
  switch (v) {
  case Variant::Uniform: return "uniform";
  case Variant::Layered: return "layered";
  case Variant::General: return "general";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name)
{
  if (name == "uniform")
    return Variant::Uniform;
  if (name == "layered")
    return Variant::Layered;
  if (name == "general")
    return Variant::General;
  throw Error(ErrorCode::InvalidArgument, "unknown model variant '" + std::string(name) + "'");
}

ModelSpec::ModelSpec(Variant variant, EdgeSpace space) : variant_(variant), space_(std::move(space))
{
  if (variant_ == Variant::Uniform && !space_.is_uniform())
    throw Error(ErrorCode::InvalidArgument, "uniform model needs exactly one edge size");
}

int ModelSpec::layer_count() const noexcept
{
  return variant_ == Variant::Layered ? static_cast<int>(space_.sizes().size()) : 1;
}

int ModelSpec::layer_of_size(int k) const
{
  const auto& sizes = space_.sizes();
  auto it = std::lower_bound(sizes.begin(), sizes.end(), k);
  if (it == sizes.end() || *it != k)
    throw Error(ErrorCode::EdgeOutsideSpace, "edge size " + std::to_string(k) + " not in model");
  return variant_ == Variant::Layered ? static_cast<int>(it - sizes.begin()) : 0;
}

std::vector<int> ModelSpec::sizes_of_layer(int layer) const
{
  if (variant_ == Variant::Layered)
    return {space_.sizes().at(static_cast<std::size_t>(layer))};
  return space_.sizes();
}

ParamVector ParamVector::zeros(const ModelSpec& spec) { return uniform_value(spec, 0.0); }

ParamVector ParamVector::uniform_value(const ModelSpec& spec, double value)
{
  ParamVector beta;
  beta.layers.assign(static_cast<std::size_t>(spec.layer_count()),
                     std::vector<double>(static_cast<std::size_t>(spec.n()), value));
  return beta;
}

void validate(const ModelSpec& spec, const ParamVector& beta)
{
  if (static_cast<int>(beta.layers.size()) != spec.layer_count())
    throw Error(ErrorCode::InvalidArgument, "parameter vector has the wrong number of layers");
  for (const auto& layer : beta.layers) {
    if (static_cast<int>(layer.size()) != spec.n())
      throw Error(ErrorCode::InvalidArgument, "parameter layer has the wrong length");
    for (double b : layer)
      if (!std::isfinite(b))
        throw Error(ErrorCode::InvalidArgument, "parameters must be finite");
  }
}

double edge_logit(const ModelSpec& spec, const ParamVector& beta, std::span<const Node> edge)
{
  if (!spec.space().contains(edge))
    throw Error(ErrorCode::EdgeOutsideSpace, "edge not in the model's edge space");
  const auto& layer = beta.layers.at(static_cast<std::size_t>(spec.layer_of_size(static_cast<int>(edge.size()))));
  double sum = 0.0;
  for (Node v : edge)
    sum += layer[static_cast<std::size_t>(v)];
  return sum;
}

double edge_probability(const ModelSpec& spec, const ParamVector& beta, std::span<const Node> edge)
{
  return logistic(edge_logit(spec, beta, edge));
}

namespace {

// Visits every edge with its governing parameter layer; skips per-edge
// validation since edges come from the space itself.
template <class Fn>
void for_each_edge_in_layers(const ModelSpec& spec, const ParamVector& beta, Fn&& fn)
{
  validate(spec, beta);
  for (int k : spec.space().sizes()) {
    const int layer = spec.layer_of_size(k);
    const auto& b = beta.layers[static_cast<std::size_t>(layer)];
    for (std::span<const Node> e : KSubsets(spec.n(), k)) {
      double logit_sum = 0.0;
      for (Node v : e)
        logit_sum += b[static_cast<std::size_t>(v)];
      fn(e, layer, logit_sum);
    }
  }
}

} // namespace

double psi(const ModelSpec& spec, const ParamVector& beta)
{
  CompensatedSum total;
  for_each_edge_in_layers(spec, beta, [&](std::span<const Node>, int, double z) { total.add(softplus(z)); });
  return total.value();
}

LayeredValues grad_psi(const ModelSpec& spec, const ParamVector& beta)
{
  const auto n = static_cast<std::size_t>(spec.n());
  std::vector<std::vector<CompensatedSum>> acc(static_cast<std::size_t>(spec.layer_count()),
                                               std::vector<CompensatedSum>(n));
  for_each_edge_in_layers(spec, beta, [&](std::span<const Node> e, int layer, double z) {
    const double p = logistic(z);
    auto& row = acc[static_cast<std::size_t>(layer)];
    for (Node v : e)
      row[static_cast<std::size_t>(v)].add(p);
  });
  LayeredValues out(acc.size(), std::vector<double>(n));
  for (std::size_t l = 0; l < acc.size(); ++l)
    for (std::size_t i = 0; i < n; ++i)
      out[l][i] = acc[l][i].value();
  return out;
}

LayeredValues target_degrees(const ModelSpec& spec, const DegreeSequence& d)
{
  if (d.n() != spec.n())
    throw Error(ErrorCode::InvalidArgument, "degree sequence and model disagree on n");
  switch (spec.variant()) {
  case Variant::General:
    if (d.has_layers()) {
      for (const auto& [k, layer] : d.layers())
        if (!spec.space().contains_size(k))
          throw Error(ErrorCode::EdgeSizeOutsideSpace, "degree layer k=" + std::to_string(k) + " not in model");
    }
    return {d.total()};
  case Variant::Uniform:
    if (!d.has_layers())
      return {d.total()};
    [[fallthrough]];
  case Variant::Layered: {
    if (!d.has_layers())
      throw Error(ErrorCode::InvalidArgument, "layered model needs per-size degrees");
    for (const auto& [k, layer] : d.layers())
      if (!spec.space().contains_size(k))
        throw Error(ErrorCode::EdgeSizeOutsideSpace, "degree layer k=" + std::to_string(k) + " not in model");
    LayeredValues out;
    for (int k : spec.space().sizes()) {
      auto it = d.layers().find(k);
      out.push_back(it == d.layers().end() ? std::vector<double>(static_cast<std::size_t>(spec.n()), 0.0)
                                           : it->second);
    }
    return out;
  }
  }
  return {};
}

double log_likelihood(const ModelSpec& spec, const ParamVector& beta, const DegreeSequence& d)
{
  const LayeredValues target = target_degrees(spec, d);
  CompensatedSum linear;
  for (std::size_t l = 0; l < target.size(); ++l)
    for (std::size_t i = 0; i < target[l].size(); ++i)
      linear.add(target[l][i] * beta.layers.at(l)[i]);
  return linear.value() - psi(spec, beta);
}

double log_likelihood(const ModelSpec& spec, const ParamVector& beta, const Hypergraph& h)
{
  return log_likelihood(spec, beta, degrees(h, spec.space()));
}

std::vector<double> mean_value_table(const ModelSpec& spec, const ParamVector& beta)
{
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(spec.space().edge_count()));
  for_each_edge_in_layers(spec, beta, [&](std::span<const Node>, int, double z) { out.push_back(logistic(z)); });
  return out;
}

ParamVector read_params(const ModelSpec& spec, std::string_view text)
{
  using namespace text;
  const auto lines = meaningful_lines(text);
  const int n = parse_header(lines);
  if (n != spec.n())
    throw ParseError(ErrorCode::ParseError, lines.front().number, "parameter file n does not match the model");
  ParamVector beta;
  beta.layers.resize(static_cast<std::size_t>(spec.layer_count()));
  std::vector<bool> seen(beta.layers.size(), false);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const auto colon = line.text.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(ErrorCode::ParseError, line.number, "expected 'beta:' or 'k=<K>:' prefix");
    const std::string_view head = trim(line.text.substr(0, colon));
    std::size_t layer = 0;
    if (head == "beta") {
      if (spec.variant() == Variant::Layered)
        throw ParseError(ErrorCode::ParseError, line.number, "layered parameters need 'k=<K>:' lines");
    } else if (auto k = keyed_integer(head, "k", line.number)) {
      if (spec.variant() != Variant::Layered)
        throw ParseError(ErrorCode::ParseError, line.number, "'k=' lines are only valid for layered models");
      if (!spec.space().contains_size(static_cast<int>(*k)))
        throw ParseError(ErrorCode::ParseError, line.number, "edge size not in model");
      layer = static_cast<std::size_t>(spec.layer_of_size(static_cast<int>(*k)));
    } else {
      throw ParseError(ErrorCode::ParseError, line.number, "expected 'beta:' or 'k=<K>:' prefix");
    }
    if (seen[layer])
      throw ParseError(ErrorCode::ParseError, line.number, "parameter layer listed twice");
    seen[layer] = true;
    beta.layers[layer] = parse_values(line.text.substr(colon + 1), n, line.number);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw ParseError(ErrorCode::ParseError, lines.back().number, "missing parameter layer");
  validate(spec, beta);
  return beta;
}

std::string write_params(const ModelSpec& spec, const ParamVector& beta)
{
  validate(spec, beta);
  std::ostringstream out;
  out << "n=" << spec.n() << '\n';
  for (std::size_t l = 0; l < beta.layers.size(); ++l) {
    if (spec.variant() == Variant::Layered)
      out << "k=" << spec.space().sizes()[l] << ':';
    else
      out << "beta:";
    for (double b : beta.layers[l])
      out << ' ' << format_real(b);
    out << '\n';
  }
  return out.str();
}

} // namespace hyperbeta
