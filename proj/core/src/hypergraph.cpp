#include "hyperbeta/hypergraph.hpp"

#include "hyperbeta/error.hpp"
#include "text_format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

namespace hyperbeta {

using namespace text;

bool EdgeOrder::operator()(std::span<const Node> a, std::span<const Node> b) const
{
  if (a.size() != b.size())
    return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// EdgeSpace

EdgeSpace::EdgeSpace(int n, std::vector<int> sizes) : n_(n), sizes_(std::move(sizes))
{
  if (n_ < 2)
    throw Error(ErrorCode::InvalidArgument, "edge space needs at least 2 nodes");
  if (sizes_.empty())
    throw Error(ErrorCode::InvalidArgument, "edge space needs at least one edge size");
  std::sort(sizes_.begin(), sizes_.end());
  sizes_.erase(std::unique(sizes_.begin(), sizes_.end()), sizes_.end());
  for (int k : sizes_) {
    if (k < 2 || k > n_)
      throw Error(ErrorCode::InvalidArgument,
                  "edge size " + std::to_string(k) + " outside [2, " + std::to_string(n_) + "]");
  }
}

bool EdgeSpace::contains_size(int k) const
{
  return std::binary_search(sizes_.begin(), sizes_.end(), k);
}

bool EdgeSpace::contains(std::span<const Node> edge) const
{
  if (!contains_size(static_cast<int>(edge.size())))
    return false;
  for (std::size_t i = 0; i < edge.size(); ++i) {
    if (edge[i] < 0 || edge[i] >= n_)
      return false;
    if (i > 0 && edge[i] <= edge[i - 1])
      return false;
  }
  return true;
}

std::uint64_t EdgeSpace::edge_count() const
{
  std::uint64_t total = 0;
  for (int k : sizes_)
    total += binomial(n_, k);
  return total;
}

EdgeSpace::Stream::iterator::iterator(const EdgeSpace* space) : space_(space)
{
  start_layer();
}

void EdgeSpace::Stream::iterator::start_layer()
{
  while (space_ != nullptr) {
    if (layer_ >= space_->sizes().size()) {
      space_ = nullptr;
      return;
    }
    inner_ = KSubsets::iterator(space_->n(), space_->sizes()[layer_]);
    if (!(inner_ == std::default_sentinel))
      return;
    ++layer_;
  }
}

EdgeSpace::Stream::iterator& EdgeSpace::Stream::iterator::operator++()
{
  ++inner_;
  if (inner_ == std::default_sentinel) {
    ++layer_;
    start_layer();
  }
  return *this;
}

// ---------------------------------------------------------------------------
// Hypergraph

namespace {

void validate_edge(Edge& edge, int n)
{
  for (Node v : edge) {
    if (v < 0 || v >= n)
      throw Error(ErrorCode::NodeOutOfRange,
                  "node " + std::to_string(v + 1) + " outside 1.." + std::to_string(n));
  }
  std::sort(edge.begin(), edge.end());
  if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
    throw Error(ErrorCode::RepeatedNode, "edge repeats a node");
  if (edge.size() < 2)
    throw Error(ErrorCode::EdgeTooSmall, "edges need at least 2 nodes");
}

} // namespace

Hypergraph::Hypergraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
{
  if (n_ < 1)
    throw Error(ErrorCode::InvalidArgument, "hypergraph needs at least one node");
  for (Edge& e : edges_)
    validate_edge(e, n_);
  std::sort(edges_.begin(), edges_.end(), EdgeOrder{});
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw Error(ErrorCode::DuplicateEdge, "edge listed twice");
}

bool Hypergraph::contains(std::span<const Node> edge) const
{
  auto it = std::lower_bound(edges_.begin(), edges_.end(), edge,
                             [](const Edge& a, std::span<const Node> b) { return EdgeOrder{}(a, b); });
  return it != edges_.end() && std::equal(it->begin(), it->end(), edge.begin(), edge.end());
}

// ---------------------------------------------------------------------------
// DegreeSequence

namespace {

void check_nonnegative(const std::vector<double>& v)
{
  for (double x : v) {
    if (!std::isfinite(x) || x < 0.0)
      throw Error(ErrorCode::InvalidArgument, "degrees must be finite and non-negative");
  }
}

} // namespace

DegreeSequence DegreeSequence::from_layers(int n, std::map<int, std::vector<double>> by_size)
{
  if (by_size.empty())
    throw Error(ErrorCode::InvalidArgument, "degree sequence needs at least one layer");
  DegreeSequence d;
  d.total_.assign(static_cast<std::size_t>(n), 0.0);
  for (const auto& [k, layer] : by_size) {
    if (static_cast<int>(layer.size()) != n)
      throw Error(ErrorCode::InvalidArgument, "layer k=" + std::to_string(k) + " has wrong length");
    check_nonnegative(layer);
    const double cap = static_cast<double>(binomial(n - 1, k - 1));
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (layer[i] > cap)
        throw Error(ErrorCode::InvalidArgument, "degree exceeds C(n-1, k-1) in layer k=" + std::to_string(k));
      d.total_[i] += layer[i];
    }
  }
  d.by_size_ = std::move(by_size);
  return d;
}

DegreeSequence DegreeSequence::from_totals(std::vector<double> totals)
{
  check_nonnegative(totals);
  DegreeSequence d;
  d.total_ = std::move(totals);
  return d;
}

const std::vector<double>& DegreeSequence::layer(int k) const
{
  auto it = by_size_.find(k);
  if (it == by_size_.end())
    throw Error(ErrorCode::EdgeSizeOutsideSpace, "no degree layer for size " + std::to_string(k));
  return it->second;
}

DegreeSequence degrees(const Hypergraph& h, const EdgeSpace& space)
{
  if (h.n() != space.n())
    throw Error(ErrorCode::InvalidArgument, "hypergraph and edge space disagree on n");
  std::map<int, std::vector<double>> layers;
  for (int k : space.sizes())
    layers[k].assign(static_cast<std::size_t>(space.n()), 0.0);
  for (const Edge& e : h.edges()) {
    const int k = static_cast<int>(e.size());
    auto it = layers.find(k);
    if (it == layers.end())
      throw Error(ErrorCode::EdgeSizeOutsideSpace, "edge of size " + std::to_string(k) + " not in space");
    for (Node v : e)
      it->second[static_cast<std::size_t>(v)] += 1.0;
  }
  return DegreeSequence::from_layers(space.n(), std::move(layers));
}

// ---------------------------------------------------------------------------
// Text formats

std::string format_real(double value)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

Hypergraph parse_block(const std::vector<Line>& lines)
{
  const int n = parse_header(lines);
  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    Edge edge;
    for (std::string_view tok : tokens(line.text)) {
      const long label = parse_integer(tok, line.number);
      if (label < 1 || label > n)
        throw ParseError(ErrorCode::NodeOutOfRange, line.number,
                         "label " + std::to_string(label) + " outside 1.." + std::to_string(n));
      edge.push_back(static_cast<Node>(label - 1));
    }
    std::sort(edge.begin(), edge.end());
    if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
      throw ParseError(ErrorCode::RepeatedNode, line.number, "edge repeats a node");
    if (edge.size() < 2)
      throw ParseError(ErrorCode::EdgeTooSmall, line.number, "edges need at least 2 nodes");
    if (!seen.insert(edge).second)
      throw ParseError(ErrorCode::DuplicateEdge, line.number, "edge listed twice");
    edges.push_back(std::move(edge));
  }
  return Hypergraph(n, std::move(edges));
}

} // namespace

Hypergraph read_hypergraph(std::string_view text)
{
  return parse_block(meaningful_lines(text));
}

std::string write_hypergraph(const Hypergraph& h)
{
  std::ostringstream out;
  out << "n=" << h.n() << '\n';
  for (const Edge& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      out << (i ? " " : "") << e[i] + 1;
    out << '\n';
  }
  return out.str();
}

std::vector<Hypergraph> read_hypergraphs(std::string_view text)
{
  std::vector<Hypergraph> out;
  std::vector<Line> block;
  for (const Line& line : meaningful_lines(text)) {
    if (line.text == "---") {
      if (!block.empty())
        out.push_back(parse_block(block));
      block.clear();
      continue;
    }
    block.push_back(line);
  }
  if (!block.empty())
    out.push_back(parse_block(block));
  if (out.empty())
    throw ParseError(ErrorCode::ParseError, 1, "no hypergraph blocks found");
  return out;
}

std::string write_hypergraphs(std::span<const Hypergraph> hs)
{
  std::string out;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (i)
      out += "---\n";
    out += write_hypergraph(hs[i]);
  }
  return out;
}

DegreeSequence read_degree_sequence(std::string_view text)
{
  const auto lines = meaningful_lines(text);
  const int n = parse_header(lines);
  std::map<int, std::vector<double>> layers;
  std::optional<std::vector<double>> totals;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const auto colon = line.text.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(ErrorCode::ParseError, line.number, "expected 'k=<K>:' or 'd:' prefix");
    const std::string_view head = trim(line.text.substr(0, colon));
    const std::string_view body = line.text.substr(colon + 1);
    if (head == "d") {
      if (totals || !layers.empty())
        throw ParseError(ErrorCode::ParseError, line.number, "'d:' must be the only degree line");
      totals = parse_values(body, n, line.number);
    } else if (auto k = keyed_integer(head, "k", line.number)) {
      if (totals)
        throw ParseError(ErrorCode::ParseError, line.number, "cannot mix 'd:' and 'k=' lines");
      if (*k < 2 || *k > n)
        throw ParseError(ErrorCode::ParseError, line.number, "edge size outside [2, n]");
      if (layers.count(static_cast<int>(*k)))
        throw ParseError(ErrorCode::ParseError, line.number, "layer listed twice");
      layers[static_cast<int>(*k)] = parse_values(body, n, line.number);
    } else {
      throw ParseError(ErrorCode::ParseError, line.number, "expected 'k=<K>:' or 'd:' prefix");
    }
  }
  try {
    if (totals)
      return DegreeSequence::from_totals(std::move(*totals));
    if (layers.empty())
      throw ParseError(ErrorCode::ParseError, lines.front().number, "no degree lines");
    return DegreeSequence::from_layers(n, std::move(layers));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(ErrorCode::ParseError, lines.front().number, e.what());
  }
}

std::string write_degree_sequence(const DegreeSequence& d)
{
  std::ostringstream out;
  out << "n=" << d.n() << '\n';
  auto emit = [&](const std::vector<double>& v) {
    for (double x : v)
      out << ' ' << format_real(x);
    out << '\n';
  };
  if (d.has_layers()) {
    for (const auto& [k, layer] : d.layers()) {
      out << "k=" << k << ':';
      emit(layer);
    }
  } else {
    out << "d:";
    emit(d.total());
  }
  return out.str();
}

bool looks_like_degree_sequence(std::string_view text)
{
  const auto lines = meaningful_lines(text);
  if (lines.size() < 2)
    return false;
  const std::string_view second = lines[1].text;
  return second.find(':') != std::string_view::npos;
}

} // namespace hyperbeta
