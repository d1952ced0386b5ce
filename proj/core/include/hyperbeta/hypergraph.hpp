#pragma once

#include "hyperbeta/combinatorics.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperbeta {

/// Internal node index, 0-based. All text I/O is 1-based.
using Node = int;

/// Strictly increasing list of node indices.
using Edge = std::vector<Node>;

/// Canonical edge order: ascending size, then lexicographic.
struct EdgeOrder {
  bool operator()(std::span<const Node> a, std::span<const Node> b) const;
};

/// The set of realizable edges: every k-subset of the n nodes for each
/// allowed size k.
class EdgeSpace {
public:
  EdgeSpace(int n, std::vector<int> sizes);

  static EdgeSpace uniform(int n, int k) { return EdgeSpace(n, {k}); }

  int n() const noexcept { return n_; }
  const std::vector<int>& sizes() const noexcept { return sizes_; }
  int max_size() const noexcept { return sizes_.back(); }
  bool is_uniform() const noexcept { return sizes_.size() == 1; }
  bool contains_size(int k) const;
  bool contains(std::span<const Node> edge) const;

  /// Σ_k C(n, k)
  std::uint64_t edge_count() const;

  /// Number of size-k edges containing a given node, C(n-1, k-1).
  std::uint64_t max_degree(int k) const { return binomial(n_ - 1, k - 1); }

  /// Lazy stream of every edge, ascending size then lexicographic.
  class Stream;
  Stream edges() const;

  bool operator==(const EdgeSpace&) const = default;

private:
  int n_;
  std::vector<int> sizes_;
};

class EdgeSpace::Stream {
public:
  class iterator {
  public:
    using value_type = std::span<const Node>;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    explicit iterator(const EdgeSpace* space);

    std::span<const Node> operator*() const { return *inner_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return space_ == nullptr; }

  private:
    void start_layer();

    const EdgeSpace* space_ = nullptr;
    std::size_t layer_ = 0;
    KSubsets::iterator inner_;
  };

  explicit Stream(const EdgeSpace& space) : space_(&space) {}
  iterator begin() const { return iterator(space_); }
  std::default_sentinel_t end() const { return {}; }

private:
  const EdgeSpace* space_;
};

inline EdgeSpace::Stream EdgeSpace::edges() const { return Stream(*this); }

/// Calls `fn(std::span<const Node>)` for every edge of `space` in canonical
/// order. Equivalent to iterating `space.edges()`.
template <class Fn>
void for_each_edge(const EdgeSpace& space, Fn&& fn)
{
  std::vector<Node> combo;
  for (int k : space.sizes()) {
    combo.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      combo[static_cast<std::size_t>(i)] = i;
    do {
      fn(std::span<const Node>(combo));
    } while (next_combination(combo, space.n()));
  }
}

/// Labeled hypergraph on nodes 0..n-1. Edges are stored canonically sorted
/// and unique; construction validates and normalizes.
class Hypergraph {
public:
  explicit Hypergraph(int n) : n_(n) {}
  Hypergraph(int n, std::vector<Edge> edges);

  int n() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool contains(std::span<const Node> edge) const;

  bool operator==(const Hypergraph&) const = default;

private:
  int n_;
  std::vector<Edge> edges_;
};

/// Per-node degrees, split by edge size when known. Totals are always
/// available; a sequence read from a `d:` line carries totals only.
class DegreeSequence {
public:
  static DegreeSequence from_layers(int n, std::map<int, std::vector<double>> by_size);
  static DegreeSequence from_totals(std::vector<double> totals);

  int n() const noexcept { return static_cast<int>(total_.size()); }
  bool has_layers() const noexcept { return !by_size_.empty(); }
  const std::map<int, std::vector<double>>& layers() const noexcept { return by_size_; }
  const std::vector<double>& layer(int k) const;
  const std::vector<double>& total() const noexcept { return total_; }

  bool operator==(const DegreeSequence&) const = default;

private:
  std::map<int, std::vector<double>> by_size_;
  std::vector<double> total_;
};

/// d_i^(k) = number of size-k edges of h containing i.
DegreeSequence degrees(const Hypergraph& h, const EdgeSpace& space);

/// Edge-list text format: `n=<N>` then one edge per line (1-based labels).
Hypergraph read_hypergraph(std::string_view text);
std::string write_hypergraph(const Hypergraph& h);

/// Several edge-list blocks separated by `---` lines.
std::vector<Hypergraph> read_hypergraphs(std::string_view text);
std::string write_hypergraphs(std::span<const Hypergraph> hs);

/// Degree-sequence text format: `n=<N>` then `k=<K>: v1 .. vN` lines or a
/// single `d: v1 .. vN` line.
DegreeSequence read_degree_sequence(std::string_view text);
std::string write_degree_sequence(const DegreeSequence& d);

/// True when the first meaningful line after `n=` looks like a degree
/// sequence (`k=..:` or `d:`), used to sniff CLI inputs.
bool looks_like_degree_sequence(std::string_view text);

std::string format_real(double value);

} // namespace hyperbeta
