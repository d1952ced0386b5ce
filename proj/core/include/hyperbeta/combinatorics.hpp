#pragma once

#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

namespace hyperbeta {

/// Exact C(n, k). Returns 0 when k < 0 or k > n. Throws on uint64 overflow.
std::uint64_t binomial(int n, int k);

/// n (n-1) ... (n-k+1)
double falling_factorial(int n, int k);

/// Advances `combo` (strictly increasing, values in [0, n)) to its
/// lexicographic successor. Returns false when `combo` was the last one.
bool next_combination(std::span<int> combo, int n);

/// Lazy range over all k-subsets of {0, ..., n-1} in lexicographic order.
/// Only the current subset is held in memory.
class KSubsets {
public:
  class iterator {
  public:
    using value_type = std::span<const int>;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(int n, int k);

    std::span<const int> operator*() const { return current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return done_; }

  private:
    int n_ = 0;
    std::vector<int> current_;
    bool done_ = true;
  };

  KSubsets(int n, int k) : n_(n), k_(k) {}

  iterator begin() const { return iterator(n_, k_); }
  std::default_sentinel_t end() const { return {}; }
  std::uint64_t size() const { return binomial(n_, k_); }

private:
  int n_;
  int k_;
};

} // namespace hyperbeta
