#include "hyperbeta/combinatorics.hpp"

#include "hyperbeta/error.hpp"

#include <limits>
#include <numeric>

namespace hyperbeta {

std::uint64_t binomial(int n, int k)
{
  if (k < 0 || n < 0 || k > n)
    return 0;
  if (k > n - k)
    k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i, reduced first so intermediate stays exact
    std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    std::uint64_t den = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(result, den);
    result /= g;
    den /= g;
    num /= den;  // den now divides num since the product is an integer
    if (result > std::numeric_limits<std::uint64_t>::max() / num)
      throw Error(ErrorCode::DomainError, "binomial coefficient overflows 64 bits");
    result *= num;
  }
  return result;
}

double falling_factorial(int n, int k)
{
  double out = 1.0;
  for (int i = 0; i < k; ++i)
    out *= static_cast<double>(n - i);
  return out;
}

bool next_combination(std::span<int> combo, int n)
{
  const int k = static_cast<int>(combo.size());
  int i = k - 1;
  while (i >= 0 && combo[i] == n - k + i)
    --i;
  if (i < 0)
    return false;
  ++combo[i];
  for (int j = i + 1; j < k; ++j)
    combo[j] = combo[j - 1] + 1;
  return true;
}

KSubsets::iterator::iterator(int n, int k) : n_(n)
{
  if (k < 0 || k > n)
    return;
  current_.resize(static_cast<std::size_t>(k));
  std::iota(current_.begin(), current_.end(), 0);
  done_ = false;
}

KSubsets::iterator& KSubsets::iterator::operator++()
{
  if (!next_combination(current_, n_))
    done_ = true;
  return *this;
}

} // namespace hyperbeta
