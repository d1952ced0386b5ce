#include "doctest.h"
#include "test_support.hpp"

#include "hyperbeta/combinatorics.hpp"
#include "hyperbeta/error.hpp"

using namespace hyperbeta;

TEST_CASE("binomial matches Pascal's triangle")
{
  std::vector<std::vector<std::uint64_t>> pascal(61);
  for (int n = 0; n <= 60; ++n) {
    pascal[n].assign(static_cast<std::size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k)
      pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
    for (int k = 0; k <= n; ++k)
      CHECK(binomial(n, k) == pascal[n][k]);
  }
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(100, 3) == 161700);
}

TEST_CASE("binomial refuses to overflow")
{
  CHECK_THROWS_AS(binomial(100, 50), Error);
  try {
    binomial(100, 50);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainError);
  }
}

TEST_CASE("falling factorial")
{
  CHECK(falling_factorial(10, 3) == 720.0);
  CHECK(falling_factorial(3, 2) == 6.0);
  CHECK(falling_factorial(7, 0) == 1.0);
}

TEST_CASE("KSubsets agrees with brute-force bitmask enumeration")
{
  for (int n = 1; n <= 12; ++n) {
    for (int k = 1; k <= std::min(n, 5); ++k) {
      const auto expected = hbtest::brute_subsets(n, k);
      std::vector<std::vector<int>> got;
      for (std::span<const int> s : KSubsets(n, k))
        got.emplace_back(s.begin(), s.end());
      CHECK(got == expected);
      CHECK(KSubsets(n, k).size() == expected.size());
    }
  }
}

TEST_CASE("KSubsets with k > n is empty")
{
  int count = 0;
  for ([[maybe_unused]] auto s : KSubsets(3, 4))
    ++count;
  CHECK(count == 0);
}

TEST_CASE("next_combination stops after the last subset")
{
  std::vector<int> c{2, 3, 4};
  CHECK_FALSE(next_combination(c, 5));
  std::vector<int> d{0, 3, 4};
  CHECK(next_combination(d, 5));
  CHECK(d == std::vector<int>{1, 2, 3});
}
