#include "doctest.h"
#include "test_support.hpp"

#include "hyperbeta/error.hpp"
#include "hyperbeta/hypergraph.hpp"

#include <numeric>

using namespace hyperbeta;

namespace {

ErrorCode code_of(auto&& fn)
{
  try {
    fn();
  } catch (const ParseError& e) {
    return e.reason();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::vector<std::vector<int>> collect(const EdgeSpace& space)
{
  std::vector<std::vector<int>> out;
  for (std::span<const Node> e : space.edges())
    out.emplace_back(e.begin(), e.end());
  return out;
}

} // namespace

TEST_CASE("edge space validation")
{
  CHECK(code_of([] { EdgeSpace(5, {1}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { EdgeSpace(3, {4}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { EdgeSpace(5, {}); }) == ErrorCode::InvalidArgument);
  const EdgeSpace s(6, {3, 2, 3});
  CHECK(s.sizes() == std::vector<int>{2, 3});
  CHECK(s.max_size() == 3);
  CHECK_FALSE(s.is_uniform());
  CHECK(s.edge_count() == 15 + 20);
}

TEST_CASE("edge enumeration examples")
{
  CHECK(collect(EdgeSpace::uniform(3, 2)) == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(collect(EdgeSpace::uniform(4, 3)).size() == 4);
  CHECK(collect(EdgeSpace(10, {2, 3})).size() == 165);
}

TEST_CASE("edge enumeration equals the brute-force oracle for n <= 12, K within {2,3,4}")
{
  const std::vector<std::vector<int>> size_sets{{2}, {3}, {4}, {2, 3}, {2, 4}, {3, 4}, {2, 3, 4}};
  for (int n = 4; n <= 12; ++n) {
    for (const auto& sizes : size_sets) {
      const EdgeSpace space(n, sizes);
      std::vector<std::vector<int>> expected;
      for (int k : sizes) {
        auto layer = hbtest::brute_subsets(n, k);
        expected.insert(expected.end(), layer.begin(), layer.end());
      }
      const auto got = collect(space);
      CHECK(got == expected);
      CHECK(got.size() == space.edge_count());
      std::vector<std::vector<int>> via_callback;
      for_each_edge(space, [&](std::span<const Node> e) { via_callback.emplace_back(e.begin(), e.end()); });
      CHECK(via_callback == expected);
    }
  }
}

TEST_CASE("hypergraph validation and canonical form")
{
  CHECK(code_of([] { Hypergraph(3, {{0, 3}}); }) == ErrorCode::NodeOutOfRange);
  CHECK(code_of([] { Hypergraph(3, {{0, 0, 1}}); }) == ErrorCode::RepeatedNode);
  CHECK(code_of([] { Hypergraph(3, {{1}}); }) == ErrorCode::EdgeTooSmall);
  CHECK(code_of([] { Hypergraph(3, {{0, 1}, {1, 0}}); }) == ErrorCode::DuplicateEdge);

  const Hypergraph h(4, {{3, 2}, {2, 1, 0}, {0, 3}});
  CHECK(h.edges() == std::vector<Edge>{{0, 3}, {2, 3}, {0, 1, 2}});
  CHECK(h.contains(std::vector<int>{2, 3}));
  CHECK_FALSE(h.contains(std::vector<int>{1, 3}));
}

TEST_CASE("degrees of the co-authorship example")
{
  // (A,B,C), (A,D), (C,D)
  const Hypergraph h(4, {{0, 1, 2}, {0, 3}, {2, 3}});
  const DegreeSequence d = degrees(h, EdgeSpace(4, {2, 3}));
  CHECK(d.total() == std::vector<double>{2, 1, 2, 2});
  CHECK(d.layer(2) == std::vector<double>{1, 0, 1, 2});
  CHECK(d.layer(3) == std::vector<double>{1, 1, 1, 0});
  CHECK(code_of([&] { degrees(h, EdgeSpace::uniform(4, 2)); }) == ErrorCode::EdgeSizeOutsideSpace);
}

TEST_CASE("degrees of empty and complete hypergraphs")
{
  CHECK(degrees(Hypergraph(5), EdgeSpace::uniform(5, 3)).total() == std::vector<double>(5, 0.0));
  std::vector<Edge> all;
  for_each_edge(EdgeSpace::uniform(4, 2), [&](std::span<const Node> e) { all.emplace_back(e.begin(), e.end()); });
  CHECK(degrees(Hypergraph(4, all), EdgeSpace::uniform(4, 2)).total() == std::vector<double>(4, 3.0));
}

TEST_CASE("handshake identity and permutation equivariance on random hypergraphs")
{
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + static_cast<int>(rng.next() % 6);
    const EdgeSpace space(n, {2, 3});
    std::vector<Edge> edges;
    for_each_edge(space, [&](std::span<const Node> e) {
      if (rng.uniform() < 0.3)
        edges.emplace_back(e.begin(), e.end());
    });
    const Hypergraph h(n, edges);
    const DegreeSequence d = degrees(h, space);
    double incidences = 0.0;
    for (const Edge& e : h.edges())
      incidences += static_cast<double>(e.size());
    CHECK(std::accumulate(d.total().begin(), d.total().end(), 0.0) == incidences);

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[static_cast<std::size_t>(i)], perm[rng.next() % static_cast<std::uint64_t>(i + 1)]);
    std::vector<Edge> relabeled;
    for (Edge e : h.edges()) {
      for (int& v : e)
        v = perm[static_cast<std::size_t>(v)];
      relabeled.push_back(e);
    }
    const DegreeSequence dp = degrees(Hypergraph(n, relabeled), space);
    for (int i = 0; i < n; ++i)
      CHECK(dp.total()[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] == d.total()[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("degree sequence bounds")
{
  CHECK(code_of([] { DegreeSequence::from_layers(4, {{2, {1, 1, 1, 4}}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { DegreeSequence::from_layers(4, {{2, {1, -1, 1, 1}}}); }) == ErrorCode::InvalidArgument);
  const auto d = DegreeSequence::from_layers(4, {{2, {1, 2, 3, 0}}, {3, {3, 0, 1, 2}}});
  CHECK(d.total() == std::vector<double>{4, 2, 4, 2});
  CHECK(code_of([&] { d.layer(4); }) == ErrorCode::EdgeSizeOutsideSpace);
}

TEST_CASE("hypergraph text format")
{
  const Hypergraph h = read_hypergraph("n=4\n1 2 3\n1 4\n3 4\n");
  CHECK(h == Hypergraph(4, {{0, 1, 2}, {0, 3}, {2, 3}}));
  CHECK(read_hypergraph(write_hypergraph(h)) == h);
  CHECK(read_hypergraph("n=2\n").edge_count() == 0);
  CHECK(read_hypergraph("# comment\nn=3  # nodes\n\n3 1 # unsorted\n").edges() == std::vector<Edge>{{0, 2}});

  CHECK(code_of([] { read_hypergraph("n=3\n1 1 2\n"); }) == ErrorCode::RepeatedNode);
  CHECK(code_of([] { read_hypergraph("n=3\n1 4\n"); }) == ErrorCode::NodeOutOfRange);
  CHECK(code_of([] { read_hypergraph("n=3\n2\n"); }) == ErrorCode::EdgeTooSmall);
  CHECK(code_of([] { read_hypergraph("n=3\n1 2\n2 1\n"); }) == ErrorCode::DuplicateEdge);
  CHECK(code_of([] { read_hypergraph("3\n1 2\n"); }) == ErrorCode::ParseError);
  try {
    read_hypergraph("n=3\n1 2\n1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("multi-block and degree-sequence formats")
{
  const std::vector<Hypergraph> hs{Hypergraph(3, {{0, 1}}), Hypergraph(3), Hypergraph(3, {{0, 1, 2}})};
  CHECK(read_hypergraphs(write_hypergraphs(hs)) == hs);

  const auto layered = DegreeSequence::from_layers(3, {{2, {0.5, 1, 1.5}}, {3, {1, 1, 1}}});
  const std::string text = write_degree_sequence(layered);
  CHECK(looks_like_degree_sequence(text));
  CHECK(read_degree_sequence(text) == layered);

  const auto totals = DegreeSequence::from_totals({6.28, 10.7, 17.59});
  CHECK(read_degree_sequence(write_degree_sequence(totals)) == totals);
  CHECK(read_degree_sequence("n=3\nd: 1 2 3\n").total() == std::vector<double>{1, 2, 3});
  CHECK_FALSE(looks_like_degree_sequence("n=3\n1 2\n"));
  CHECK(code_of([] { read_degree_sequence("n=3\nd: 1 2\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { read_degree_sequence("n=3\nd: 1 2 3\nk=2: 1 1 1\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("reals print with 12 significant digits")
{
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(-4.94) == "-4.94");
  CHECK(format_real(2.0) == "2");
}
