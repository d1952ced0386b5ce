#include "doctest.h"
#include "test_support.hpp"

#include "hyperbeta/error.hpp"
#include "hyperbeta/existence.hpp"

#include <sstream>

using namespace hyperbeta;

TEST_CASE("verdict mapping is total")
{
  CHECK(verdict_of(FitStatus::Converged) == Verdict::Exists);
  CHECK(verdict_of(FitStatus::DivergedUnbounded) == Verdict::NotExists);
  CHECK(verdict_of(FitStatus::DivergedPeriodic) == Verdict::NotExists);
  CHECK(verdict_of(FitStatus::BoundaryDegrees) == Verdict::NotExists);
  CHECK(verdict_of(FitStatus::MaxIterExceeded) == Verdict::Undetermined);
  CHECK(to_string(Verdict::Exists) == "exists");
  CHECK(to_string(Verdict::NotExists) == "not_exists");
  CHECK(to_string(Verdict::Undetermined) == "undetermined");
}

TEST_CASE("boundary screen")
{
  const auto spec = ModelSpec::uniform(5, 3);
  SUBCASE("zero degree")
  {
    const auto c = screen_boundary(spec, DegreeSequence::from_totals({2, 0, 3, 1, 3}));
    REQUIRE(c);
    CHECK(c->node == 1);
    CHECK(c->degree == 0.0);
    CHECK(c->bound == 0.0);
  }
  SUBCASE("complete hypergraph")
  {
    const auto c = screen_boundary(spec, DegreeSequence::from_totals(std::vector<double>(5, 6.0)));
    REQUIRE(c);
    CHECK(c->bound == 6.0);
  }
  SUBCASE("layered maximum in one layer only")
  {
    const auto lay = ModelSpec::layered(5, {2, 3});
    const auto d = DegreeSequence::from_layers(5, {{2, {4, 2, 2, 2, 2}}, {3, {3, 3, 3, 3, 3}}});
    const auto c = screen_boundary(lay, d);
    REQUIRE(c);
    CHECK(c->node == 0);
    CHECK(c->layer == 0);
    // the general model pools the sizes, so the same totals are interior
    CHECK_FALSE(screen_boundary(ModelSpec::general(5, {2, 3}), d));
  }
  SUBCASE("first example has no certificate")
  {
    CHECK_FALSE(screen_boundary(ModelSpec::uniform(10, 3), DegreeSequence::from_totals(hbtest::example1_degrees)));
  }
}

TEST_CASE("certificates agree with the fitter")
{
  Rng rng(8);
  const auto spec = ModelSpec::uniform(7, 3);
  int certified = 0;
  for (int t = 0; t < 40; ++t) {
    const double density = 0.05 + 0.9 * rng.uniform();
    const auto h = sample_fixed_density(spec.space(), density, {rng.next(), 1}).front();
    const auto d = degrees(h, spec.space());
    if (!screen_boundary(spec, d))
      continue;
    ++certified;
    CHECK(fit_fixed_point(spec, d).status != FitStatus::Converged);
  }
  CHECK(certified > 0);
}

TEST_CASE("scan extremes")
{
  ScanConfig cfg;
  cfg.densities = {0.0, 1.0};
  cfg.replicates = 3;
  cfg.seed = 1;
  const ExistenceScan s = scan_existence(ModelSpec::uniform(8, 3), cfg);
  REQUIRE(s.cells.size() == 6);
  for (const ScanCell& c : s.cells) {
    CHECK(c.verdict == Verdict::NotExists);
    CHECK(c.status == FitStatus::BoundaryDegrees);
  }
  CHECK(s.fraction_exists(0) == 0.0);
  CHECK(s.fraction_exists(1) == 0.0);
}

TEST_CASE("scan is deterministic and rises with density")
{
  ScanConfig cfg;
  cfg.densities = {0.2, 0.4, 0.6};
  cfg.replicates = 4;
  cfg.seed = 42;
  const auto spec = ModelSpec::uniform(12, 3);
  const ExistenceScan a = scan_existence(spec, cfg);
  const ExistenceScan b = scan_existence(spec, cfg);
  CHECK(a.cells_csv() == b.cells_csv());
  CHECK(a.summary_csv() == b.summary_csv());
  for (std::size_t j = 0; j < cfg.densities.size(); ++j)
    for (int r = 0; r < cfg.replicates; ++r) {
      const ScanCell& c = a.cells[j * 4 + static_cast<std::size_t>(r)];
      CHECK(c.density == cfg.densities[j]);
      CHECK(c.replicate == r);
      CHECK(c.edges == fixed_density_edge_count(spec.space(), cfg.densities[j]));
      CHECK(c.verdict == verdict_of(c.status));
    }
  CHECK(a.fraction_exists(2) >= a.fraction_exists(0));

  cfg.seed = 43;
  CHECK(scan_existence(spec, cfg).cells_csv() != a.cells_csv());
}

TEST_CASE("scan csv layout")
{
  ScanConfig cfg;
  cfg.densities = {0.5};
  cfg.replicates = 2;
  const ExistenceScan s = scan_existence(ModelSpec::uniform(6, 3), cfg);
  std::istringstream cells(s.cells_csv());
  std::string line;
  std::getline(cells, line);
  CHECK(line == "density,replicate,verdict,status,iterations,max_abs_beta");
  int rows = 0;
  while (std::getline(cells, line))
    ++rows;
  CHECK(rows == 2);
  std::istringstream summary(s.summary_csv());
  std::getline(summary, line);
  CHECK(line == "density,fraction_exists,fraction_undetermined");
  std::getline(summary, line);
  CHECK(line.rfind("0.5,", 0) == 0);
}

TEST_CASE("scan validates densities")
{
  ScanConfig cfg;
  cfg.densities = {0.5, 0.2};
  CHECK_THROWS_AS(scan_existence(ModelSpec::uniform(6, 3), cfg), Error);
  cfg.densities = {0.5, 1.5};
  CHECK_THROWS_AS(scan_existence(ModelSpec::uniform(6, 3), cfg), Error);
}
