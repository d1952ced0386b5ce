#include "doctest.h"
#include "test_support.hpp"

#include "hyperbeta/fixedpoint.hpp"
#include "hyperbeta_cli/cli.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hyperbeta;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path tmp(const std::string& name)
{
  const fs::path dir = HYPERBETA_TEST_TMP;
  fs::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text)
{
  const fs::path p = tmp(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path)
{
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string example1_file()
{
  std::string text = "n=10\nd:";
  for (double v : hbtest::example1_degrees)
    text += " " + format_real(v);
  return write("example1.txt", text + "\n");
}

std::vector<double> beta_of(const json& doc)
{
  return doc.at("beta").get<std::vector<double>>();
}

} // namespace

TEST_CASE("fit the first example")
{
  const std::string f = example1_file();
  const Run fp = run({"fit", "--model", "uniform", "--k", "3", "--method", "fixedpoint", f});
  REQUIRE(fp.code == cli::kExitOk);
  const json a = json::parse(fp.out);
  CHECK(a.at("status") == "converged");
  CHECK(a.at("verdict") == "exists");
  CHECK(a.at("config").at("n") == 10);
  CHECK(a.at("moment_residual").get<double>() < 1e-6);

  const FitResult lib = fit_fixed_point(ModelSpec::uniform(10, 3), DegreeSequence::from_totals(hbtest::example1_degrees));
  CHECK(hbtest::max_diff(beta_of(a), lib.beta.layers.front()) < 1e-9);

  const Run ips = run({"fit", "--model", "uniform", "--k", "3", "--method", "ips", f});
  REQUIRE(ips.code == cli::kExitOk);
  const json b = json::parse(ips.out);
  CHECK(b.at("method") == "ips");
  CHECK(b.at("config").at("max_iter") == 100000);
  CHECK(hbtest::max_diff(beta_of(a), beta_of(b)) < 1e-4);
}

TEST_CASE("csv fit output starts with the config")
{
  const Run r = run({"fit", "--k", "3", "--format", "csv", example1_file()});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# config: {", 0) == 0);
}

TEST_CASE("zero degree is reported as boundary")
{
  const std::string f = write("zero.txt", "n=5\nd: 0 2 2 1 1\n");
  for (const char* method : {"fixedpoint", "ips"}) {
    const Run r = run({"fit", "--k", "3", "--method", method, f});
    CHECK(r.code == cli::kExitNonexistent);
    const json doc = json::parse(r.out);
    CHECK(doc.at("status") == "boundary_degrees");
    CHECK(doc.at("verdict") == "not_exists");
  }
}

TEST_CASE("iteration cap exit code")
{
  const Run r = run({"fit", "--k", "3", "--max-iter", "5", example1_file()});
  CHECK(r.code == cli::kExitMaxIter);
  CHECK(json::parse(r.out).at("status") == std::string(to_string(FitStatus::MaxIterExceeded)));
}

TEST_CASE("simulate is deterministic and feeds fit")
{
  const std::string params = write("params.txt", "n=8\nbeta: 0.5 0.2 -0.1 -0.4 0.3 0 -0.2 0.1\n");
  const std::vector<std::string> args{"simulate", "--n", "8", "--k", "3", "--params", params,
                                      "--replicates", "50", "--seed", "7"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto other = args;
  other.back() = "8";
  CHECK(run(other).out != a.out);

  const std::string sample = write("sample.txt", a.out);
  const Run fit = run({"fit", "--k", "3", sample});
  CHECK(fit.code == 0);
  CHECK(json::parse(fit.out).at("config").at("n") == 8);

  const std::string deg = tmp("sample_degrees.txt").string();
  auto with_degrees = args;
  with_degrees.insert(with_degrees.end(), {"--degrees-out", deg});
  REQUIRE(run(with_degrees).code == 0);
  const Run fit_deg = run({"fit", "--k", "3", deg});
  CHECK(fit_deg.code == 0);
  CHECK(hbtest::max_diff(beta_of(json::parse(fit_deg.out)), beta_of(json::parse(fit.out))) < 1e-8);
}

TEST_CASE("simulate at a fixed density")
{
  const Run r = run({"simulate", "--n", "6", "--k", "3", "--density", "0.5", "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto hs = read_hypergraphs(r.out);
  REQUIRE(hs.size() == 1);
  CHECK(hs.front().edges().size() == 10);
}

TEST_CASE("config echo re-runs byte for byte")
{
  const std::string out1 = tmp("rerun1.json").string();
  const std::string out2 = tmp("rerun2.json").string();
  REQUIRE(run({"fit", "--k", "3", "--tol", "1e-9", "--out", out1, example1_file()}).code == 0);
  const std::string first = slurp(out1);
  // the echoed config carries the output path; point the re-run elsewhere
  REQUIRE(run({"fit", "--config", out1, "--out", out2}).code == 0);
  json a = json::parse(first);
  json b = json::parse(slurp(out2));
  CHECK(b.at("config").at("tol") == 1e-9);
  a["config"].erase("out");
  b["config"].erase("out");
  CHECK(a.dump() == b.dump());

  const cli::RunConfig cfg = cli::config_from_json(json::parse(first).at("config").dump());
  CHECK(json::parse(cli::config_to_json(cfg)) == json::parse(first).at("config"));
}

TEST_CASE("lrt reports ten degrees of freedom")
{
  const std::string f = write("layers.txt",
                              "n=10\n"
                              "k=2: 4 3 5 2 6 3 4 2 5 4\n"
                              "k=3: 9 12 8 15 7 11 10 13 9 12\n");
  const Run r = run({"lrt", "--sizes", "2,3", f});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("df") == 10);
  CHECK(doc.at("lambda").get<double>() >= -1e-8);
  CHECK(doc.at("reject").contains("0.005"));
  CHECK(doc.at("reject").at("0.05").get<bool>() == (doc.at("p_value").get<double>() < 0.05));
}

TEST_CASE("scan-existence summary")
{
  const std::string cells = tmp("cells.csv").string();
  const Run r = run({"scan-existence", "--n", "10", "--k", "3", "--densities", "0,0.5,1", "--replicates", "3",
                     "--seed", "1", "--cells", cells});
  REQUIRE(r.code == 0);
  std::istringstream s(r.out);
  std::string line;
  std::getline(s, line);
  CHECK(line.rfind("# config: ", 0) == 0);
  std::getline(s, line);
  CHECK(line == "density,fraction_exists,fraction_undetermined");
  std::getline(s, line);
  CHECK(line.rfind("0,0,", 0) == 0);
  CHECK(slurp(cells).find("not_exists") != std::string::npos);
  CHECK(run({"scan-existence", "--n", "10", "--k", "3", "--densities", "0,0.5,1", "--replicates", "3",
             "--seed", "1", "--cells", cells}).out == r.out);
}

TEST_CASE("errors exit with 1")
{
  const Run missing = run({"fit", "--k", "3", tmp("does-not-exist.txt").string()});
  CHECK(missing.code == cli::kExitError);
  CHECK_FALSE(missing.err.empty());
  const Run bad = run({"fit", "--k", "3", write("bad.txt", "n=3\n1 1\n")});
  CHECK(bad.code == cli::kExitError);
  CHECK(run({"fit", "--k", "3", "--method", "newton", example1_file()}).code == cli::kExitError);
  CHECK(run({"nonsense"}).code == cli::kExitError);
}
