#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hyperbeta::cli {

/// Everything a run depends on. Zero / empty fields are filled with the
/// subcommand's defaults by resolve(), and the resolved config is echoed
/// into every output.
struct RunConfig {
  std::string subcommand;
  std::string model = "uniform";
  int n = 0;
  std::vector<int> sizes;
  std::string input;
  std::string method = "fixedpoint";
  double tol = 1e-10;
  int max_iter = 0;
  std::string step = "adaptive";
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  std::string trace;
  std::string probabilities;
  std::string params;
  double density = -1.0;
  int replicates = 0;
  std::string degrees_out;
  std::vector<double> densities;
  std::string cells;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNonexistent = 2;
inline constexpr int kExitMaxIter = 3;

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);

/// Fills subcommand defaults (max_iter, format, replicates, densities).
RunConfig resolve(RunConfig cfg);

/// Parses argv-style arguments (without the program name) and runs.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already-built config.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace hyperbeta::cli
