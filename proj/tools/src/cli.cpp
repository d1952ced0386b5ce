#include "hyperbeta_cli/cli.hpp"

#include "hyperbeta/error.hpp"
#include "hyperbeta/existence.hpp"
#include "hyperbeta/fixedpoint.hpp"
#include "hyperbeta/ips.hpp"
#include "hyperbeta/sampler.hpp"
#include "hyperbeta/stats.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace hyperbeta::cli {

using nlohmann::ordered_json;

namespace {

const std::string kConfigPrefix = "# config: ";

std::string read_file(const std::string& path)
{
  if (path.empty())
    throw Error(ErrorCode::InvalidArgument, "no input file given (--input)");
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  f << content;
  if (!f)
    throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

// Output goes to --out when given, else to the output stream.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& content)
{
  if (cfg.out.empty())
    out << content;
  else
    write_file(cfg.out, content);
}

// Reals in outputs carry 12 significant digits.
ordered_json num(double x)
{
  if (!std::isfinite(x))
    return nullptr;
  return std::stod(format_real(x));
}

ordered_json values_json(const std::vector<double>& v)
{
  ordered_json a = ordered_json::array();
  for (double x : v)
    a.push_back(num(x));
  return a;
}

// Uniform/general: a plain array. Layered: {"2": [...], "3": [...]}.
ordered_json beta_json(const ModelSpec& spec, const ParamVector& beta)
{
  if (spec.variant() != Variant::Layered)
    return values_json(beta.layers.front());
  ordered_json o = ordered_json::object();
  for (int l = 0; l < spec.layer_count(); ++l)
    o[std::to_string(spec.sizes_of_layer(l).front())] = values_json(beta.layers[static_cast<std::size_t>(l)]);
  return o;
}

std::string beta_csv(const ModelSpec& spec, const ParamVector& beta)
{
  std::ostringstream s;
  const bool layered = spec.variant() == Variant::Layered;
  s << (layered ? "size,node,beta\n" : "node,beta\n");
  for (int l = 0; l < spec.layer_count(); ++l) {
    const auto& layer = beta.layers[static_cast<std::size_t>(l)];
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (layered)
        s << spec.sizes_of_layer(l).front() << ',';
      s << i + 1 << ',' << format_real(layer[i]) << '\n';
    }
  }
  return s.str();
}

int exit_code(FitStatus status)
{
  switch (status) {
  case FitStatus::Converged: return kExitOk;
  case FitStatus::MaxIterExceeded: return kExitMaxIter;
  default: return kExitNonexistent;
  }
}

std::string csv_header(const RunConfig& cfg) { return kConfigPrefix + config_to_json(cfg) + "\n"; }

std::string json_document(ordered_json body) { return body.dump(2) + "\n"; }

ModelSpec make_spec(const RunConfig& cfg)
{
  if (cfg.n < 2)
    throw Error(ErrorCode::InvalidArgument, "--n is required (n >= 2)");
  if (cfg.sizes.empty())
    throw Error(ErrorCode::InvalidArgument, "--k or --sizes is required");
  return ModelSpec(parse_variant(cfg.model), EdgeSpace(cfg.n, cfg.sizes));
}

FixedPointOptions fit_options(const RunConfig& cfg)
{
  FixedPointOptions o;
  o.tol = cfg.tol;
  o.max_iter = cfg.max_iter;
  o.step_control = cfg.step == "plain" ? StepControl::Plain : StepControl::Adaptive;
  return o;
}

// Reads a degree-sequence file or hypergraph file(s) and fills n / sizes
// from it when the config leaves them open.
DegreeSequence load_degrees(RunConfig& cfg)
{
  const std::string text = read_file(cfg.input);
  if (looks_like_degree_sequence(text)) {
    DegreeSequence d = read_degree_sequence(text);
    if (cfg.n != 0 && cfg.n != d.n())
      throw Error(ErrorCode::InvalidArgument, "--n does not match the degree file");
    cfg.n = d.n();
    if (cfg.sizes.empty())
      for (const auto& [k, values] : d.layers())
        cfg.sizes.push_back(k);
    return d;
  }
  const std::vector<Hypergraph> hs = read_hypergraphs(text);
  const int n = hs.front().n();
  std::set<int> seen;
  for (const Hypergraph& h : hs) {
    if (h.n() != n)
      throw Error(ErrorCode::InvalidArgument, "hypergraphs in one file must share n");
    for (const Edge& e : h.edges())
      seen.insert(static_cast<int>(e.size()));
  }
  if (cfg.n != 0 && cfg.n != n)
    throw Error(ErrorCode::InvalidArgument, "--n does not match the hypergraph file");
  cfg.n = n;
  if (cfg.sizes.empty())
    cfg.sizes.assign(seen.begin(), seen.end());
  if (cfg.sizes.empty())
    throw Error(ErrorCode::InvalidArgument, "hypergraph has no edges; give --k or --sizes");
  return mean_degrees(hs, EdgeSpace(cfg.n, cfg.sizes));
}

int cmd_fit(RunConfig cfg, std::ostream& out, std::ostream& err)
{
  const DegreeSequence d = load_degrees(cfg);
  const ModelSpec spec = make_spec(cfg);

  ordered_json doc;
  doc["config"] = ordered_json::parse(config_to_json(cfg));
  doc["method"] = cfg.method;
  FitStatus status;
  std::optional<ParamVector> beta;

  if (cfg.method == "fixedpoint") {
    FixedPointOptions opts = fit_options(cfg);
    opts.record_trace = !cfg.trace.empty();
    const FitResult r = fit_fixed_point(spec, d, opts);
    status = r.status;
    doc["status"] = to_string(r.status);
    doc["verdict"] = to_string(verdict_of(r.status));
    doc["iterations"] = r.iterations;
    doc["final_step"] = num(r.final_step);
    doc["moment_residual"] = num(r.moment_residual);
    doc["beta"] = beta_json(spec, r.beta);
    beta = r.beta;
    if (!cfg.trace.empty())
      write_file(cfg.trace, trace_csv(r));
  } else {
    IpsOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    const IpsModelFit r = ips_fit_model(spec, d, opts);
    if (r.boundary_degrees)
      status = FitStatus::BoundaryDegrees;
    else if (r.status != FitStatus::Converged)
      status = r.status;
    else if (r.on_boundary)
      status = FitStatus::DivergedUnbounded;
    else
      status = FitStatus::Converged;
    doc["status"] = to_string(status);
    doc["verdict"] = to_string(verdict_of(status));
    doc["iterations"] = r.iterations;
    doc["margin_residual"] = num(r.margin_residual);
    if (status == FitStatus::Converged) {
      const LogitInversion inv = logits_to_beta(spec, r.probabilities());
      doc["moment_residual"] = num(sup_norm(check_moment_equations(spec, inv.beta, d)));
      doc["inconsistency"] = num(inv.inconsistency);
      doc["beta"] = beta_json(spec, inv.beta);
      beta = inv.beta;
    } else {
      doc["beta"] = nullptr;
    }
    if (!cfg.probabilities.empty()) {
      std::string csv;
      const LayeredValues p = r.probabilities();
      for (int l = 0; l < spec.layer_count(); ++l) {
        const std::vector<int> sizes = spec.sizes_of_layer(l);
        csv += probability_csv(EdgeSpace(spec.n(), sizes), p[static_cast<std::size_t>(l)]);
      }
      write_file(cfg.probabilities, csv);
    }
  }

  if (cfg.format == "json") {
    emit(cfg, out, json_document(doc));
  } else {
    if (!beta)
      err << "no beta estimate: " << to_string(status) << '\n';
    emit(cfg, out, csv_header(cfg) + (beta ? beta_csv(spec, *beta) : std::string()));
  }
  if (status != FitStatus::Converged)
    err << "fit: " << to_string(status) << '\n';
  return exit_code(status);
}

int cmd_simulate(RunConfig cfg, std::ostream& out, std::ostream&)
{
  const ModelSpec spec = make_spec(cfg);
  const SampleConfig sc{cfg.seed, cfg.replicates};
  std::vector<Hypergraph> hs;
  if (cfg.density >= 0.0) {
    hs = sample_fixed_density(spec.space(), cfg.density, sc);
  } else {
    if (cfg.params.empty())
      throw Error(ErrorCode::InvalidArgument, "simulate needs --params or --density");
    hs = sample(spec, read_params(spec, read_file(cfg.params)), sc);
  }
  emit(cfg, out, csv_header(cfg) + write_hypergraphs(hs));
  if (!cfg.degrees_out.empty())
    write_file(cfg.degrees_out, csv_header(cfg) + write_degree_sequence(mean_degrees(hs, spec.space())));
  return kExitOk;
}

int cmd_lrt(RunConfig cfg, std::ostream& out, std::ostream& err)
{
  const DegreeSequence d = load_degrees(cfg);
  cfg.model = "layered";
  const ModelSpec spec = make_spec(cfg);
  LrtResult r;
  try {
    r = lrt_layered_vs_general(spec.space(), d, fit_options(cfg));
  } catch (const FitFailedError& e) {
    err << "lrt: " << e.what() << '\n';
    return exit_code(e.status());
  }
  if (cfg.format == "json") {
    ordered_json doc;
    doc["config"] = ordered_json::parse(config_to_json(cfg));
    doc["lambda"] = num(r.lambda);
    doc["df"] = r.df;
    doc["p_value"] = num(r.p_value);
    ordered_json reject = ordered_json::object();
    for (double level : lrt_levels())
      reject[format_real(level)] = r.reject_at.at(level);
    doc["reject"] = reject;
    doc["loglik_layered"] = num(r.loglik_layered);
    doc["loglik_general"] = num(r.loglik_general);
    emit(cfg, out, json_document(doc));
  } else {
    std::ostringstream s;
    s << "lambda,df,p_value";
    for (double level : lrt_levels())
      s << ",reject_" << format_real(level);
    s << '\n' << format_real(r.lambda) << ',' << r.df << ',' << format_real(r.p_value);
    for (double level : lrt_levels())
      s << ',' << (r.reject_at.at(level) ? "true" : "false");
    s << '\n';
    emit(cfg, out, csv_header(cfg) + s.str());
  }
  return kExitOk;
}

int cmd_scan(RunConfig cfg, std::ostream& out, std::ostream&)
{
  const ModelSpec spec = make_spec(cfg);
  ScanConfig sc;
  sc.densities = cfg.densities;
  sc.replicates = cfg.replicates;
  sc.seed = cfg.seed;
  sc.fit = fit_options(cfg);
  const ExistenceScan scan = scan_existence(spec, sc);

  if (!cfg.cells.empty())
    write_file(cfg.cells, scan.cells_csv());
  if (cfg.format == "json") {
    ordered_json doc;
    doc["config"] = ordered_json::parse(config_to_json(cfg));
    ordered_json summary = ordered_json::array();
    for (std::size_t j = 0; j < scan.densities.size(); ++j)
      summary.push_back({{"density", num(scan.densities[j])},
                         {"fraction_exists", num(scan.fraction_exists(j))},
                         {"fraction_undetermined", num(scan.fraction_undetermined(j))}});
    doc["summary"] = summary;
    ordered_json cells = ordered_json::array();
    for (const ScanCell& c : scan.cells)
      cells.push_back({{"density", num(c.density)},
                       {"replicate", c.replicate},
                       {"edges", c.edges},
                       {"verdict", to_string(c.verdict)},
                       {"status", to_string(c.status)},
                       {"iterations", c.iterations},
                       {"max_abs_beta", num(c.max_abs_beta)}});
    doc["cells"] = cells;
    emit(cfg, out, json_document(doc));
  } else {
    emit(cfg, out, csv_header(cfg) + scan.summary_csv());
  }
  return kExitOk;
}

void check_choice(const std::string& what, const std::string& value, std::initializer_list<const char*> allowed)
{
  for (const char* a : allowed)
    if (value == a)
      return;
  throw Error(ErrorCode::InvalidArgument, "invalid " + what + " '" + value + "'");
}

// Pulls the config file path out of the raw arguments so it can seed the
// option defaults before the real parse.
std::optional<std::string> find_config_arg(const std::vector<std::string>& args)
{
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0)
      return args[i].substr(9);
  }
  return std::nullopt;
}

RunConfig load_config_file(const std::string& path)
{
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const ordered_json j = ordered_json::parse(text);
    return config_from_json((j.contains("config") ? j["config"] : j).dump());
  }
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);)
    if (line.rfind(kConfigPrefix, 0) == 0)
      return config_from_json(line.substr(kConfigPrefix.size()));
  throw Error(ErrorCode::ParseError, "no config found in '" + path + "'");
}

} // namespace

std::string config_to_json(const RunConfig& c)
{
  ordered_json j;
  j["subcommand"] = c.subcommand;
  j["model"] = c.model;
  j["n"] = c.n;
  j["sizes"] = c.sizes;
  j["input"] = c.input;
  j["method"] = c.method;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["step"] = c.step;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["format"] = c.format;
  j["trace"] = c.trace;
  j["probabilities"] = c.probabilities;
  j["params"] = c.params;
  j["density"] = c.density;
  j["replicates"] = c.replicates;
  j["degrees_out"] = c.degrees_out;
  j["densities"] = c.densities;
  j["cells"] = c.cells;
  return j.dump();
}

RunConfig config_from_json(const std::string& text)
{
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key))
      j.at(key).get_to(field);
  };
  try {
    get("subcommand", c.subcommand);
    get("model", c.model);
    get("n", c.n);
    get("sizes", c.sizes);
    get("input", c.input);
    get("method", c.method);
    get("tol", c.tol);
    get("max_iter", c.max_iter);
    get("step", c.step);
    get("seed", c.seed);
    get("out", c.out);
    get("format", c.format);
    get("trace", c.trace);
    get("probabilities", c.probabilities);
    get("params", c.params);
    get("density", c.density);
    get("replicates", c.replicates);
    get("degrees_out", c.degrees_out);
    get("densities", c.densities);
    get("cells", c.cells);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad config field: ") + e.what());
  }
  return c;
}

RunConfig resolve(RunConfig c)
{
  check_choice("subcommand", c.subcommand, {"fit", "simulate", "lrt", "scan-existence"});
  check_choice("model", c.model, {"uniform", "layered", "general"});
  check_choice("method", c.method, {"fixedpoint", "ips"});
  check_choice("step", c.step, {"adaptive", "plain"});
  if (c.format.empty())
    c.format = c.subcommand == "simulate" ? "text" : c.subcommand == "scan-existence" ? "csv" : "json";
  if (c.subcommand == "simulate")
    check_choice("format for simulate", c.format, {"text"});
  else
    check_choice("format", c.format, {"json", "csv"});
  if (c.max_iter == 0)
    c.max_iter = c.method == "ips" ? IpsOptions{}.max_iter : FixedPointOptions{}.max_iter;
  if (c.replicates == 0)
    c.replicates = c.subcommand == "scan-existence" ? 20 : 1;
  if (c.subcommand == "scan-existence" && c.densities.empty())
    for (int i = 1; i <= 19; ++i)
      c.densities.push_back(i / 20.0);
  if (!(c.tol > 0.0) || c.max_iter < 1 || c.replicates < 1)
    throw Error(ErrorCode::InvalidArgument, "tol, max_iter and replicates must be positive");
  std::sort(c.sizes.begin(), c.sizes.end());
  c.sizes.erase(std::unique(c.sizes.begin(), c.sizes.end()), c.sizes.end());
  return c;
}

int execute(const RunConfig& raw, std::ostream& out, std::ostream& err)
{
  try {
    const RunConfig cfg = resolve(raw);
    if (cfg.subcommand == "fit")
      return cmd_fit(cfg, out, err);
    if (cfg.subcommand == "simulate")
      return cmd_simulate(cfg, out, err);
    if (cfg.subcommand == "lrt")
      return cmd_lrt(cfg, out, err);
    return cmd_scan(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  RunConfig cfg;
  try {
    if (auto path = find_config_arg(args))
      cfg = load_config_file(*path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  CLI::App app{"Fit, sample and test hypergraph beta models", "hyperbeta"};
  app.require_subcommand(0, 1);
  std::string config_path;
  int k = 0;
  app.add_option("--config", config_path, "Re-run from a config JSON or any output carrying one");

  auto model_opts = [&](CLI::App* s) {
    s->add_option("--model", cfg.model, "uniform, layered or general")->capture_default_str();
    s->add_option("--n", cfg.n, "Number of nodes");
    s->add_option("--sizes", cfg.sizes, "Edge sizes, e.g. 2,3")->delimiter(',')->allow_extra_args(false);
    s->add_option("--k", k, "Single edge size (uniform)");
  };
  auto fit_opts = [&](CLI::App* s) {
    s->add_option("--tol", cfg.tol, "Convergence tolerance")->capture_default_str();
    s->add_option("--max-iter", cfg.max_iter, "Iteration cap (default 5000, 100000 for ips)");
    s->add_option("--step", cfg.step, "Fixed-point step control: adaptive or plain")->capture_default_str();
  };
  auto out_opts = [&](CLI::App* s) {
    s->add_option("--out", cfg.out, "Output file (default stdout)");
    s->add_option("--format", cfg.format, "json or csv");
    s->add_option("--config", config_path, "Re-run from a config JSON or any output carrying one");
  };

  CLI::App* fit = app.add_subcommand("fit", "Fit beta parameters to a degree sequence or hypergraph file");
  model_opts(fit);
  fit_opts(fit);
  out_opts(fit);
  fit->add_option("--input,input", cfg.input, "Degree-sequence or hypergraph file");
  fit->add_option("--method", cfg.method, "fixedpoint or ips")->capture_default_str();
  fit->add_option("--trace", cfg.trace, "Write the per-iteration trace CSV here");
  fit->add_option("--probabilities", cfg.probabilities, "Write fitted edge probabilities here (ips)");

  CLI::App* sim = app.add_subcommand("simulate", "Sample hypergraphs from a model or at a fixed density");
  model_opts(sim);
  out_opts(sim);
  sim->add_option("--params", cfg.params, "Parameter file");
  sim->add_option("--density", cfg.density, "Sample uniform hypergraphs with this edge density instead");
  sim->add_option("--replicates", cfg.replicates, "Number of hypergraphs (default 1)");
  sim->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  sim->add_option("--degrees-out", cfg.degrees_out, "Also write the mean degree sequence here");

  CLI::App* lrt = app.add_subcommand("lrt", "Likelihood ratio test, layered against general");
  model_opts(lrt);
  fit_opts(lrt);
  out_opts(lrt);
  lrt->add_option("--input,input", cfg.input, "Per-size degree-sequence or hypergraph file");

  CLI::App* scan = app.add_subcommand("scan-existence", "MLE existence against edge density");
  model_opts(scan);
  fit_opts(scan);
  out_opts(scan);
  scan->add_option("--densities", cfg.densities, "Densities, e.g. 0.1,0.2 (default 0.05..0.95)")->delimiter(',')->allow_extra_args(false);
  scan->add_option("--replicates", cfg.replicates, "Hypergraphs per density (default 20)");
  scan->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  scan->add_option("--cells", cfg.cells, "Write per-replicate verdicts CSV here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  for (CLI::App* sub : app.get_subcommands())
    cfg.subcommand = sub->get_name();
  if (cfg.subcommand.empty()) {
    err << app.help();
    return kExitError;
  }
  if (k != 0)
    cfg.sizes = {k};
  return execute(cfg, out, err);
}

} // namespace hyperbeta::cli
