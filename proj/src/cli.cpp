#include "gptlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <sstream>

#include "gptlab/errors.hpp"
#include "gptlab/model_zoo.hpp"
#include "gptlab/serialization.hpp"
#include "gptlab/suites.hpp"

namespace gptlab::cli {

namespace {

using io::Json;

constexpr int kFailed = 1;
constexpr int kUsage = 2;

suites::SuiteConfig suite_config(const RunConfig& cfg) {
  suites::SuiteConfig s;
  s.n = cfg.n;
  s.mass = cfg.mass;
  s.seed = cfg.seed;
  s.samples = cfg.samples;
  s.tol = cfg.tol;
  return s;
}

Json config_json(const RunConfig& cfg) {
  Json j{{"n", cfg.n}, {"mass", cfg.mass}, {"seed", cfg.seed}, {"samples", cfg.samples}};
  j["tol"] = cfg.tol ? Json(*cfg.tol) : Json(nullptr);
  if (cfg.subcommand == "toy-spacetime" || cfg.subcommand == "report") {
    j["N"] = cfg.N;
    j["k"] = cfg.k.value_or(2);
  }
  return j;
}

Json suite_json(const suites::SuiteResult& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(io::report_to_json(c));
  return {{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}};
}

std::vector<std::string> suite_csv_header() {
  return {"suite", "check", "samples", "worst_deviation", "tolerance", "pass", "anchor"};
}

void suite_csv_rows(io::CsvWriter& w, const suites::SuiteResult& r) {
  for (const auto& c : r.checks)
    w.row({r.suite, c.check, std::to_string(c.samples), io::format_double(c.worst_deviation),
           io::format_double(c.tolerance), c.pass ? "true" : "false", c.anchor});
}

std::string format_of(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  return cfg.subcommand == "chsh-scan" ? "csv" : "json";
}

std::vector<suites::SuiteResult> run_suites(const RunConfig& cfg) {
  const auto sc = suite_config(cfg);
  const int k = cfg.k.value_or(2);
  if (cfg.subcommand == "minkowski-checks") return {suites::minkowski_checks(sc)};
  if (cfg.subcommand == "little-group-checks") return {suites::little_group_checks(sc)};
  if (cfg.subcommand == "invariance-checks") return {suites::invariance_checks(sc)};
  if (cfg.subcommand == "toy-spacetime") return {suites::toy_spacetime_checks(cfg.N, k, cfg.tol)};
  // report: every suite, run concurrently; each one owns its seed stream.
  auto m = std::async(std::launch::async, [&] { return suites::minkowski_checks(sc); });
  auto l = std::async(std::launch::async, [&] { return suites::little_group_checks(sc); });
  auto i = std::async(std::launch::async, [&] { return suites::invariance_checks(sc); });
  auto t = std::async(std::launch::async, [&] { return suites::toy_spacetime_checks(cfg.N, k, cfg.tol); });
  return {m.get(), l.get(), i.get(), t.get()};
}

int emit_suites(const RunConfig& cfg, std::ostream& doc) {
  const auto results = run_suites(cfg);
  bool pass = true;
  for (const auto& r : results) pass = pass && r.pass();
  if (format_of(cfg) == "csv") {
    io::CsvWriter w(doc, suite_csv_header());
    for (const auto& r : results) suite_csv_rows(w, r);
  } else if (results.size() == 1) {
    Json j = suite_json(results.front());
    j["config"] = config_json(cfg);
    doc << j.dump(2) << '\n';
  } else {
    Json all = Json::array();
    for (const auto& r : results) all.push_back(suite_json(r));
    doc << Json{{"pass", pass}, {"config", config_json(cfg)}, {"suites", all}}.dump(2) << '\n';
  }
  return pass ? 0 : kFailed;
}

int emit_zoo(const RunConfig& cfg, std::ostream& doc) {
  std::vector<std::string> names = cfg.names;
  names.insert(names.end(), cfg.locals.begin(), cfg.locals.end());
  if (names.empty()) throw DomainError("zoo: give at least one theory name");
  if (format_of(cfg) != "json") throw DomainError("zoo: theories are exported as JSON only");
  if (names.size() == 1) {
    doc << io::export_theory(names.front());
    return 0;
  }
  Json all = Json::array();
  for (const auto& name : names) all.push_back(io::theory_to_json(zoo::by_name(name)));
  doc << Json{{"theories", all}}.dump(2) << '\n';
  return 0;
}

int emit_chsh(const RunConfig& cfg, std::ostream& doc) {
  std::vector<io::ChshScenarioSpec> specs;
  if (cfg.scenario) {
    std::ifstream in(*cfg.scenario);
    if (!in) throw DomainError("chsh-scan: cannot read scenario file '" + *cfg.scenario + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw DomainError("chsh-scan: " + *cfg.scenario + ": " + e.what());
    }
    specs = io::scenarios_from_json(j);
  }
  if (!cfg.locals.empty()) {
    if (cfg.locals.size() > 2) throw DomainError("chsh-scan: --locals takes one or two theory names");
    io::ChshScenarioSpec s;
    s.local_a = cfg.locals.front();
    s.local_b = cfg.locals.back();
    s.id = s.local_a + "/" + s.local_b;
    specs.push_back(s);
  }
  if (specs.empty()) throw DomainError("chsh-scan: give --locals or --scenario");
  if (cfg.k)
    for (auto& s : specs) s.ball_resolution = *cfg.k;

  std::vector<io::ChshScenarioResult> results;
  bool pass = true;
  for (const auto& s : specs) {
    results.push_back(io::run_scenario(s));
    pass = pass && results.back().verdict != "invalid";
  }
  if (format_of(cfg) == "csv") {
    io::CsvWriter w(doc, io::chsh_csv_header());
    for (const auto& r : results) w.row(io::chsh_csv_row(r));
  } else {
    Json all = Json::array();
    for (const auto& r : results) all.push_back(io::chsh_result_to_json(r));
    doc << Json{{"results", all}}.dump(2) << '\n';
  }
  return pass ? 0 : kFailed;
}

void validate(const RunConfig& cfg) {
  const auto& subs = subcommands();
  if (std::find(subs.begin(), subs.end(), cfg.subcommand) == subs.end())
    throw DomainError("unknown subcommand '" + cfg.subcommand + "'");
  if (cfg.n < 1) throw DomainError("--n must be >= 1");
  if (!(cfg.mass > 0.0)) throw DomainError("--mass must be positive");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw DomainError("--tol must be positive");
  if (cfg.samples < 1) throw DomainError("--samples must be >= 1");
  if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "csv")
    throw DomainError("--format must be json or csv");
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> subs{"zoo",         "chsh-scan",         "minkowski-checks", "little-group-checks",
                                             "invariance-checks", "toy-spacetime", "report"};
  return subs;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                                    int& exit_code) {
  RunConfig cfg;
  CLI::App app{"Verification harness for probabilistic theories on Minkowski spacetime"};
  app.add_option("subcommand", cfg.subcommand, "zoo | chsh-scan | minkowski-checks | little-group-checks | "
                                               "invariance-checks | toy-spacetime | report")
      ->required();
  app.add_option("names", cfg.names, "theory names for zoo");
  app.add_option("--n", cfg.n, "spatial dimension")->capture_default_str();
  app.add_option("--mass", cfg.mass, "particle mass")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--tol", cfg.tol, "override every check tolerance");
  app.add_option("--samples", cfg.samples, "random draws per sampled check")->capture_default_str();
  app.add_option("--locals", cfg.locals, "local theories, e.g. polygon:4 or bit,boxworld")->delimiter(',');
  app.add_option("--scenario", cfg.scenario, "CHSH scenario file (JSON)");
  app.add_option("--N", cfg.N, "polygon order for toy-spacetime")->capture_default_str();
  app.add_option("--k", cfg.k, "translation step for toy-spacetime; ball resolution for chsh-scan");
  app.add_option("--out", cfg.out, "output path (default: standard output)");
  app.add_option("--format", cfg.format, "json or csv");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    exit_code = app.exit(e, out, err);
    if (exit_code != 0) exit_code = kUsage;
    return std::nullopt;
  }
  exit_code = 0;
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ostringstream doc;
  int status = 0;
  try {
    validate(cfg);
    if (cfg.subcommand == "zoo") status = emit_zoo(cfg, doc);
    else if (cfg.subcommand == "chsh-scan") status = emit_chsh(cfg, doc);
    else status = emit_suites(cfg, doc);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (cfg.out.empty()) {
    out << doc.str();
    out.flush();
  } else {
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (file) file << doc.str();
    if (!file || !file.flush()) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kUsage;
    }
  }
  if (status != 0) err << cfg.subcommand << ": one or more checks failed\n";
  return status;
}

}  // namespace gptlab::cli
