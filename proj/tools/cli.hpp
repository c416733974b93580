// Copyright 2026 The minimax-regret Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMR_TOOLS_CLI_HPP_
#define MMR_TOOLS_CLI_HPP_

// Command-line front end. run_cli() does all the work so tests can drive it
// in process; main() only forwards argv.
//
// Exit codes: 0 success, 1 reproduction cells failed, 2 invalid
// configuration, 3 numerical failure.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmr/mmr.hpp"
#include "reproduce.hpp"

namespace mmr::cli {

enum ExitCode { kOk = 0, kCellsFailed = 1, kInvalidConfig = 2, kNumerical = 3 };

struct RunOptions {
  // problem
  int n1 = -1;
  int n2 = -1;
  int nbar = -1;
  int arms = 2;
  std::optional<double> mu_t;
  std::string restrict_band;
  bool symmetric = false;
  bool distinct_scan = false;
  // solver
  int p = 1000;
  double eta = 0.7;
  double c = 5.0;
  std::string weights = "lc";
  int iters = 2000;
  double xi = 0.0;
  std::optional<double> xi_rel;
  std::uint64_t seed = 0;
  std::string init = "es";
  std::string init_file;
  int threads = 0;
  // outputs
  std::string trace_path;
  std::string report_path;
  std::string rule_path;
  int rule_precision = kRuleCsvPrecision;
  // coarsen
  std::string sample_path;
  // reproduce
  std::string table;
  std::string rows = "n1";
  std::string scale = "smoke";
  std::string out_path;
};

namespace detail {

inline std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(ch));
  return s;
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Appends "--key value" for every key=value line of the file whose flag is
// not already on the command line, so explicit flags win.
inline std::vector<std::string> merge_config_file(
    std::vector<std::string> args) {
  std::string path;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      kept.push_back(args[i]);
    }
  }
  if (path.empty()) return kept;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::set<std::string> present;
  for (const auto& a : kept) {
    if (a.rfind("--", 0) == 0) present.insert(a.substr(2, a.find('=') - 2));
  }
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line without '=': " + line);
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    for (char& ch : key) {
      if (ch == '_') ch = '-';
    }
    if (key == "mode" || present.count(key)) continue;
    if (key == "symmetric" || key == "distinct-scan") {
      if (lower(value) == "true" || value == "1") kept.push_back("--" + key);
      continue;
    }
    kept.push_back("--" + key);
    kept.push_back(value);
  }
  return kept;
}

inline WeightSchedule make_schedule(const RunOptions& o) {
  const std::string w = lower(o.weights);
  if (w == "lc" || w == "leslie-collins") return WeightSchedule::leslie_collins(o.c, o.eta);
  if (w == "robinson") return WeightSchedule::robinson();
  if (w == "log" || w == "log-damped") return WeightSchedule::log_damped(o.c);
  throw std::invalid_argument("unknown weight schedule '" + o.weights + "'");
}

inline TreatmentRule load_rule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open rule file " + path);
  if (ends_with(lower(path), ".json")) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("rule file " + path + ": " + e.what());
    }
    return rule_from_json(j);
  }
  return read_rule_csv(in);
}

inline void save_rule(const std::string& path, const TreatmentRule& rule,
                      int precision) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  const bool two_arm = rule.num_treatments() == 2 && rule.space().num_arms() == 2;
  if (two_arm && !ends_with(lower(path), ".json")) {
    write_rule_csv(out, rule, precision);
  } else {
    out << rule_to_json(rule).dump(1) << '\n';
  }
}

// "lo,hi" -> ratio band grid.
inline ParameterGrid make_grid(const RunOptions& o, int dims) {
  if (o.p < 1) throw std::invalid_argument("--p must be >= 1");
  if (o.restrict_band.empty()) return ParameterGrid::unrestricted(o.p, dims);
  if (dims != 2) throw std::invalid_argument("--restrict needs a two-arm problem");
  const auto comma = o.restrict_band.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("--restrict expects lo,hi");
  }
  try {
    return ParameterGrid::ratio_band(o.p, std::stod(o.restrict_band.substr(0, comma)),
                                     std::stod(o.restrict_band.substr(comma + 1)));
  } catch (const std::logic_error& e) {
    throw std::invalid_argument(std::string("--restrict: ") + e.what());
  }
}

inline int thread_count(const RunOptions& o) {
  return o.threads > 0 ? o.threads : default_thread_count();
}

inline void emit_outputs(const RunOptions& o, const std::string& mode,
                         const SolveConfig& cfg, const SolveReport& report,
                         double seconds, std::ostream& out) {
  if (!o.trace_path.empty()) {
    std::ofstream tr(o.trace_path);
    if (!tr) throw std::invalid_argument("cannot write " + o.trace_path);
    write_trace_csv(tr, report.trace);
  }
  if (!o.rule_path.empty()) save_rule(o.rule_path, report.best_rule, o.rule_precision);
  nlohmann::json j = report_to_json(report);
  j["mode"] = mode;
  j["resolution"] = cfg.grid.resolution();
  j["grid"] = cfg.grid.description();
  j["sample_sizes"] = cfg.spec.arm_sizes();
  j["num_treatments"] = cfg.spec.num_treatments;
  if (cfg.spec.status_quo_mean) j["status_quo_mean"] = *cfg.spec.status_quo_mean;
  j["weights"] = {{"kind", to_string(cfg.weights.kind)},
                  {"C", cfg.weights.C},
                  {"eta", cfg.weights.eta}};
  j["init"] = o.init;
  j["wall_seconds"] = seconds;
  const std::string text = j.dump(2);
  if (o.report_path.empty()) {
    out << text << '\n';
  } else {
    std::ofstream rp(o.report_path);
    if (!rp) throw std::invalid_argument("cannot write " + o.report_path);
    rp << text << '\n';
  }
}

inline SolveConfig base_config(const RunOptions& o) {
  SolveConfig cfg;
  cfg.weights = make_schedule(o);
  cfg.max_iters = o.iters;
  cfg.xi = o.xi;
  cfg.xi_relative = o.xi_rel;
  cfg.rng_seed = o.seed;
  cfg.threads = thread_count(o);
  return cfg;
}

inline int run_two_arm(const RunOptions& o, bool symmetric, std::ostream& out) {
  if (o.n1 < 0 || o.n2 < 0) throw std::invalid_argument("--n1 and --n2 are required and must be >= 0");
  SolveConfig cfg = base_config(o);
  cfg.spec = ProblemSpec::two_arm(o.n1, o.n2);
  cfg.grid = make_grid(o, 2);
  const std::string init = lower(o.init);
  if (init == "es") {
    // The restricted band is not mirror-closed; start from the variant that
    // sends equal rates to treatment 2.
    cfg.init_rule = es_rule(o.n1, o.n2,
                            cfg.grid.restricted() ? EsVariant::kTiesToTwo
                                                  : EsVariant::kSymmetric);
  } else if (init == "es-swapped") {
    cfg.init_rule = es_rule(o.n1, o.n2, EsVariant::kSymmetricSwappedTies);
  } else if (init == "es-ties-to-two") {
    cfg.init_rule = es_rule(o.n1, o.n2, EsVariant::kTiesToTwo);
  } else if (init == "so") {
    cfg.init_rule = so_rule(o.n1, o.n2);
  } else if (init == "file") {
    if (o.init_file.empty()) throw std::invalid_argument("--init file needs --init-file");
    cfg.init_rule = load_rule(o.init_file);
  } else {
    throw std::invalid_argument("unknown --init '" + o.init + "'");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const SolveReport report = symmetric ? solve_symmetric(cfg) : solve(cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_outputs(o, symmetric ? "two-arm-symmetric" : "two-arm", cfg, report, secs, out);
  return kOk;
}

inline int run_innovations(const RunOptions& o, std::ostream& out) {
  if (o.nbar < 1) throw std::invalid_argument("--nbar is required (>= 1)");
  if (!o.mu_t) throw std::invalid_argument("--mu-t is required");
  if (!o.restrict_band.empty()) {
    throw std::invalid_argument("--restrict applies to two-arm modes only");
  }
  if (o.arms < 1) throw std::invalid_argument("--arms must be >= 1");
  SolveConfig cfg = base_config(o);
  const int T = o.arms + 1;
  cfg.spec = ProblemSpec::testing_innovations(T, o.nbar, *o.mu_t);
  cfg.grid = make_grid(o, o.arms);
  const std::string init = lower(o.init);
  if (init == "es") {
    cfg.init_rule = es_rule_innovations(o.nbar, T, *o.mu_t);
  } else if (init == "file") {
    if (o.init_file.empty()) throw std::invalid_argument("--init file needs --init-file");
    cfg.init_rule = load_rule(o.init_file);
  } else {
    throw std::invalid_argument("innovations support --init es|file");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const SolveReport report = solve_innovations(cfg, {}, o.distinct_scan);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit_outputs(o, "innovations", cfg, report, secs, out);
  return kOk;
}

// CSV lines "arm,outcome" with arms numbered from 1; a header is allowed.
inline RealSample read_sample_csv(const std::string& path, int num_arms) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sample file " + path);
  RealSample sample;
  sample.outcomes.resize(num_arms);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = line.find(',');
    int arm = 0;
    double y = 0.0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      arm = std::stoi(line.substr(0, comma));
      y = std::stod(line.substr(comma + 1));
    } catch (const std::logic_error&) {
      if (lineno == 1) continue;  // header
      throw std::invalid_argument("sample line " + std::to_string(lineno) +
                                  ": expected arm,outcome");
    }
    if (arm < 1 || arm > num_arms) {
      throw std::invalid_argument("sample line " + std::to_string(lineno) +
                                  ": arm out of range");
    }
    sample.outcomes[arm - 1].push_back(y);
  }
  sample.validate();
  return sample;
}

inline int run_coarsen(const RunOptions& o, std::ostream& out) {
  if (o.rule_path.empty() || o.sample_path.empty()) {
    throw std::invalid_argument("coarsen needs --rule and --sample");
  }
  const TreatmentRule rule = load_rule(o.rule_path);
  const RealSample sample = read_sample_csv(o.sample_path, rule.space().num_arms());
  if (sample.sizes() != rule.space().sizes()) {
    throw std::invalid_argument("sample arm sizes do not match the rule");
  }
  const auto counts = coarsen_sample(sample, o.seed);
  const auto row = rule.row(rule.space().index(counts));
  nlohmann::json j;
  j["seed"] = o.seed;
  j["counts"] = counts;
  j["assignment_given_draw"] = std::vector<double>(row.begin(), row.end());
  j["assignment_exact"] = coarsened_assignment_exact(rule, sample);
  const std::string text = j.dump(2);
  if (o.report_path.empty()) {
    out << text << '\n';
  } else {
    std::ofstream rp(o.report_path);
    if (!rp) throw std::invalid_argument("cannot write " + o.report_path);
    rp << text << '\n';
  }
  return kOk;
}

inline int run_reproduce(const RunOptions& o, std::ostream& out, std::ostream& err) {
  ReproduceOptions ro;
  ro.table = o.table;
  ro.rows = lower(o.rows);
  ro.scale = lower(o.scale);
  ro.threads = thread_count(o);
  const auto cells = reproduce(ro, &err);
  std::ostringstream csv;
  write_reproduce_csv(csv, cells);
  if (o.out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(o.out_path);
    if (!f) throw std::invalid_argument("cannot write " + o.out_path);
    f << csv.str();
  }
  int failed = 0;
  for (const auto& c : cells) failed += !c.pass;
  err << cells.size() - failed << "/" << cells.size() << " cells pass\n";
  return failed ? kCellsFailed : kOk;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  RunOptions o;
  CLI::App app{"Minimax-regret treatment rules by fictitious play"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every mode");

  auto solver_options = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "Grid resolution p (grid step 1/p)")->capture_default_str();
    sub->add_option("--eta", o.eta, "Leslie-Collins exponent")->capture_default_str();
    sub->add_option("--c", o.c, "Schedule offset C")->capture_default_str();
    sub->add_option("--weights", o.weights, "lc | robinson | log")->capture_default_str();
    sub->add_option("--iters", o.iters, "Maximum iterations")->capture_default_str();
    sub->add_option("--xi", o.xi, "Absolute stopping threshold (0 disables)")
        ->capture_default_str();
    sub->add_option("--xi-rel", o.xi_rel, "Relative stopping threshold");
    sub->add_option("--seed", o.seed, "Seed (coarsening only)")->capture_default_str();
    sub->add_option("--init-file", o.init_file, "Initial rule for --init file");
    sub->add_option("--threads", o.threads, "Worker threads (default REGRET_THREADS or 1)");
    sub->add_option("--trace", o.trace_path, "Trace CSV output");
    sub->add_option("--report", o.report_path, "Report JSON output (default stdout)");
    sub->add_option("--rule", o.rule_path, "Best rule output (CSV for two arms, else JSON)");
    sub->add_option("--rule-precision", o.rule_precision, "Decimals in rule CSV")
        ->capture_default_str();
  };

  auto* two_arm = app.add_subcommand("two-arm", "Two treatments, fixed sample sizes");
  auto* two_arm_sym =
      app.add_subcommand("two-arm-symmetric", "Two treatments over symmetric rules");
  for (auto* sub : {two_arm, two_arm_sym}) {
    sub->add_option("--n1", o.n1, "Sample size of treatment 1");
    sub->add_option("--n2", o.n2, "Sample size of treatment 2");
    sub->add_option("--restrict", o.restrict_band, "lo,hi: lo*mu1 <= mu2 <= hi*mu1");
    sub->add_option("--init", o.init, "es | es-swapped | es-ties-to-two | so | file")
        ->capture_default_str();
    solver_options(sub);
  }
  two_arm->add_flag("--symmetric", o.symmetric, "Use the symmetric solver");

  auto* innov = app.add_subcommand("innovations", "Innovations against a known status quo");
  innov->add_option("--arms", o.arms, "Number of innovations T-1")->capture_default_str();
  innov->add_option("--nbar", o.nbar, "Common innovation sample size");
  innov->add_option("--mu-t", o.mu_t, "Known status quo mean");
  innov->add_option("--init", o.init, "es | file")->capture_default_str();
  innov->add_option("--restrict", o.restrict_band, "Not supported here");
  innov->add_flag("--distinct-scan", o.distinct_scan,
                  "Skip grid points with repeated innovation means");
  solver_options(innov);

  auto* coarsen = app.add_subcommand("coarsen", "Apply a rule to a [0,1]-valued sample");
  coarsen->add_option("--rule", o.rule_path, "Rule file (CSV or JSON)");
  coarsen->add_option("--sample", o.sample_path, "CSV of arm,outcome");
  coarsen->add_option("--seed", o.seed, "Coarsening seed")->capture_default_str();
  coarsen->add_option("--report", o.report_path, "Output JSON (default stdout)");

  auto* repro = app.add_subcommand("reproduce", "Recompute reference tables");
  repro->add_option("--table", o.table, "I | II | III | IV")->required();
  repro->add_option("--rows", o.rows, "n1 (first iterate) | all")->capture_default_str();
  repro->add_option("--scale", o.scale, "smoke | full")->capture_default_str();
  repro->add_option("--out", o.out_path, "Summary CSV (default stdout)");
  repro->add_option("--threads", o.threads, "Worker threads");

  try {
    args = detail::merge_config_file(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }

  try {
    if (*two_arm) return detail::run_two_arm(o, o.symmetric, out);
    if (*two_arm_sym) return detail::run_two_arm(o, true, out);
    if (*innov) return detail::run_innovations(o, out);
    if (*coarsen) return detail::run_coarsen(o, out);
    if (*repro) return detail::run_reproduce(o, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kInvalidConfig;
}

}  // namespace mmr::cli

#endif  // MMR_TOOLS_CLI_HPP_
