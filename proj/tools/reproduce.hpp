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

#ifndef MMR_TOOLS_REPRODUCE_HPP_
#define MMR_TOOLS_REPRODUCE_HPP_

// Recomputes the reference tables and compares every cell.
//
// Full scale uses p = 1000 and 2000 iterations. First-iterate cells are
// deterministic and get tight tolerances; later cells depend on tie-breaks
// and get loose ones. Smoke scale keeps N <= 20, p = 200 and at most 500
// iterations, and checks properties that must hold on a coarser grid.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmr/mmr.hpp"

namespace mmr::cli {

struct ReproduceOptions {
  std::string table;         // I, II, III, IV
  std::string rows = "n1";   // n1 or all
  std::string scale = "smoke";
  int threads = 1;
};

struct Cell {
  std::string table;
  std::string config;
  std::string label;
  double computed = 0.0;
  double reference = 0.0;
  double tol = 0.0;
  // Two-sided |computed - reference| <= tol, or one-sided
  // computed <= reference + tol.
  bool one_sided = false;
  bool pass = false;
};

inline constexpr double kTableIFirstTol = 1e-7;
inline constexpr double kFirstIterTol = 1e-6;
inline constexpr double kEarlyTol = 2e-3;
inline constexpr double kLateTol = 5e-4;
inline constexpr double kBalancedOracleTol = 1e-5;
inline constexpr int kFullResolution = 1000;
inline constexpr int kFullIters = 2000;
inline constexpr int kSmokeResolution = 200;
inline constexpr int kSmokeIters = 500;
inline constexpr int kSmokeMaxN = 20;
// Band of the restricted parameter space.
inline constexpr double kBandLo = 0.9;
inline constexpr double kBandHi = 1.2;

namespace detail {

inline Cell make_cell(const std::string& table, const std::string& config,
                      const std::string& label, double computed,
                      double reference, double tol, bool one_sided = false) {
  Cell c{table, config, label, computed, reference, tol, one_sided, false};
  c.pass = std::isfinite(computed) &&
           (one_sided ? computed <= reference + tol
                      : std::abs(computed - reference) <= tol);
  return c;
}

inline std::string config_text(const ReferenceTable::Config& cfg) {
  // Fixed key order so the CSV reads naturally.
  static const char* kOrder[] = {"n1", "n2", "nbar", "mu3", "weights", "init"};
  std::string out;
  for (const char* k : kOrder) {
    const auto it = cfg.find(k);
    if (it == cfg.end()) continue;
    if (!out.empty()) out += ',';
    out += it->first + "=" + it->second;
  }
  return out;
}

inline int get_int(const ReferenceTable::Config& cfg, const std::string& key) {
  return std::stoi(cfg.at(key));
}

// Problem, grid, start and nature's action set for one tabulated
// configuration.
struct Setup {
  SolveConfig solve;
  NatureActionSet actions;
  int max_n = 0;
};

inline Setup make_setup(const std::string& table, const ReferenceTable::Config& cfg,
                        int p, int iters, int threads) {
  Setup s;
  s.solve.max_iters = iters;
  s.solve.threads = threads;
  s.solve.weights = WeightSchedule::leslie_collins(5.0, 0.7);
  if (table == "IV") {
    const int nbar = get_int(cfg, "nbar");
    const double mu3 = std::stod(cfg.at("mu3"));
    s.solve.spec = ProblemSpec::testing_innovations(3, nbar, mu3);
    s.solve.grid = ParameterGrid::unrestricted(p, 2);
    s.solve.init_rule = es_rule_innovations(nbar, 3, mu3);
    // The tabulated first iterates scan only distinct innovation means.
    s.actions = orbit_actions(/*distinct_only=*/true);
    s.max_n = nbar;
    return s;
  }
  const int n1 = get_int(cfg, "n1");
  const int n2 = get_int(cfg, "n2");
  s.solve.spec = ProblemSpec::two_arm(n1, n2);
  s.max_n = std::max(n1, n2);
  if (table == "III") {
    s.solve.grid = ParameterGrid::ratio_band(p, kBandLo, kBandHi);
    s.solve.init_rule = es_rule(n1, n2, EsVariant::kTiesToTwo);
    return s;
  }
  s.solve.grid = ParameterGrid::unrestricted(p, 2);
  s.actions = mirror_pair_actions(p);
  if (table == "I") {
    if (cfg.at("weights") == "robinson") s.solve.weights = WeightSchedule::robinson();
    s.solve.init_rule = cfg.at("init") == "so" ? so_rule(n1, n2) : es_rule(n1, n2);
  } else {
    // Unbalanced tabulated first iterates use the swapped equal-rate ties.
    s.solve.init_rule = es_rule(n1, n2, EsVariant::kSymmetricSwappedTies);
  }
  return s;
}

inline std::vector<int> wanted_iters(const std::string& rows) {
  if (rows == "n1") return {1};
  return {1, 150, 500, 2000};
}

inline bool is_pair_table(const std::string& table) { return table != "I"; }

}  // namespace detail

inline void write_reproduce_csv(std::ostream& os, const std::vector<Cell>& cells) {
  os << "table,config,label,computed,reference,tol,pass\n";
  std::ostringstream line;
  line << std::setprecision(10);
  for (const auto& c : cells) {
    line.str("");
    line << c.table << ",\"" << c.config << "\"," << c.label << ',' << c.computed
         << ',' << c.reference << ',' << c.tol << ',' << (c.pass ? "PASS" : "FAIL");
    os << line.str() << '\n';
  }
}

// Runs every configuration of one table. Progress goes to `log` when set.
inline std::vector<Cell> reproduce(const ReproduceOptions& opt,
                                   std::ostream* log = nullptr) {
  const std::string& table = opt.table;
  if (table != "I" && table != "II" && table != "III" && table != "IV") {
    throw std::invalid_argument("unknown table '" + table + "' (use I, II, III, IV)");
  }
  if (opt.rows != "n1" && opt.rows != "all") {
    throw std::invalid_argument("--rows must be n1 or all");
  }
  if (opt.scale != "smoke" && opt.scale != "full") {
    throw std::invalid_argument("--scale must be smoke or full");
  }
  const bool full = opt.scale == "full";
  const int p = full ? kFullResolution : kSmokeResolution;
  const int iters = opt.rows == "n1" ? 1 : (full ? kFullIters : kSmokeIters);
  const ReferenceTable& ref = ReferenceTable::bundled();

  // Distinct configurations in file order.
  std::vector<ReferenceTable::Config> configs;
  for (const auto& r : ref.records()) {
    if (r.table != table) continue;
    if (std::find(configs.begin(), configs.end(), r.config) == configs.end()) {
      configs.push_back(r.config);
    }
  }

  std::vector<Cell> cells;
  // Table I first iterates do not depend on the weights; cache by start.
  std::map<std::string, double> first_upper_cache;

  for (const auto& cfg : configs) {
    const std::string cfg_text = detail::config_text(cfg);
    auto has = [&](const std::string& label) { return ref.contains(table, cfg_text, label); };
    auto refs = [&](const std::string& label) { return ref.lookup(table, cfg_text, label); };

    // Table I minimax rows: the balanced closed-form rule.
    if (table == "I" && !cfg.count("weights")) {
      const int N = detail::get_int(cfg, "n1");
      if (!full && N > kSmokeMaxN) continue;
      if (log) *log << "table I " << cfg_text << " balanced rule\n";
      const double value =
          max_regret_over_grid(balanced_minimax_rule(N),
                               ParameterGrid::unrestricted(p, 2),
                               ProblemSpec::two_arm(N, N), opt.threads)
              .value;
      const double minimax = refs("minimax").front();
      if (full) {
        cells.push_back(detail::make_cell(table, cfg_text, "minimax", value, minimax,
                                          kBalancedOracleTol));
      } else {
        // A subgrid cannot raise the rule's worst case above its value on
        // the continuum.
        cells.push_back(detail::make_cell(table, cfg_text, "minimax upper bound",
                                          value, minimax, 1e-8, true));
      }
      continue;
    }

    detail::Setup setup = detail::make_setup(table, cfg, p, iters, opt.threads);
    if (!full && setup.max_n > kSmokeMaxN) continue;

    if (table == "I" && opt.rows == "n1") {
      const std::string key = cfg_text.substr(0, cfg_text.find(",weights")) + "|" +
                              cfg.at("init");
      auto it = first_upper_cache.find(key);
      if (it == first_upper_cache.end()) {
        if (log) *log << "table I " << cfg_text << " first iterate\n";
        const double v = max_regret_over_grid(setup.solve.init_rule, setup.solve.grid,
                                              setup.solve.spec, opt.threads)
                             .value;
        it = first_upper_cache.emplace(key, v).first;
      }
      const double reference = refs("n=1").front();
      cells.push_back(full ? detail::make_cell(table, cfg_text, "n=1", it->second,
                                               reference, kTableIFirstTol)
                           : detail::make_cell(table, cfg_text, "n=1 subgrid", it->second,
                                               reference, kTableIFirstTol, true));
      continue;
    }

    if (log) *log << "table " << table << " " << cfg_text << " (" << iters << " iterations)\n";
    const SolveReport report = solve(setup.solve, setup.actions);

    // Properties checked at both scales.
    double sandwich = -std::numeric_limits<double>::infinity();
    double running_min = std::numeric_limits<double>::infinity();
    for (const auto& row : report.trace) {
      running_min = std::min(running_min, row.upper);
      sandwich = std::max(sandwich, row.lower - running_min);
    }
    cells.push_back(detail::make_cell(table, cfg_text, "lower<=min upper", sandwich,
                                      0.0, 1e-12, true));
    cells.push_back(detail::make_cell(table, cfg_text, "interval lower<=upper",
                                      report.interval_lower, report.interval_upper,
                                      1e-12, true));

    for (int n : detail::wanted_iters(opt.rows)) {
      const std::string label = "n=" + std::to_string(n);
      if (!has(label) || n > static_cast<int>(report.trace.size())) continue;
      const auto& row = report.trace[n - 1];
      const auto& values = refs(label);
      if (n == 1) {
        const double tol = table == "I" ? kTableIFirstTol : kFirstIterTol;
        if (full) {
          cells.push_back(detail::make_cell(table, cfg_text, label, row.upper,
                                            values[0], tol));
          if (detail::is_pair_table(table) && values.size() > 1) {
            cells.push_back(detail::make_cell(table, cfg_text, label + " gap",
                                              row.upper - row.lower, values[1], tol));
          }
        } else {
          // The smoke grid is a subgrid of the full one.
          cells.push_back(detail::make_cell(table, cfg_text, label + " subgrid",
                                            row.upper, values[0], tol, true));
        }
        continue;
      }
      if (!full) continue;
      const double tol = n >= 2000 ? kLateTol : kEarlyTol;
      cells.push_back(detail::make_cell(table, cfg_text, label, row.upper, values[0], tol));
      if (detail::is_pair_table(table) && values.size() > 1) {
        cells.push_back(detail::make_cell(table, cfg_text, label + " gap",
                                          row.upper - row.lower, values[1], tol));
      }
    }
    if (full && opt.rows == "all" && has("I_2000") && report.iterations_run >= kFullIters) {
      const auto& values = refs("I_2000");
      cells.push_back(detail::make_cell(table, cfg_text, "I_2000 lower",
                                        report.interval_lower, values[0], kLateTol));
      cells.push_back(detail::make_cell(table, cfg_text, "I_2000 upper",
                                        report.interval_upper, values[1], kLateTol));
    }
  }
  return cells;
}

}  // namespace mmr::cli

#endif  // MMR_TOOLS_REPRODUCE_HPP_
