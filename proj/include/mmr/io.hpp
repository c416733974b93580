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

#ifndef MMR_IO_HPP_
#define MMR_IO_HPP_

// Serialization of rules, traces and solve reports.
//
// Two-treatment rules are written as a CSV matrix with one row per n_1 and
// one column per n_2 holding delta_2(n_1, n_2). Rules with any number of
// treatments are written as JSON: {"num_treatments", "sizes", "rows"} where
// each row is {"sample": [n_1, ...], "probs": [delta_1, ...]}.

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mmr/fictitious_play.hpp"
#include "mmr/model.hpp"

namespace mmr {

inline constexpr int kRuleCsvPrecision = 6;

inline void write_rule_csv(std::ostream& os, const TreatmentRule& rule,
                           int precision = kRuleCsvPrecision) {
  const auto& sizes = rule.space().sizes();
  if (rule.num_treatments() != 2 || sizes.size() != 2) {
    throw std::invalid_argument("CSV export needs a two-arm, two-treatment rule");
  }
  std::ostringstream line;
  line << std::fixed << std::setprecision(precision);
  for (int n1 = 0; n1 <= sizes[0]; ++n1) {
    line.str("");
    for (int n2 = 0; n2 <= sizes[1]; ++n2) {
      if (n2) line << ',';
      const int c[2] = {n1, n2};
      line << rule.at(c, 1);
    }
    os << line.str() << '\n';
  }
}

inline TreatmentRule read_rule_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("rule CSV: bad cell '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("rule CSV: bad cell '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("rule CSV: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("rule CSV: empty");
  const int N1 = static_cast<int>(rows.size()) - 1;
  const int N2 = static_cast<int>(rows.front().size()) - 1;
  TreatmentRule rule = TreatmentRule::for_spec(ProblemSpec::two_arm(N1, N2));
  for (int n1 = 0; n1 <= N1; ++n1) {
    for (int n2 = 0; n2 <= N2; ++n2) {
      const int c[2] = {n1, n2};
      const std::size_t w = rule.space().index(c);
      rule.at(w, 1) = rows[n1][n2];
      rule.at(w, 0) = 1.0 - rows[n1][n2];
    }
  }
  rule.validate(1e-9);
  return rule;
}

inline nlohmann::json rule_to_json(const TreatmentRule& rule) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t w = 0; w < rule.num_samples(); ++w) {
    const auto r = rule.row(w);
    rows.push_back({{"sample", rule.space().counts(w)},
                    {"probs", std::vector<double>(r.begin(), r.end())}});
  }
  return {{"num_treatments", rule.num_treatments()},
          {"sizes", rule.space().sizes()},
          {"rows", rows}};
}

inline TreatmentRule rule_from_json(const nlohmann::json& j) {
  try {
    const int T = j.at("num_treatments").get<int>();
    const auto sizes = j.at("sizes").get<std::vector<int>>();
    TreatmentRule rule(SampleSpace(sizes), T);
    std::vector<char> seen(rule.num_samples(), 0);
    for (const auto& row : j.at("rows")) {
      const auto sample = row.at("sample").get<std::vector<int>>();
      const auto probs = row.at("probs").get<std::vector<double>>();
      if (static_cast<int>(probs.size()) != T) {
        throw std::invalid_argument("rule JSON: wrong probability length");
      }
      const std::size_t w = rule.space().index(sample);
      seen[w] = 1;
      for (int t = 0; t < T; ++t) rule.at(w, t) = probs[t];
    }
    for (char s : seen) {
      if (!s) throw std::invalid_argument("rule JSON: missing samples");
    }
    rule.validate(1e-9);
    return rule;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("rule JSON: ") + e.what());
  }
}

inline void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace) {
  std::ostringstream line;
  line << std::setprecision(10);
  os << "iter,upper,lower,support_size,alpha\n";
  for (const auto& r : trace) {
    line.str("");
    line << r.iter << ',' << r.upper << ',' << r.lower << ',' << r.support_size
         << ',' << r.alpha;
    os << line.str() << '\n';
  }
}

inline nlohmann::json report_to_json(const SolveReport& report) {
  nlohmann::json j;
  j["best_upper"] = report.best_upper;
  j["best_iter"] = report.best_iter;
  j["interval"] = {report.interval_lower, report.interval_upper};
  j["interval_width"] = report.interval_width();
  j["iterations"] = report.iterations_run;
  j["stop_reason"] = to_string(report.stop_reason);
  j["support_size"] = report.final_mixture.size();
  if (!report.trace.empty()) {
    j["first_upper"] = report.trace.front().upper;
    j["last_upper"] = report.trace.back().upper;
    j["last_lower"] = report.trace.back().lower;
  }
  return j;
}

}  // namespace mmr

#endif  // MMR_IO_HPP_
