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

#ifndef MMR_ORACLES_HPP_
#define MMR_ORACLES_HPP_

// Closed-form minimax rules for two special cases, and the table of
// reference values used by the regression harness.

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mmr/model.hpp"

namespace mmr {

// Equal sample sizes: split evenly among the arms with the most successes.
inline TreatmentRule balanced_minimax_rule(int N, int T = 2) {
  if (N < 0) throw std::invalid_argument("balanced rule: N must be >= 0");
  const ProblemSpec spec =
      ProblemSpec::fixed_assignment(std::vector<int>(T, N));
  TreatmentRule rule = TreatmentRule::for_spec(spec);
  for (std::size_t w = 0; w < rule.num_samples(); ++w) {
    const auto counts = rule.space().counts(w);
    const int top = *std::max_element(counts.begin(), counts.end());
    const int winners =
        static_cast<int>(std::count(counts.begin(), counts.end(), top));
    for (int t = 0; t < T; ++t) {
      rule.at(w, t) = counts[t] == top ? 1.0 / winners : 0.0;
    }
  }
  return rule;
}

// Arm 1 unobserved: delta_2(0, n_2) = n_2 / N_2.
inline TreatmentRule n1_zero_rule(int N2) {
  if (N2 < 1) throw std::invalid_argument("n1_zero_rule: N2 must be >= 1");
  TreatmentRule rule = TreatmentRule::for_spec(ProblemSpec::two_arm(0, N2));
  for (int n2 = 0; n2 <= N2; ++n2) {
    const double d = static_cast<double>(n2) / N2;
    rule.at(n2, 1) = d;
    rule.at(n2, 0) = 1.0 - d;
  }
  return rule;
}

// Records "table | k=v,k=v | label | values". Config pairs are matched
// regardless of order.
class ReferenceTable {
 public:
  using Config = std::map<std::string, std::string>;

  struct Record {
    std::string table;
    Config config;
    std::string label;
    std::vector<double> values;
  };

  static Config parse_config(const std::string& text) {
    Config out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("reference config item without '=': " + item);
      }
      out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
    return out;
  }

  static ReferenceTable parse(std::istream& in) {
    ReferenceTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string f;
      while (std::getline(ss, f, '|')) fields.push_back(trim(f));
      if (fields.size() != 4) {
        throw std::runtime_error("reference data line " + std::to_string(lineno) +
                                 ": expected 4 fields");
      }
      Record rec{fields[0], parse_config(fields[1]), fields[2], {}};
      std::stringstream vs(fields[3]);
      double v;
      while (vs >> v) rec.values.push_back(v);
      if (rec.values.empty() || !vs.eof()) {
        throw std::runtime_error("reference data line " + std::to_string(lineno) +
                                 ": bad values");
      }
      const auto key = std::make_tuple(rec.table, rec.config, rec.label);
      if (table.index_.count(key)) {
        throw std::runtime_error("reference data line " + std::to_string(lineno) +
                                 ": duplicate key");
      }
      table.index_[key] = table.records_.size();
      table.records_.push_back(std::move(rec));
    }
    return table;
  }

  static ReferenceTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open reference data " + path);
    return parse(in);
  }

#ifdef MMR_REFERENCE_DATA
  static const ReferenceTable& bundled() {
    static const ReferenceTable table = load(MMR_REFERENCE_DATA);
    return table;
  }
#endif

  const std::vector<Record>& records() const { return records_; }

  bool contains(const std::string& table, const std::string& config,
                const std::string& label) const {
    return index_.count({table, parse_config(config), label}) > 0;
  }

  const std::vector<double>& lookup(const std::string& table,
                                    const std::string& config,
                                    const std::string& label) const {
    const auto it = index_.find({table, parse_config(config), label});
    if (it == index_.end()) {
      throw std::out_of_range("no reference value for " + table + " | " +
                              config + " | " + label);
    }
    return records_[it->second].values;
  }

  double value(const std::string& table, const std::string& config,
               const std::string& label) const {
    return lookup(table, config, label).front();
  }

 private:
  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::vector<Record> records_;
  std::map<std::tuple<std::string, Config, std::string>, std::size_t> index_;
};

}  // namespace mmr

#endif  // MMR_ORACLES_HPP_
