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

#ifndef MMR_FICTITIOUS_PLAY_HPP_
#define MMR_FICTITIOUS_PLAY_HPP_

// Fictitious play between the policymaker and nature on the discretized
// game. Each iteration n:
//
//   i)   nature best-responds to delta^n by grid search (upper_n);
//   ii)  stop if upper_n - lower_{n-1} is below the threshold(s);
//   iii) nu^n = (1 - a_n) nu^{n-1} + a_n I(mu_BR^n);
//   iv)  the policymaker best-responds to nu^n (lower_n = R(delta_BR, nu^n));
//   v)   delta^{n+1} = (1 - a_{n+1}) delta^n + a_{n+1} delta_BR^n.
//
// [max lower_n, min upper_n] brackets the value of the discretized game and
// the rule with the smallest upper_n is kept.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mmr/best_response.hpp"
#include "mmr/grid_scan.hpp"
#include "mmr/model.hpp"

namespace mmr {

enum class ScheduleKind { kRobinson, kLeslieCollins, kLogDamped };

// Step sizes a_n: 1/n, (C + n)^-eta, or 1 / log(C + n).
struct WeightSchedule {
  ScheduleKind kind = ScheduleKind::kLeslieCollins;
  double C = 5.0;
  double eta = 0.7;

  static WeightSchedule robinson() { return {ScheduleKind::kRobinson, 0.0, 1.0}; }
  static WeightSchedule leslie_collins(double C, double eta) {
    WeightSchedule s{ScheduleKind::kLeslieCollins, C, eta};
    s.validate();
    return s;
  }
  static WeightSchedule log_damped(double C) {
    WeightSchedule s{ScheduleKind::kLogDamped, C, 1.0};
    s.validate();
    return s;
  }

  void validate() const {
    switch (kind) {
      case ScheduleKind::kRobinson:
        break;
      case ScheduleKind::kLeslieCollins:
        if (!(C >= 0.0)) throw std::invalid_argument("schedule: C must be >= 0");
        if (!(eta > 0.0 && eta <= 1.0)) {
          throw std::invalid_argument("schedule: eta must be in (0,1]");
        }
        break;
      case ScheduleKind::kLogDamped:
        // a_1 = 1/log(C+1) <= 1 needs C >= e - 1.
        if (!(C >= std::exp(1.0) - 1.0)) {
          throw std::invalid_argument("schedule: log damping needs C >= e-1");
        }
        break;
    }
  }
};

inline double weight(int n, const WeightSchedule& s) {
  if (n < 1) throw std::invalid_argument("weight: n must be >= 1");
  switch (s.kind) {
    case ScheduleKind::kRobinson:
      return 1.0 / n;
    case ScheduleKind::kLeslieCollins:
      return std::pow(s.C + n, -s.eta);
    case ScheduleKind::kLogDamped:
      return 1.0 / std::log(s.C + n);
  }
  return 0.0;
}

inline std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::kRobinson:
      return "robinson";
    case ScheduleKind::kLeslieCollins:
      return "leslie-collins";
    case ScheduleKind::kLogDamped:
      return "log-damped";
  }
  return "?";
}

struct SolveConfig {
  ProblemSpec spec;
  ParameterGrid grid = ParameterGrid::unrestricted(1000, 2);
  WeightSchedule weights;
  int max_iters = 2000;
  // Absolute stopping threshold; 0 disables the absolute test.
  double xi = 0.0;
  std::optional<double> xi_relative;
  TreatmentRule init_rule;
  // Only used by Monte Carlo evaluation; the engine is deterministic.
  std::uint64_t rng_seed = 0;
  int threads = 1;

  void validate() const {
    spec.validate();
    weights.validate();
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(xi >= 0.0)) throw std::invalid_argument("xi must be >= 0");
    if (xi_relative && !(*xi_relative >= 0.0)) {
      throw std::invalid_argument("xi_relative must be >= 0");
    }
    check_rule_shape(init_rule, spec);
    init_rule.validate(1e-10);
  }
};

struct TraceRow {
  int iter = 0;
  double upper = 0.0;  // R(delta^n, mu_BR^n)
  double lower = 0.0;  // R^n
  std::size_t support_size = 0;
  double alpha = 0.0;
  // Running bracket [max_{k<=n} lower_k, min_{k<=n} upper_k].
  double bracket_lower = 0.0;
  double bracket_upper = 0.0;
};

enum class StopReason { kThreshold, kMaxIters };

inline std::string to_string(StopReason r) {
  return r == StopReason::kThreshold ? "threshold" : "max_iters";
}

struct SolveReport {
  std::vector<TraceRow> trace;
  TreatmentRule best_rule;
  double best_upper = std::numeric_limits<double>::infinity();
  int best_iter = 0;
  double interval_lower = 0.0;
  double interval_upper = std::numeric_limits<double>::infinity();
  // Nature's mixture over canonical keys (pairs or orbits when the action
  // set folds symmetric points together).
  NatureMixture final_mixture;
  TreatmentRule final_rule;
  int iterations_run = 0;
  StopReason stop_reason = StopReason::kMaxIters;

  double interval_width() const { return interval_upper - interval_lower; }
};

// How nature's pure actions are folded under a symmetry of the rules. The
// default is the identity: every grid point is its own action.
struct NatureActionSet {
  ScanRegion region = ScanRegion::kFull;
  TiePolicy tie_policy = TiePolicy::kSplitEqually;
  // Canonical key of the action containing a grid point.
  std::function<NatureMixture::Key(const NatureMixture::Key&)> canonical;
  // Grid points of an action with their share of its weight.
  std::function<std::vector<std::pair<NatureMixture::Key, double>>(
      const NatureMixture::Key&)>
      expand;
  // Projection of a policymaker response onto the symmetric rule class.
  std::function<void(TreatmentRule&)> symmetrize;
};

// Expands a mixture over canonical keys into one over grid points.
inline NatureMixture expand_mixture(const NatureMixture& folded,
                                    const NatureActionSet& actions) {
  if (!actions.expand) return folded;
  NatureMixture out(folded.resolution());
  for (const auto& [key, weight] : folded.atoms()) {
    for (const auto& [point, share] : actions.expand(key)) {
      out.add(point, weight * share);
    }
  }
  return out;
}

// Observer called after each completed iteration.
using IterationCallback = std::function<void(const TraceRow&)>;

inline SolveReport solve(const SolveConfig& config,
                         const NatureActionSet& actions = {},
                         const IterationCallback& on_iteration = {}) {
  config.validate();
  const int p = config.grid.resolution();
  auto bank = std::make_shared<const PmfBank>(config.spec, p);
  const GridScanner scanner(config.spec, config.grid, config.threads, bank);
  const BayesResponder responder(config.spec, p, config.threads, bank);

  SolveReport report;
  report.final_mixture = NatureMixture(p);
  TreatmentRule rule = config.init_rule;
  NatureMixture& nu = report.final_mixture;
  double lower_prev = 0.0;
  double bracket_lower = -std::numeric_limits<double>::infinity();

  for (int n = 1; n <= config.max_iters; ++n) {
    const GridMax br = scanner.maximize(rule, actions.region);
    const double upper = br.value;
    if (upper < report.best_upper) {
      report.best_upper = upper;
      report.best_iter = n;
      report.best_rule = rule;
    }
    report.iterations_run = n;

    const double gap = upper - lower_prev;
    const bool abs_active = config.xi > 0.0;
    const bool rel_active = config.xi_relative.has_value();
    if (n > 1 && (abs_active || rel_active)) {
      const bool abs_ok = !abs_active || gap < config.xi;
      const bool rel_ok = !rel_active ||
                          (lower_prev > 0.0 && gap / lower_prev < *config.xi_relative);
      if (abs_ok && rel_ok) {
        TraceRow row{n, upper, lower_prev, nu.size(), 0.0,
                     bracket_lower, report.best_upper};
        report.trace.push_back(row);
        report.stop_reason = StopReason::kThreshold;
        if (on_iteration) on_iteration(row);
        break;
      }
    }

    const double alpha = weight(n, config.weights);
    nu.mix_in(actions.canonical ? actions.canonical(br.coords) : br.coords,
              alpha);

    const NatureMixture plain = expand_mixture(nu, actions);
    const BayesScores scores = responder.scores(plain);
    TreatmentRule response = responder.respond(scores, actions.tie_policy);
    if (actions.symmetrize) actions.symmetrize(response);
    const double lower = responder.mixture_regret(response, scores);
    lower_prev = lower;
    bracket_lower = std::max(bracket_lower, lower);

    TraceRow row{n, upper, lower, nu.size(), alpha, bracket_lower,
                 report.best_upper};
    report.trace.push_back(row);
    if (on_iteration) on_iteration(row);

    rule.blend(weight(n + 1, config.weights), response);
  }

  report.interval_lower = std::max(0.0, bracket_lower);
  report.interval_upper = report.best_upper;
  report.final_rule = std::move(rule);
  return report;
}

}  // namespace mmr

#endif  // MMR_FICTITIOUS_PLAY_HPP_
