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

#ifndef MMR_INNOVATIONS_HPP_
#define MMR_INNOVATIONS_HPP_

// Testing innovations: T-1 new treatments, each sampled Nbar times, against
// a status quo with known mean mu_T. Relabeling the innovations permutes a
// symmetric rule's assignment probabilities, so nature can mix uniformly
// over coordinate permutations and the scan can be limited to sorted points.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mmr/fictitious_play.hpp"
#include "mmr/model.hpp"

namespace mmr {

namespace detail {

// Every permutation of 0..k-1 in lexicographic order.
inline std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

inline void check_innovations_rule(const TreatmentRule& rule) {
  if (rule.space().num_arms() != rule.num_treatments() - 1) {
    throw std::invalid_argument("rule is not shaped for testing innovations");
  }
  const auto& sizes = rule.space().sizes();
  if (std::adjacent_find(sizes.begin(), sizes.end(), std::not_equal_to<>()) !=
      sizes.end()) {
    throw std::invalid_argument("innovations need a common sample size");
  }
}

}  // namespace detail

// Splits evenly over the treatments with the highest observed rate, the
// status quo counting with rate mu_T.
inline TreatmentRule es_rule_innovations(int nbar, int T, double mu_t) {
  if (nbar < 1) throw std::invalid_argument("innovations: Nbar must be >= 1");
  const ProblemSpec spec = ProblemSpec::testing_innovations(T, nbar, mu_t);
  TreatmentRule rule = TreatmentRule::for_spec(spec);
  const SampleSpace& space = rule.space();
  constexpr double kRateTol = 1e-12;
  std::vector<double> rate(T);
  for (std::size_t w = 0; w < space.size(); ++w) {
    const auto counts = space.counts(w);
    for (int t = 0; t < T - 1; ++t) {
      rate[t] = static_cast<double>(counts[t]) / nbar;
    }
    rate[T - 1] = mu_t;
    const double top = *std::max_element(rate.begin(), rate.end());
    int winners = 0;
    for (double r : rate) winners += r >= top - kRateTol;
    for (int t = 0; t < T; ++t) {
      rule.at(w, t) = rate[t] >= top - kRateTol ? 1.0 / winners : 0.0;
    }
  }
  return rule;
}

// max over samples w, permutations sigma and treatments t of
// |delta_t(w) - delta_{sigma(t)}(sigma w)| where (sigma w)_k = w_{sigma(k)};
// the status quo is fixed by every sigma.
inline double check_perm_symmetry(const TreatmentRule& rule) {
  detail::check_innovations_rule(rule);
  const int T = rule.num_treatments();
  const int k = T - 1;
  const SampleSpace& space = rule.space();
  double worst = 0.0;
  std::vector<int> moved(k);
  for (const auto& sigma : detail::all_permutations(k)) {
    for (std::size_t w = 0; w < space.size(); ++w) {
      const auto counts = space.counts(w);
      for (int j = 0; j < k; ++j) moved[j] = counts[sigma[j]];
      const std::size_t v = space.index(moved);
      for (int j = 0; j < k; ++j) {
        worst = std::max(worst, std::abs(rule.at(v, j) - rule.at(w, sigma[j])));
      }
      worst = std::max(worst, std::abs(rule.at(v, k) - rule.at(w, k)));
    }
  }
  return worst;
}

inline double check_perm_symmetry(const TreatmentRule& rule, int nbar, int T) {
  if (rule.num_treatments() != T ||
      rule.space().sizes() != std::vector<int>(T - 1, nbar)) {
    throw std::invalid_argument("rule is not shaped for (Nbar, T)");
  }
  return check_perm_symmetry(rule);
}

// Replaces the rule by its average over all relabelings of the innovations.
inline void symmetrize_innovations(TreatmentRule& rule) {
  detail::check_innovations_rule(rule);
  const int T = rule.num_treatments();
  const int k = T - 1;
  if (k < 2) return;
  const auto perms = detail::all_permutations(k);
  const double share = 1.0 / perms.size();
  const SampleSpace& space = rule.space();
  TreatmentRule out(space, T);
  std::vector<int> moved(k);
  for (std::size_t w = 0; w < space.size(); ++w) {
    const auto counts = space.counts(w);
    for (const auto& sigma : perms) {
      for (int j = 0; j < k; ++j) moved[j] = counts[sigma[j]];
      const std::size_t v = space.index(moved);
      for (int j = 0; j < k; ++j) out.at(w, sigma[j]) += share * rule.at(v, j);
      out.at(w, k) += share * rule.at(v, k);
    }
  }
  rule = std::move(out);
}

// Nature's actions are uniform mixtures over coordinate permutations, keyed
// by the sorted representative. With distinct_only the scan skips points
// with repeated coordinates.
inline NatureActionSet orbit_actions(bool distinct_only = false) {
  NatureActionSet actions;
  actions.region =
      distinct_only ? ScanRegion::kStrictlySorted : ScanRegion::kSorted;
  actions.tie_policy = TiePolicy::kSplitEqually;
  actions.canonical = [](const NatureMixture::Key& key) {
    NatureMixture::Key sorted = key;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  };
  actions.expand = [](const NatureMixture::Key& key) {
    NatureMixture::Key perm = key;
    std::sort(perm.begin(), perm.end());
    std::vector<NatureMixture::Key> distinct;
    do {
      distinct.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<std::pair<NatureMixture::Key, double>> out;
    const double share = 1.0 / distinct.size();
    for (auto& d : distinct) out.emplace_back(std::move(d), share);
    return out;
  };
  actions.symmetrize = symmetrize_innovations;
  return actions;
}

// Falls back to the plain engine on restricted grids, where permutations of
// a grid point need not be admissible.
inline SolveReport solve_innovations(const SolveConfig& config,
                                     const IterationCallback& on_iteration = {},
                                     bool distinct_only = false) {
  if (!config.spec.innovations()) {
    throw std::invalid_argument("innovations solve needs the innovations design");
  }
  if (config.grid.restricted()) return solve(config, {}, on_iteration);
  check_rule_shape(config.init_rule, config.spec);
  if (check_perm_symmetry(config.init_rule) > 1e-10) {
    throw std::invalid_argument(
        "innovations solve needs a permutation-symmetric initial rule");
  }
  return solve(config, orbit_actions(distinct_only), on_iteration);
}

}  // namespace mmr

#endif  // MMR_INNOVATIONS_HPP_
