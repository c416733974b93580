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

#ifndef MMR_TWO_ARM_HPP_
#define MMR_TWO_ARM_HPP_

// Two treatments with samples of sizes (N_1, N_2). A rule is symmetric when
// delta_2(n_1, n_2) + delta_2(N_1 - n_1, N_2 - n_2) = 1. Against symmetric
// rules R(delta, mu) = R(delta, (1,1) - mu), so nature can be restricted to
// even mixtures over mirror pairs and the scan to mu_1 <= 1/2.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mmr/fictitious_play.hpp"
#include "mmr/model.hpp"

namespace mmr {

enum class EsVariant {
  // Higher success rate wins; equal rates go to 2 above 1/2, to 1 below
  // 1/2, and split at exactly 1/2.
  kSymmetric,
  // As kSymmetric but equal rates go to 1 above 1/2 and to 2 below 1/2.
  kSymmetricSwappedTies,
  // Treatment 2 whenever n_1/N_1 <= n_2/N_2.
  kTiesToTwo,
};

namespace detail {

inline void check_two_arm_sizes(int N1, int N2) {
  if (N1 < 0 || N2 < 0) throw std::invalid_argument("sample sizes must be >= 0");
  if (N1 == 0 && N2 == 0) {
    throw std::invalid_argument("two-arm rule needs at least one observation");
  }
}

// Sign of n/N - m/M without division. An empty arm has rate 1/2.
inline int compare_rates(int n, int N, int m, int M) {
  const long long a = N == 0 ? 1 : 2LL * n;
  const long long da = N == 0 ? 2 : 2LL * N;
  const long long b = M == 0 ? 1 : 2LL * m;
  const long long db = M == 0 ? 2 : 2LL * M;
  const long long lhs = a * db;
  const long long rhs = b * da;
  return (lhs > rhs) - (lhs < rhs);
}

inline TreatmentRule rule_from_delta2(int N1, int N2, auto&& delta2) {
  TreatmentRule rule = TreatmentRule::for_spec(ProblemSpec::two_arm(N1, N2));
  const SampleSpace& space = rule.space();
  for (int n1 = 0; n1 <= N1; ++n1) {
    for (int n2 = 0; n2 <= N2; ++n2) {
      const int c[2] = {n1, n2};
      const std::size_t w = space.index(c);
      const double d = delta2(n1, n2);
      rule.at(w, 0) = 1.0 - d;
      rule.at(w, 1) = d;
    }
  }
  return rule;
}

}  // namespace detail

inline TreatmentRule es_rule(int N1, int N2,
                             EsVariant variant = EsVariant::kSymmetric) {
  detail::check_two_arm_sizes(N1, N2);
  return detail::rule_from_delta2(N1, N2, [&](int n1, int n2) {
    const int cmp = detail::compare_rates(n1, N1, n2, N2);
    if (variant == EsVariant::kTiesToTwo) return cmp <= 0 ? 1.0 : 0.0;
    if (cmp < 0) return 1.0;
    if (cmp > 0) return 0.0;
    // Equal rates; compare the common rate with 1/2.
    const int half = detail::compare_rates(n1, N1, 1, 2);
    if (variant == EsVariant::kSymmetricSwappedTies) {
      return half > 0 ? 0.0 : half < 0 ? 1.0 : 0.5;
    }
    return half > 0 ? 1.0 : half < 0 ? 0.0 : 0.5;
  });
}

// A deliberately poor symmetric rule: treatment 2 whenever arm 1's rate is
// below 1/2, with arm 2's rate deciding when arm 1's is exactly 1/2.
inline TreatmentRule so_rule(int N1, int N2) {
  detail::check_two_arm_sizes(N1, N2);
  return detail::rule_from_delta2(N1, N2, [&](int n1, int n2) {
    const int r1 = detail::compare_rates(n1, N1, 1, 2);
    if (r1 < 0) return 1.0;
    if (r1 > 0) return 0.0;
    const int r2 = detail::compare_rates(n2, N2, 1, 2);
    return r2 < 0 ? 1.0 : r2 > 0 ? 0.0 : 0.5;
  });
}

// max over samples of |delta_2(w) + delta_2(w') - 1|, w' the complement.
inline double check_symmetry(const TreatmentRule& rule) {
  if (rule.num_treatments() != 2 || rule.space().num_arms() != 2) {
    throw std::invalid_argument("check_symmetry: not a two-arm rule");
  }
  double worst = 0.0;
  const SampleSpace& space = rule.space();
  for (std::size_t w = 0; w < space.size(); ++w) {
    worst = std::max(
        worst, std::abs(rule.at(w, 1) + rule.at(space.complement(w), 1) - 1.0));
  }
  return worst;
}

inline double check_symmetry(const TreatmentRule& rule, int N1, int N2) {
  check_rule_shape(rule, ProblemSpec::two_arm(N1, N2));
  return check_symmetry(rule);
}

// delta_2(w) <- (delta_2(w) + 1 - delta_2(w')) / 2.
inline void symmetrize_two_arm(TreatmentRule& rule) {
  const SampleSpace& space = rule.space();
  for (std::size_t w = 0; w < space.size(); ++w) {
    const std::size_t m = space.complement(w);
    if (m < w) continue;
    const double d = 0.5 * (rule.at(w, 1) + 1.0 - rule.at(m, 1));
    rule.at(w, 1) = d;
    rule.at(w, 0) = 1.0 - d;
    rule.at(m, 1) = 1.0 - d;
    rule.at(m, 0) = d;
  }
}

inline NatureMixture::Key mirror_key(const NatureMixture::Key& key,
                                     int resolution) {
  NatureMixture::Key m(key.size());
  for (std::size_t k = 0; k < key.size(); ++k) m[k] = resolution - key[k];
  return m;
}

// Nature's actions are the even mixtures over {mu, (1,1) - mu}, keyed by the
// lexicographically smaller point.
inline NatureActionSet mirror_pair_actions(int resolution) {
  NatureActionSet actions;
  actions.region = ScanRegion::kMirrorHalf;
  actions.tie_policy = TiePolicy::kCenterHalf;
  actions.canonical = [resolution](const NatureMixture::Key& key) {
    return std::min(key, mirror_key(key, resolution));
  };
  actions.expand = [resolution](const NatureMixture::Key& key) {
    std::vector<std::pair<NatureMixture::Key, double>> out;
    out.emplace_back(key, 0.5);
    out.emplace_back(mirror_key(key, resolution), 0.5);
    return out;
  };
  actions.symmetrize = symmetrize_two_arm;
  return actions;
}

inline SolveReport solve_symmetric(const SolveConfig& config,
                                   const IterationCallback& on_iteration = {}) {
  if (config.spec.innovations() || config.spec.num_treatments != 2) {
    throw std::invalid_argument("symmetric solve needs two sampled treatments");
  }
  if (!config.grid.mirror_closed()) {
    throw std::invalid_argument(
        "symmetric solve needs a grid closed under mu -> (1,1) - mu");
  }
  check_rule_shape(config.init_rule, config.spec);
  if (check_symmetry(config.init_rule) > 1e-10) {
    throw std::invalid_argument("symmetric solve needs a symmetric initial rule");
  }
  return solve(config, mirror_pair_actions(config.grid.resolution()),
               on_iteration);
}

}  // namespace mmr

#endif  // MMR_TWO_ARM_HPP_
