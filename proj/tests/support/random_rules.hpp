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

#ifndef MMR_TESTS_RANDOM_RULES_HPP_
#define MMR_TESTS_RANDOM_RULES_HPP_

// Random rules and mixtures for property tests.

#include <random>
#include <vector>

#include "mmr/mmr.hpp"

namespace fixtures {

inline mmr::TreatmentRule random_rule(const mmr::ProblemSpec& spec,
                                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  mmr::TreatmentRule rule = mmr::TreatmentRule::for_spec(spec);
  for (std::size_t w = 0; w < rule.num_samples(); ++w) {
    double total = 0.0;
    for (double& p : rule.row(w)) total += (p = u(rng) + 1e-3);
    for (double& p : rule.row(w)) p /= total;
  }
  return rule;
}

inline mmr::TreatmentRule random_pure_rule(const mmr::ProblemSpec& spec,
                                           std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, spec.num_treatments - 1);
  mmr::TreatmentRule rule = mmr::TreatmentRule::for_spec(spec);
  for (std::size_t w = 0; w < rule.num_samples(); ++w) rule.at(w, pick(rng)) = 1.0;
  return rule;
}

inline mmr::TreatmentRule random_symmetric_two_arm(int N1, int N2,
                                                   std::mt19937_64& rng) {
  mmr::TreatmentRule rule = random_rule(mmr::ProblemSpec::two_arm(N1, N2), rng);
  mmr::symmetrize_two_arm(rule);
  return rule;
}

inline mmr::TreatmentRule random_perm_symmetric(int nbar, int T, double mu_t,
                                                std::mt19937_64& rng) {
  mmr::TreatmentRule rule =
      random_rule(mmr::ProblemSpec::testing_innovations(T, nbar, mu_t), rng);
  mmr::symmetrize_innovations(rule);
  return rule;
}

inline mmr::NatureMixture random_mixture(int resolution, int dims, int atoms,
                                         std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coord(0, resolution);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  mmr::NatureMixture nu(resolution);
  for (int m = 0; m < atoms; ++m) {
    std::vector<int> key(dims);
    for (int& k : key) k = coord(rng);
    nu.add(key, u(rng));
  }
  nu.normalize();
  return nu;
}

}  // namespace fixtures

#endif  // MMR_TESTS_RANDOM_RULES_HPP_
