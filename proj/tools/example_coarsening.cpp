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

// Applies a binary-outcome rule to a sample with outcomes in [0, 1].

#include <cstdio>

#include "mmr/mmr.hpp"

int main() {
  const mmr::TreatmentRule rule = mmr::balanced_minimax_rule(4);
  mmr::RealSample sample;
  sample.outcomes = {{0.2, 0.9, 0.4, 0.7}, {0.6, 0.65, 0.3, 0.8}};

  const auto exact = mmr::coarsened_assignment_exact(rule, sample);
  std::printf("exact assignment: (%.6f, %.6f)\n", exact[0], exact[1]);

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto counts = mmr::coarsen_sample(sample, seed);
    const auto row = rule.row(rule.space().index(counts));
    std::printf("seed %llu: counts (%d, %d) -> (%.2f, %.2f)\n",
                static_cast<unsigned long long>(seed), counts[0], counts[1],
                row[0], row[1]);
  }

  const mmr::ProblemSpec spec = mmr::ProblemSpec::two_arm(4, 4);
  const mmr::MeanVector mu{{0.4, 0.6}};
  const auto mc = mmr::coarsened_regret_mc(
      rule, mmr::OutcomeLaw::beta(3.0), mu, spec, 20000, 7);
  std::printf("coarsened regret at %s: %.5f +- %.5f, binary model %.5f\n",
              mmr::to_string(mu).c_str(), mc.estimate, mc.std_error,
              mmr::regret(rule, mu, spec));
  return 0;
}
