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

// Solves the balanced (5, 5) problem over symmetric rules on a coarse grid
// and prints the bracket every 100 iterations.

#include <cstdio>

#include "mmr/mmr.hpp"

int main() {
  mmr::SolveConfig config;
  config.spec = mmr::ProblemSpec::two_arm(5, 5);
  config.grid = mmr::ParameterGrid::unrestricted(200, 2);
  config.weights = mmr::WeightSchedule::leslie_collins(5.0, 0.7);
  config.max_iters = 500;
  config.init_rule = mmr::es_rule(5, 5);

  const auto report = mmr::solve_symmetric(config, [](const mmr::TraceRow& row) {
    if (row.iter % 100 == 0) {
      std::printf("n=%4d  upper=%.7f  lower=%.7f  bracket=[%.7f, %.7f]\n",
                  row.iter, row.upper, row.lower, row.bracket_lower,
                  row.bracket_upper);
    }
  });

  const double closed_form =
      mmr::max_regret_over_grid(mmr::balanced_minimax_rule(5), config.grid,
                                config.spec)
          .value;
  std::printf("best upper %.7f at n=%d, closed-form rule %.7f\n",
              report.best_upper, report.best_iter, closed_form);
  return 0;
}
