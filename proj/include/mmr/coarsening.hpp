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

#ifndef MMR_COARSENING_HPP_
#define MMR_COARSENING_HPP_

// Lifting a binary-outcome rule to outcomes in [0,1]: each outcome y is
// replaced by an independent Bernoulli(y) draw and the rule is applied to
// the resulting success counts. The law of the coarsened sample depends on
// the outcome distribution only through its means.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "mmr/model.hpp"
#include "mmr/prob.hpp"

namespace mmr {

// Per-arm outcome sequences.
struct RealSample {
  std::vector<std::vector<double>> outcomes;

  int num_arms() const { return static_cast<int>(outcomes.size()); }
  std::vector<int> sizes() const {
    std::vector<int> out;
    for (const auto& arm : outcomes) out.push_back(static_cast<int>(arm.size()));
    return out;
  }
  void validate() const {
    for (const auto& arm : outcomes) {
      for (double y : arm) detail::check_probability(y, "outcome");
    }
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0,1) from (seed, arm, index), independent of call order.
inline double counter_uniform(std::uint64_t seed, std::uint64_t arm,
                              std::uint64_t index) {
  const std::uint64_t h =
      splitmix64(splitmix64(splitmix64(seed) ^ arm) ^ index);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Success counts after replacing every outcome by a Bernoulli draw.
inline std::vector<int> coarsen_sample(const RealSample& sample,
                                       std::uint64_t rng_seed) {
  sample.validate();
  std::vector<int> counts(sample.num_arms(), 0);
  for (int a = 0; a < sample.num_arms(); ++a) {
    const auto& arm = sample.outcomes[a];
    for (std::size_t i = 0; i < arm.size(); ++i) {
      counts[a] += detail::counter_uniform(rng_seed, a, i) < arm[i];
    }
  }
  return counts;
}

// Assignment probabilities of the coarsened rule given a real sample,
// summing the rule against the exact Poisson-binomial count laws.
inline std::vector<double> coarsened_assignment_exact(const TreatmentRule& rule,
                                                      const RealSample& sample) {
  sample.validate();
  if (rule.space().sizes() != sample.sizes()) {
    throw std::invalid_argument("rule and sample have different arm sizes");
  }
  std::vector<std::vector<double>> pmfs;
  for (const auto& arm : sample.outcomes) pmfs.push_back(poisson_binom_pmf(arm));
  return detail::expectation_from_pmfs(rule, pmfs);
}

// Outcome distribution per arm with a given mean: a point mass at the mean,
// or Beta(k mu, k (1 - mu)) with concentration k.
struct OutcomeLaw {
  enum class Kind { kPointMass, kBeta } kind = Kind::kPointMass;
  double concentration = 2.0;

  static OutcomeLaw point_mass() { return {Kind::kPointMass, 0.0}; }
  static OutcomeLaw beta(double concentration) {
    if (!(concentration > 0.0)) {
      throw std::invalid_argument("beta law needs a positive concentration");
    }
    return {Kind::kBeta, concentration};
  }

  template <typename Rng>
  double draw(double mu, Rng& rng) const {
    if (kind == Kind::kPointMass || mu == 0.0 || mu == 1.0) return mu;
    std::gamma_distribution<double> ga(concentration * mu, 1.0);
    std::gamma_distribution<double> gb(concentration * (1.0 - mu), 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return x + y > 0.0 ? x / (x + y) : mu;
  }
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Monte Carlo regret of the coarsened rule when outcomes follow `law` with
// means mu. Each replication draws a real sample, coarsens it and records
// the realized regret max_t mu_t - mu_{chosen}, averaged over the rule's
// randomization.
inline MonteCarloEstimate coarsened_regret_mc(const TreatmentRule& rule,
                                              const OutcomeLaw& law,
                                              const MeanVector& mu,
                                              const ProblemSpec& spec,
                                              int replications,
                                              std::uint64_t rng_seed) {
  if (replications < 2) throw std::invalid_argument("need >= 2 replications");
  check_rule_shape(rule, spec);
  detail::check_mean_vector(mu, spec);
  const auto sizes = spec.arm_sizes();
  const int T = spec.num_treatments;
  const double best = mu.max();

  // Neumaier sums of x and x^2.
  double sum = 0.0, comp = 0.0, sum2 = 0.0, comp2 = 0.0;
  auto add = [](double& s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  };

  RealSample sample;
  sample.outcomes.resize(sizes.size());
  for (int r = 0; r < replications; ++r) {
    std::mt19937_64 rng(detail::splitmix64(rng_seed ^ detail::splitmix64(r)));
    for (std::size_t a = 0; a < sizes.size(); ++a) {
      sample.outcomes[a].resize(sizes[a]);
      for (double& y : sample.outcomes[a]) y = law.draw(mu[a], rng);
    }
    const auto counts = coarsen_sample(sample, rng());
    const auto row = rule.row(rule.space().index(counts));
    double achieved = 0.0;
    for (int t = 0; t < T; ++t) achieved += row[t] * mu[t];
    const double loss = best - achieved;
    add(sum, comp, loss);
    add(sum2, comp2, loss * loss);
  }
  const double n = replications;
  const double mean = (sum + comp) / n;
  const double var = std::max(0.0, ((sum2 + comp2) - n * mean * mean) / (n - 1));
  return {mean, std::sqrt(var / n)};
}

}  // namespace mmr

#endif  // MMR_COARSENING_HPP_
