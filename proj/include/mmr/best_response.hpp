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

#ifndef MMR_BEST_RESPONSE_HPP_
#define MMR_BEST_RESPONSE_HPP_

// Best responses of both players.
//
// Nature best-responds by grid search. The policymaker best-responds to a
// mixture nu = sum_m p_m I(mu_m) sample by sample: the posterior mean of
// treatment t given w is proportional to
//
//   S_t(w) = sum_m mu_tm L(w | mu_m) p_m,
//
// so any rule that puts all mass on argmax_t S_t(w) minimizes R(., nu).
// Scores are compared unnormalized; samples whose evidence underflows are
// rescored in log space.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mmr/grid_scan.hpp"
#include "mmr/model.hpp"
#include "mmr/parallel.hpp"
#include "mmr/prob.hpp"

namespace mmr {

// Scores within kTieTol * P(w) of the best are treated as tied.
inline constexpr double kTieTol = 1e-12;

// Evidence below this is recomputed in log space.
inline constexpr double kRescoreThreshold = 1e-250;

enum class TiePolicy {
  kSplitEqually,
  // Two treatments only: additionally fix delta_2 = 1/2 at the center
  // sample (N_1/2, N_2/2) when both sizes are even.
  kCenterHalf,
};

struct BayesScores {
  int num_treatments = 2;
  // S_t(w), row-major by sample.
  std::vector<double> scores;
  // P(w) = sum_m L(w | mu_m) p_m.
  std::vector<double> evidence;
  // Scores used for the argmax. Equal to `scores` up to a positive
  // per-sample factor; differs only where the evidence underflowed.
  std::vector<double> decision_scores;
  std::vector<double> decision_evidence;
  // sum_m p_m max_t mu_tm.
  double prior_best = 0.0;
};

class BayesResponder {
 public:
  BayesResponder(ProblemSpec spec, int resolution, int threads = 1,
                 std::shared_ptr<const PmfBank> bank = nullptr)
      : spec_(std::move(spec)),
        space_(spec_.arm_sizes()),
        threads_(threads),
        bank_(bank ? std::move(bank)
                   : std::make_shared<const PmfBank>(spec_, resolution)) {
    if (bank_->resolution() != resolution) {
      throw std::invalid_argument("pmf bank resolution mismatch");
    }
  }

  const ProblemSpec& spec() const { return spec_; }

  BayesScores scores(const NatureMixture& nu) const {
    if (nu.empty()) throw std::invalid_argument("best response: empty mixture");
    if (nu.resolution() != bank_->resolution()) {
      throw std::invalid_argument("best response: mixture resolution mismatch");
    }
    const int T = spec_.num_treatments;
    const int arms = spec_.num_arms();
    const std::size_t W = space_.size();

    struct Atom {
      const std::vector<int>* coords;
      double weight;
      MeanVector mu;
    };
    std::vector<Atom> atoms;
    atoms.reserve(nu.size());
    BayesScores out;
    out.num_treatments = T;
    for (const auto& [key, weight] : nu.atoms()) {
      if (static_cast<int>(key.size()) != arms) {
        throw std::invalid_argument("best response: atom has wrong dimension");
      }
      atoms.push_back({&key, weight, mean_vector(spec_, key, nu.resolution())});
      out.prior_best += weight * atoms.back().mu.max();
    }

    out.scores.assign(W * T, 0.0);
    out.evidence.assign(W, 0.0);

    // Linear pass. Samples are split across workers; each sample's sums
    // run over atoms in key order.
    const std::size_t inner = space_.sizes()[arms - 1] + 1;
    const std::size_t outer = W / inner;
    parallel_for(outer, threads_, [&](std::size_t b, std::size_t e) {
      for (const Atom& atom : atoms) {
        const auto& c = *atom.coords;
        const auto last_row = bank_->arm(arms - 1).row(c[arms - 1]);
        for (std::size_t o = b; o < e; ++o) {
          // Product of the leading arms' pmfs for this block of samples.
          double lead = atom.weight;
          std::size_t rem = o * inner;
          for (int a = 0; a < arms - 1; ++a) {
            const std::size_t n = rem / space_.stride(a);
            rem %= space_.stride(a);
            lead *= bank_->arm(a).row(c[a])[n];
          }
          if (lead == 0.0) continue;
          double* ev = &out.evidence[o * inner];
          double* sc = &out.scores[o * inner * T];
          for (std::size_t j = 0; j < inner; ++j) {
            const double l = lead * last_row[j];
            ev[j] += l;
            for (int t = 0; t < T; ++t) sc[j * T + t] += atom.mu[t] * l;
          }
        }
      }
    });

    out.decision_scores = out.scores;
    out.decision_evidence = out.evidence;

    // Log-space rescoring where the linear evidence underflowed.
    std::vector<double> log_terms(atoms.size());
    for (std::size_t w = 0; w < W; ++w) {
      if (out.evidence[w] >= kRescoreThreshold) continue;
      const auto counts = space_.counts(w);
      double top = kNegInf;
      for (std::size_t m = 0; m < atoms.size(); ++m) {
        double lv = std::log(atoms[m].weight);
        for (int a = 0; a < arms && lv > kNegInf; ++a) {
          lv += bank_->arm(a).log_row((*atoms[m].coords)[a])[counts[a]];
        }
        log_terms[m] = lv;
        top = std::max(top, lv);
      }
      double* sc = &out.decision_scores[w * T];
      std::fill(sc, sc + T, 0.0);
      out.decision_evidence[w] = 0.0;
      if (top == kNegInf) continue;  // impossible under every atom
      for (std::size_t m = 0; m < atoms.size(); ++m) {
        if (log_terms[m] == kNegInf) continue;
        const double l = std::exp(log_terms[m] - top);
        out.decision_evidence[w] += l;
        for (int t = 0; t < T; ++t) sc[t] += atoms[m].mu[t] * l;
      }
    }
    return out;
  }

  // A rule putting all mass on the best-scoring treatments.
  TreatmentRule respond(const BayesScores& s,
                        TiePolicy tie = TiePolicy::kSplitEqually) const {
    const int T = s.num_treatments;
    TreatmentRule rule(space_, T);
    for (std::size_t w = 0; w < space_.size(); ++w) {
      const double* sc = &s.decision_scores[w * T];
      const double best = *std::max_element(sc, sc + T);
      const double slack = kTieTol * s.decision_evidence[w];
      int winners = 0;
      for (int t = 0; t < T; ++t) winners += sc[t] >= best - slack;
      const double share = 1.0 / winners;
      for (int t = 0; t < T; ++t) {
        rule.at(w, t) = sc[t] >= best - slack ? share : 0.0;
      }
    }
    if (tie == TiePolicy::kCenterHalf) {
      const auto& sizes = space_.sizes();
      if (T != 2 || sizes.size() != 2) {
        throw std::invalid_argument("center-half ties need two treatments");
      }
      if (sizes[0] % 2 == 0 && sizes[1] % 2 == 0) {
        const int center[2] = {sizes[0] / 2, sizes[1] / 2};
        const std::size_t w = space_.index(center);
        rule.at(w, 0) = 0.5;
        rule.at(w, 1) = 0.5;
      }
    }
    return rule;
  }

  // R(rule, nu) = sum_m p_m max_t mu_tm - sum_w sum_t delta_t(w) S_t(w).
  double mixture_regret(const TreatmentRule& rule, const BayesScores& s) const {
    const int T = s.num_treatments;
    double achieved = 0.0;
    for (std::size_t w = 0; w < space_.size(); ++w) {
      const double* sc = &s.scores[w * T];
      for (int t = 0; t < T; ++t) achieved += rule.at(w, t) * sc[t];
    }
    return detail::clamp_regret(s.prior_best - achieved);
  }

 private:
  ProblemSpec spec_;
  SampleSpace space_;
  int threads_;
  std::shared_ptr<const PmfBank> bank_;
};

inline GridMax nature_best_response(const TreatmentRule& rule,
                                    const ParameterGrid& grid,
                                    const ProblemSpec& spec, int threads = 1) {
  return max_regret_over_grid(rule, grid, spec, threads);
}

inline TreatmentRule policymaker_best_response(
    const NatureMixture& nu, const ProblemSpec& spec,
    TiePolicy tie = TiePolicy::kSplitEqually) {
  BayesResponder responder(spec, nu.resolution());
  return responder.respond(responder.scores(nu), tie);
}

// min over rules of R(., nu), attained by the Bayes response.
inline double lower_bound_value(const NatureMixture& nu,
                                const ProblemSpec& spec) {
  BayesResponder responder(spec, nu.resolution());
  const BayesScores s = responder.scores(nu);
  return responder.mixture_regret(responder.respond(s), s);
}

}  // namespace mmr

#endif  // MMR_BEST_RESPONSE_HPP_
