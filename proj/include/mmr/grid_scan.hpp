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

#ifndef MMR_GRID_SCAN_HPP_
#define MMR_GRID_SCAN_HPP_

// Maximal regret of a rule over nature's grid.
//
// E_mu delta_t is a multilinear form in the per-arm pmf vectors, so the
// expectations at all (p+1)^d grid points are obtained by contracting the
// rule tensor with one (p+1) x (N_a+1) pmf matrix per arm. Each output
// element is accumulated in a fixed order by a single worker, and the argmax
// is reduced sequentially in lexicographic order, so results do not depend
// on the thread count.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "mmr/model.hpp"
#include "mmr/parallel.hpp"
#include "mmr/prob.hpp"

namespace mmr {

// Later grid points replace the incumbent maximum only when larger by more
// than this, so exact and rounding-level ties go to the lowest coordinates.
inline constexpr double kArgmaxTieTol = 1e-13;

// Largest grid tensor a scan will allocate, in doubles.
inline constexpr std::size_t kMaxScanPoints = std::size_t{1} << 27;

enum class ScanRegion {
  kFull,
  // Only points with mu_1 <= 1/2 (mirror-symmetric rules).
  kMirrorHalf,
  // Only points with nondecreasing coordinates (permutation-symmetric
  // rules).
  kSorted,
  // Only points with strictly increasing coordinates.
  kStrictlySorted,
};

struct GridMax {
  std::vector<int> coords;
  MeanVector mu;
  double value = 0.0;
};

// Binomial pmf tables for each sampled arm at one grid resolution. Arms
// with equal sample sizes share a table.
class PmfBank {
 public:
  PmfBank(const ProblemSpec& spec, int resolution) : resolution_(resolution) {
    std::map<int, std::shared_ptr<const PmfTable>> by_size;
    for (int n : spec.arm_sizes()) {
      auto& slot = by_size[n];
      if (!slot) slot = std::make_shared<const PmfTable>(n, resolution);
      tables_.push_back(slot);
    }
  }

  int resolution() const { return resolution_; }
  int num_arms() const { return static_cast<int>(tables_.size()); }
  const PmfTable& arm(int a) const { return *tables_[a]; }

 private:
  int resolution_;
  std::vector<std::shared_ptr<const PmfTable>> tables_;
};

class GridScanner {
 public:
  GridScanner(ProblemSpec spec, ParameterGrid grid, int threads = 1,
              std::shared_ptr<const PmfBank> bank = nullptr)
      : spec_(std::move(spec)), grid_(std::move(grid)), threads_(threads) {
    spec_.validate();
    if (grid_.dims() != spec_.num_arms()) {
      throw std::invalid_argument("grid dimension does not match the problem");
    }
    bank_ = bank ? std::move(bank)
                 : std::make_shared<const PmfBank>(spec_, grid_.resolution());
    if (bank_->resolution() != grid_.resolution()) {
      throw std::invalid_argument("pmf bank resolution mismatch");
    }
    std::size_t points = 1;
    for (int k = 0; k < grid_.dims(); ++k) points *= grid_.resolution() + 1;
    if (points > kMaxScanPoints) {
      throw std::invalid_argument(
          "grid too large for a dense scan; lower the resolution");
    }
    if (grid_.restricted()) {
      mask_.assign(points, 0);
      std::size_t idx = 0;
      grid_.for_each_point([&](const std::vector<int>& c) {
        idx = 0;
        for (int k = 0; k < grid_.dims(); ++k) {
          idx = idx * (grid_.resolution() + 1) + c[k];
        }
        mask_[idx] = 1;
      });
      if (std::find(mask_.begin(), mask_.end(), 1) == mask_.end()) {
        throw std::invalid_argument("grid constraint excludes every point");
      }
    }
  }

  const ProblemSpec& spec() const { return spec_; }
  const ParameterGrid& grid() const { return grid_; }
  std::shared_ptr<const PmfBank> bank() const { return bank_; }
  int threads() const { return threads_; }
  void set_threads(int threads) { threads_ = threads; }

  GridMax maximize(const TreatmentRule& rule,
                   ScanRegion region = ScanRegion::kFull) const {
    check_rule_shape(rule, spec_);
    const int d = grid_.dims();
    const int p = grid_.resolution();
    const int P = p + 1;
    const int first_rows = region == ScanRegion::kMirrorHalf ? p / 2 + 1 : P;
    const int T = spec_.num_treatments;

    // E_t over the (possibly truncated) grid for t < T-1.
    std::vector<std::vector<double>> expectations;
    expectations.reserve(T - 1);
    for (int t = 0; t < T - 1; ++t) {
      expectations.push_back(contract(rule, t, first_rows));
    }

    std::vector<double> mu(T, 0.0);
    const bool known_last = spec_.innovations();
    if (known_last) mu[T - 1] = *spec_.status_quo_mean;

    GridMax best;
    bool found = false;
    std::vector<int> coords(d, 0);
    std::size_t flat = 0;  // index into the truncated tensor
    while (true) {
      bool admissible = true;
      if (region == ScanRegion::kSorted) {
        for (int k = 1; k < d && admissible; ++k) {
          admissible = coords[k - 1] <= coords[k];
        }
      } else if (region == ScanRegion::kStrictlySorted) {
        for (int k = 1; k < d && admissible; ++k) {
          admissible = coords[k - 1] < coords[k];
        }
      }
      if (admissible && !mask_.empty()) {
        std::size_t full = 0;
        for (int k = 0; k < d; ++k) full = full * P + coords[k];
        admissible = mask_[full] != 0;
      }
      if (admissible) {
        for (int k = 0; k < d; ++k) mu[k] = grid_.coordinate(coords[k]);
        const double mu_last = mu[T - 1];
        double value = *std::max_element(mu.begin(), mu.end()) - mu_last;
        for (int t = 0; t < T - 1; ++t) {
          value -= (mu[t] - mu_last) * expectations[t][flat];
        }
        if (!found || value > best.value + kArgmaxTieTol) {
          best.value = value;
          best.coords = coords;
          found = true;
        }
      }
      ++flat;
      int k = d - 1;
      while (k >= 0 && coords[k] == (k == 0 ? first_rows - 1 : p)) {
        coords[k] = 0;
        --k;
      }
      if (k < 0) break;
      ++coords[k];
    }
    if (!found) throw std::invalid_argument("scan region contains no grid point");
    best.value = detail::clamp_regret(best.value);
    best.mu = mean_vector(spec_, best.coords, p);
    return best;
  }

  // Row-major tensor of E_{grid point} delta_t over the grid, with the first
  // coordinate truncated to first_rows.
  std::vector<double> contract(const TreatmentRule& rule, int treatment,
                               int first_rows) const {
    const SampleSpace& space = rule.space();
    const int d = space.num_arms();
    const std::size_t P = grid_.resolution() + 1;

    std::vector<double> cur(space.size());
    for (std::size_t w = 0; w < space.size(); ++w) {
      cur[w] = rule.at(w, treatment);
    }
    // shape: grid dims done so far, then remaining arm dims.
    std::size_t pre = 1;
    for (int k = 0; k < d; ++k) {
      const PmfTable& table = bank_->arm(k);
      const std::size_t n = table.cols();
      std::size_t post = 1;
      for (int j = k + 1; j < d; ++j) post *= space.sizes()[j] + 1;
      const std::size_t rows = k == 0 ? static_cast<std::size_t>(first_rows) : P;
      std::vector<double> next(pre * rows * post, 0.0);

      if (post == 1) {
        // next(pre, :) = sum_j cur(pre, j) * pmfT(j, :)
        const double* bt = table.transposed();
        parallel_for(pre, threads_, [&](std::size_t b, std::size_t e) {
          for (std::size_t q = b; q < e; ++q) {
            double* out = &next[q * rows];
            const double* in = &cur[q * n];
            for (std::size_t j = 0; j < n; ++j) {
              const double c = in[j];
              if (c == 0.0) continue;
              const double* col = bt + j * P;
              for (std::size_t i = 0; i < rows; ++i) out[i] += c * col[i];
            }
          }
        }, 1);
      } else {
        // next(pre, i, :) = sum_j pmf(i, j) * cur(pre, j, :)
        const double* lin = table.linear();
        parallel_for(pre * rows, threads_, [&](std::size_t b, std::size_t e) {
          for (std::size_t qi = b; qi < e; ++qi) {
            const std::size_t q = qi / rows;
            const std::size_t i = qi % rows;
            double* out = &next[qi * post];
            const double* pm = lin + i * n;
            for (std::size_t j = 0; j < n; ++j) {
              const double c = pm[j];
              if (c == 0.0) continue;
              const double* in = &cur[(q * n + j) * post];
              for (std::size_t s = 0; s < post; ++s) out[s] += c * in[s];
            }
          }
        });
      }
      cur.swap(next);
      pre *= rows;
    }
    return cur;
  }

 private:
  ProblemSpec spec_;
  ParameterGrid grid_;
  int threads_;
  std::shared_ptr<const PmfBank> bank_;
  std::vector<std::uint8_t> mask_;
};

// argmax and max of R(rule, .) over the grid; ties go to the lowest
// lexicographic coordinates.
inline GridMax max_regret_over_grid(const TreatmentRule& rule,
                                    const ParameterGrid& grid,
                                    const ProblemSpec& spec, int threads = 1) {
  return GridScanner(spec, grid, threads).maximize(rule);
}

}  // namespace mmr

#endif  // MMR_GRID_SCAN_HPP_
