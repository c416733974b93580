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

#ifndef MMR_PROB_HPP_
#define MMR_PROB_HPP_

// Probability kernels: binomial pmf in log space and the Poisson-binomial
// law of a sum of independent Bernoulli draws.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmr {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

namespace detail {

inline void check_probability(double mu, const char* what) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw std::domain_error(std::string(what) + ": probability " +
                            std::to_string(mu) + " outside [0,1]");
  }
}

}  // namespace detail

// Log binomial coefficients for a fixed sample size N.
class BinomialWeights {
 public:
  explicit BinomialWeights(int sample_size) : sample_size_(sample_size) {
    if (sample_size < 0) {
      throw std::domain_error("BinomialWeights: negative sample size");
    }
    log_coeffs_.resize(sample_size + 1);
    const double log_n_fact = std::lgamma(sample_size + 1.0);
    for (int n = 0; n <= sample_size; ++n) {
      log_coeffs_[n] = log_n_fact - std::lgamma(n + 1.0) -
                       std::lgamma(sample_size - n + 1.0);
    }
    // Mirror the upper half so the table is exactly symmetric.
    for (int n = 0; n <= sample_size / 2; ++n) {
      log_coeffs_[sample_size - n] = log_coeffs_[n];
    }
    if (sample_size <= kExactCoeffMax) {
      // Integer recurrence; every value stays below 2^53.
      coeffs_.resize(sample_size + 1);
      std::uint64_t c = 1;
      for (int n = 0; n <= sample_size; ++n) {
        coeffs_[n] = static_cast<double>(c);
        c = c * (sample_size - n) / (n + 1);
      }
    }
  }

  // Largest sample size with exactly representable coefficients.
  static constexpr int kExactCoeffMax = 50;

  int sample_size() const { return sample_size_; }
  std::span<const double> log_coeffs() const { return log_coeffs_; }

  // log P(n | N, mu), given log(mu) and log(1 - mu). Returns -inf for
  // impossible outcomes.
  double log_pmf(int n, double log_mu, double log_one_minus_mu) const {
    const int failures = sample_size_ - n;
    double value = log_coeffs_[n];
    if (n > 0) value += n * log_mu;
    if (failures > 0) value += failures * log_one_minus_mu;
    return value;
  }

  // P(n | N, mu) for interior mu. Small samples use the direct product,
  // which is exact whenever the factors are, and fall back to the log form
  // when a factor underflows.
  double interior_pmf(int n, double mu, double one_minus_mu, double log_mu,
                      double log_one_minus_mu) const {
    if (!coeffs_.empty()) {
      const double a = std::pow(mu, n);
      const double b = std::pow(one_minus_mu, sample_size_ - n);
      if (a >= std::numeric_limits<double>::min() &&
          b >= std::numeric_limits<double>::min()) {
        return coeffs_[n] * a * b;
      }
    }
    return std::exp(log_pmf(n, log_mu, log_one_minus_mu));
  }

  double pmf(int n, double mu) const {
    detail::check_probability(mu, "binom_pmf");
    if (n < 0 || n > sample_size_) {
      throw std::domain_error("binom_pmf: n outside 0..N");
    }
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    if (mu == 1.0) return n == sample_size_ ? 1.0 : 0.0;
    return interior_pmf(n, mu, 1.0 - mu, std::log(mu), std::log1p(-mu));
  }

  std::vector<double> pmf_vector(double mu) const {
    detail::check_probability(mu, "pmf_vector");
    std::vector<double> out(sample_size_ + 1, 0.0);
    if (mu == 0.0) {
      out.front() = 1.0;
      return out;
    }
    if (mu == 1.0) {
      out.back() = 1.0;
      return out;
    }
    const double lm = std::log(mu);
    const double l1m = std::log1p(-mu);
    for (int n = 0; n <= sample_size_; ++n) {
      out[n] = interior_pmf(n, mu, 1.0 - mu, lm, l1m);
    }
    return out;
  }

  std::vector<double> log_pmf_vector(double mu) const {
    detail::check_probability(mu, "log_pmf_vector");
    std::vector<double> out(sample_size_ + 1, kNegInf);
    if (mu == 0.0) {
      out.front() = 0.0;
      return out;
    }
    if (mu == 1.0) {
      out.back() = 0.0;
      return out;
    }
    const double lm = std::log(mu);
    const double l1m = std::log1p(-mu);
    for (int n = 0; n <= sample_size_; ++n) out[n] = log_pmf(n, lm, l1m);
    return out;
  }

 private:
  int sample_size_;
  std::vector<double> log_coeffs_;
  std::vector<double> coeffs_;  // empty above kExactCoeffMax
};

// C(N,n) mu^n (1-mu)^(N-n).
inline double binom_pmf(int n, int sample_size, double mu) {
  if (n < 0 || n > sample_size) {
    throw std::domain_error("binom_pmf: n outside 0..N");
  }
  return BinomialWeights(sample_size).pmf(n, mu);
}

inline std::vector<double> pmf_vector(int sample_size, double mu) {
  return BinomialWeights(sample_size).pmf_vector(mu);
}

// Law of sum_i Bernoulli(probs[i]) over 0..probs.size(), by iterative
// convolution.
inline std::vector<double> poisson_binom_pmf(std::span<const double> probs) {
  std::vector<double> pmf(probs.size() + 1, 0.0);
  pmf[0] = 1.0;
  std::size_t len = 1;
  for (double q : probs) {
    detail::check_probability(q, "poisson_binom_pmf");
    pmf[len] = 0.0;
    for (std::size_t k = len; k > 0; --k) {
      pmf[k] = pmf[k] * (1.0 - q) + pmf[k - 1] * q;
    }
    pmf[0] *= (1.0 - q);
    ++len;
  }
  return pmf;
}

// Binomial pmf rows for every point i/p of a resolution-p grid, kept both
// linear and in log space. Row i holds P(n | N, i/p) for n = 0..N.
class PmfTable {
 public:
  PmfTable(int sample_size, int resolution)
      : sample_size_(sample_size), resolution_(resolution) {
    if (resolution < 1) throw std::domain_error("PmfTable: resolution < 1");
    const BinomialWeights weights(sample_size);
    const std::size_t cols = sample_size + 1;
    const std::size_t rows = resolution + 1;
    linear_.assign(rows * cols, 0.0);
    log_.assign(rows * cols, kNegInf);
    transposed_.assign(rows * cols, 0.0);
    for (int i = 0; i <= resolution; ++i) {
      double* lin = &linear_[i * cols];
      double* lg = &log_[i * cols];
      if (i == 0) {
        lin[0] = 1.0;
        lg[0] = 0.0;
      } else if (i == resolution) {
        lin[sample_size] = 1.0;
        lg[sample_size] = 0.0;
      } else {
        // 1 - i/p is taken as (p - i)/p to stay on the grid.
        const double mu = static_cast<double>(i) / resolution;
        const double one_minus_mu =
            static_cast<double>(resolution - i) / resolution;
        const double lm = std::log(mu);
        const double l1m = std::log(one_minus_mu);
        for (int n = 0; n <= sample_size; ++n) {
          lg[n] = weights.log_pmf(n, lm, l1m);
          lin[n] = weights.interior_pmf(n, mu, one_minus_mu, lm, l1m);
        }
      }
      for (std::size_t n = 0; n < cols; ++n) {
        transposed_[n * rows + i] = lin[n];
      }
    }
  }

  int sample_size() const { return sample_size_; }
  int resolution() const { return resolution_; }
  std::size_t cols() const { return sample_size_ + 1; }
  std::size_t rows() const { return resolution_ + 1; }

  std::span<const double> row(int grid_index) const {
    return {&linear_[grid_index * cols()], cols()};
  }
  std::span<const double> log_row(int grid_index) const {
    return {&log_[grid_index * cols()], cols()};
  }
  // (N+1) x (p+1), column-major view of the linear table.
  const double* transposed() const { return transposed_.data(); }
  const double* linear() const { return linear_.data(); }

 private:
  int sample_size_;
  int resolution_;
  std::vector<double> linear_;
  std::vector<double> log_;
  std::vector<double> transposed_;
};

}  // namespace mmr

#endif  // MMR_PROB_HPP_
