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

#ifndef MMR_MODEL_HPP_
#define MMR_MODEL_HPP_

// Data model of the treatment-choice game: problem shape, sample space,
// treatment rules, nature's grid and mixtures, and exact regret evaluation
// at a single mean vector.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mmr/prob.hpp"

namespace mmr {

// Tolerance for simplex rows of a rule.
inline constexpr double kSimplexTol = 1e-12;
// Regret values in [-kNegativeRegretTol, 0) are floating-point noise.
inline constexpr double kNegativeRegretTol = 1e-12;

enum class Design { kFixedAssignment, kTestingInnovations };

// T treatments. Under fixed assignment every treatment is sampled with its
// own size; when testing innovations the first T-1 treatments share a
// common size and the last one is a status quo with known mean.
struct ProblemSpec {
  Design design = Design::kFixedAssignment;
  int num_treatments = 2;
  std::vector<int> sample_sizes;
  std::optional<double> status_quo_mean;

  static ProblemSpec fixed_assignment(std::vector<int> sizes) {
    ProblemSpec spec;
    spec.design = Design::kFixedAssignment;
    spec.num_treatments = static_cast<int>(sizes.size());
    spec.sample_sizes = std::move(sizes);
    spec.validate();
    return spec;
  }

  static ProblemSpec two_arm(int n1, int n2) {
    return fixed_assignment({n1, n2});
  }

  static ProblemSpec testing_innovations(int num_treatments, int nbar,
                                         double status_quo) {
    ProblemSpec spec;
    spec.design = Design::kTestingInnovations;
    spec.num_treatments = num_treatments;
    spec.sample_sizes = {nbar};
    spec.status_quo_mean = status_quo;
    spec.validate();
    return spec;
  }

  bool innovations() const { return design == Design::kTestingInnovations; }

  // Number of sampled arms, which is also the number of free grid
  // coordinates of nature's action.
  int num_arms() const {
    return innovations() ? num_treatments - 1 : num_treatments;
  }

  std::vector<int> arm_sizes() const {
    if (innovations()) return std::vector<int>(num_arms(), sample_sizes[0]);
    return sample_sizes;
  }

  void validate() const {
    if (num_treatments < 2) {
      throw std::invalid_argument("ProblemSpec: need at least 2 treatments");
    }
    for (int n : sample_sizes) {
      if (n < 0) throw std::invalid_argument("ProblemSpec: negative size");
    }
    if (innovations()) {
      if (sample_sizes.size() != 1) {
        throw std::invalid_argument(
            "ProblemSpec: innovations take one common sample size");
      }
      if (!status_quo_mean) {
        throw std::invalid_argument("ProblemSpec: status quo mean required");
      }
      detail::check_probability(*status_quo_mean, "status quo mean");
    } else {
      if (static_cast<int>(sample_sizes.size()) != num_treatments) {
        throw std::invalid_argument(
            "ProblemSpec: need one sample size per treatment");
      }
      if (status_quo_mean) {
        throw std::invalid_argument(
            "ProblemSpec: status quo mean only applies to innovations");
      }
    }
  }

  bool operator==(const ProblemSpec&) const = default;
};

// Enumeration of success-count vectors (n_1, ..., n_k), 0 <= n_a <= N_a,
// in row-major order (last arm fastest).
class SampleSpace {
 public:
  SampleSpace() = default;
  explicit SampleSpace(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    strides_.assign(sizes_.size(), 1);
    size_ = 1;
    for (std::size_t a = sizes_.size(); a-- > 0;) {
      if (sizes_[a] < 0) throw std::invalid_argument("SampleSpace: size < 0");
      strides_[a] = size_;
      size_ *= static_cast<std::size_t>(sizes_[a] + 1);
    }
  }

  std::size_t size() const { return size_; }
  int num_arms() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  std::size_t stride(int arm) const { return strides_[arm]; }

  std::size_t index(std::span<const int> counts) const {
    if (counts.size() != sizes_.size()) {
      throw std::invalid_argument("SampleSpace: wrong number of counts");
    }
    std::size_t idx = 0;
    for (std::size_t a = 0; a < sizes_.size(); ++a) {
      if (counts[a] < 0 || counts[a] > sizes_[a]) {
        throw std::out_of_range("SampleSpace: count out of range");
      }
      idx += strides_[a] * static_cast<std::size_t>(counts[a]);
    }
    return idx;
  }

  std::vector<int> counts(std::size_t idx) const {
    std::vector<int> out(sizes_.size());
    for (std::size_t a = 0; a < sizes_.size(); ++a) {
      out[a] = static_cast<int>(idx / strides_[a]);
      idx %= strides_[a];
    }
    return out;
  }

  // Index of the complementary sample (N_1 - n_1, ..., N_k - n_k).
  std::size_t complement(std::size_t idx) const { return size_ - 1 - idx; }

  bool operator==(const SampleSpace& o) const { return sizes_ == o.sizes_; }

 private:
  std::vector<int> sizes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

// Nature's pure action: one Bernoulli mean per treatment.
struct MeanVector {
  std::vector<double> means;

  std::size_t size() const { return means.size(); }
  double operator[](std::size_t t) const { return means[t]; }
  double max() const { return *std::max_element(means.begin(), means.end()); }
  bool operator==(const MeanVector&) const = default;
};

inline std::string to_string(const MeanVector& mu) {
  std::ostringstream os;
  os << '(';
  for (std::size_t t = 0; t < mu.size(); ++t) {
    if (t) os << ", ";
    os << mu[t];
  }
  os << ')';
  return os.str();
}

// The resolution-p grid {i/p} over nature's free coordinates, optionally
// filtered by a constraint on those coordinates.
class ParameterGrid {
 public:
  using Constraint = std::function<bool(std::span<const double>)>;

  ParameterGrid(int resolution, int dims, Constraint constraint = {},
                std::string description = "unrestricted")
      : resolution_(resolution),
        dims_(dims),
        constraint_(std::move(constraint)),
        description_(std::move(description)) {
    if (resolution < 1) throw std::invalid_argument("grid resolution < 1");
    if (dims < 1) throw std::invalid_argument("grid needs >= 1 dimension");
  }

  static ParameterGrid unrestricted(int resolution, int dims) {
    return ParameterGrid(resolution, dims);
  }

  // lo * mu_1 <= mu_2 <= hi * mu_1 over two coordinates. The bounds are
  // inclusive up to 1e-12 so grid points on the boundary rays are kept.
  static ParameterGrid ratio_band(int resolution, double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("ratio band: lo > hi");
    std::ostringstream desc;
    desc << lo << "*mu1<=mu2<=" << hi << "*mu1";
    return ParameterGrid(
        resolution, 2,
        [lo, hi](std::span<const double> mu) {
          constexpr double kEdge = 1e-12;
          return lo * mu[0] <= mu[1] + kEdge && mu[1] <= hi * mu[0] + kEdge;
        },
        desc.str());
  }

  int resolution() const { return resolution_; }
  int dims() const { return dims_; }
  double epsilon() const { return 1.0 / resolution_; }
  bool restricted() const { return static_cast<bool>(constraint_); }
  const std::string& description() const { return description_; }

  double coordinate(int i) const {
    return static_cast<double>(i) / resolution_;
  }

  bool contains(std::span<const int> coords) const {
    if (static_cast<int>(coords.size()) != dims_) return false;
    for (int c : coords) {
      if (c < 0 || c > resolution_) return false;
    }
    if (!constraint_) return true;
    std::vector<double> mu(coords.size());
    for (std::size_t k = 0; k < coords.size(); ++k) mu[k] = coordinate(coords[k]);
    return constraint_(mu);
  }

  // Visits admissible points in lexicographic order.
  template <typename Fn>
  void for_each_point(Fn&& fn) const {
    std::vector<int> coords(dims_, 0);
    std::vector<double> mu(dims_, 0.0);
    while (true) {
      for (int k = 0; k < dims_; ++k) mu[k] = coordinate(coords[k]);
      if (!constraint_ || constraint_(mu)) fn(std::as_const(coords));
      int k = dims_ - 1;
      while (k >= 0 && coords[k] == resolution_) {
        coords[k] = 0;
        --k;
      }
      if (k < 0) break;
      ++coords[k];
    }
  }

  std::size_t num_points() const {
    std::size_t n = 0;
    for_each_point([&](const std::vector<int>&) { ++n; });
    return n;
  }

  // Whether (p - i_1, ..., p - i_d) is admissible for every admissible i.
  bool mirror_closed() const {
    if (!constraint_) return true;
    bool closed = true;
    for_each_point([&](const std::vector<int>& c) {
      std::vector<int> m(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) m[k] = resolution_ - c[k];
      closed = closed && contains(m);
    });
    return closed;
  }

  // Whether every coordinate permutation of an admissible point is
  // admissible.
  bool permutation_closed() const {
    if (!constraint_) return true;
    bool closed = true;
    for_each_point([&](const std::vector<int>& c) {
      std::vector<int> perm = c;
      std::sort(perm.begin(), perm.end());
      do {
        closed = closed && contains(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
    });
    return closed;
  }

 private:
  int resolution_;
  int dims_;
  Constraint constraint_;
  std::string description_;
};

// Full mean vector for free grid coordinates; appends the known status quo
// mean under the innovations design.
inline MeanVector mean_vector(const ProblemSpec& spec,
                              std::span<const int> coords, int resolution) {
  MeanVector mu;
  mu.means.reserve(spec.num_treatments);
  for (int c : coords) {
    mu.means.push_back(static_cast<double>(c) / resolution);
  }
  if (spec.innovations()) mu.means.push_back(*spec.status_quo_mean);
  return mu;
}

// Dense map from every sample to a probability vector over T treatments.
class TreatmentRule {
 public:
  TreatmentRule() = default;
  TreatmentRule(SampleSpace space, int num_treatments)
      : space_(std::move(space)),
        num_treatments_(num_treatments),
        probs_(space_.size() * num_treatments, 0.0) {
    if (num_treatments < 2) throw std::invalid_argument("rule: T < 2");
  }

  static TreatmentRule for_spec(const ProblemSpec& spec) {
    return TreatmentRule(SampleSpace(spec.arm_sizes()), spec.num_treatments);
  }

  static TreatmentRule constant(const ProblemSpec& spec, int treatment) {
    TreatmentRule rule = for_spec(spec);
    if (treatment < 0 || treatment >= spec.num_treatments) {
      throw std::out_of_range("constant rule: treatment out of range");
    }
    for (std::size_t w = 0; w < rule.num_samples(); ++w) {
      rule.at(w, treatment) = 1.0;
    }
    return rule;
  }

  const SampleSpace& space() const { return space_; }
  int num_treatments() const { return num_treatments_; }
  std::size_t num_samples() const { return space_.size(); }

  double& at(std::size_t w, int t) { return probs_[w * num_treatments_ + t]; }
  double at(std::size_t w, int t) const {
    return probs_[w * num_treatments_ + t];
  }
  double at(std::span<const int> counts, int t) const {
    return at(space_.index(counts), t);
  }

  std::span<double> row(std::size_t w) {
    return {&probs_[w * num_treatments_], static_cast<std::size_t>(num_treatments_)};
  }
  std::span<const double> row(std::size_t w) const {
    return {&probs_[w * num_treatments_], static_cast<std::size_t>(num_treatments_)};
  }

  const std::vector<double>& data() const { return probs_; }

  // this <- (1 - alpha) * this + alpha * other.
  void blend(double alpha, const TreatmentRule& other) {
    check_shape(other);
    const double keep = 1.0 - alpha;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      probs_[i] = keep * probs_[i] + alpha * other.probs_[i];
    }
  }

  // Largest |sum_t delta_t(w) - 1| or negative entry magnitude.
  double simplex_violation() const {
    double worst = 0.0;
    for (std::size_t w = 0; w < num_samples(); ++w) {
      double s = 0.0;
      for (double p : row(w)) {
        s += p;
        worst = std::max(worst, -p);
      }
      worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
  }

  void validate(double tol = kSimplexTol) const {
    if (simplex_violation() > tol) {
      throw std::invalid_argument("TreatmentRule: rows are not on the simplex");
    }
  }

  bool matches(const ProblemSpec& spec) const {
    return num_treatments_ == spec.num_treatments &&
           space_.sizes() == spec.arm_sizes();
  }

  void check_shape(const TreatmentRule& other) const {
    if (!(space_ == other.space_) || num_treatments_ != other.num_treatments_) {
      throw std::invalid_argument("TreatmentRule: shape mismatch");
    }
  }

  bool operator==(const TreatmentRule& o) const {
    return space_ == o.space_ && num_treatments_ == o.num_treatments_ &&
           probs_ == o.probs_;
  }

 private:
  SampleSpace space_;
  int num_treatments_ = 2;
  std::vector<double> probs_;
};

inline void check_rule_shape(const TreatmentRule& rule,
                             const ProblemSpec& spec) {
  if (!rule.matches(spec)) {
    throw std::invalid_argument(
        "rule is not indexed over the problem's sample space");
  }
}

// Sparse distribution over grid points, keyed by integer coordinates.
class NatureMixture {
 public:
  using Key = std::vector<int>;

  explicit NatureMixture(int resolution = 1) : resolution_(resolution) {}

  static NatureMixture point_mass(Key key, int resolution) {
    NatureMixture nu(resolution);
    nu.add(std::move(key), 1.0);
    return nu;
  }

  int resolution() const { return resolution_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  const std::map<Key, double>& atoms() const { return atoms_; }

  // Adds weight to an atom; repeated keys merge.
  void add(const Key& key, double weight) {
    if (!(weight > 0.0)) return;
    atoms_[key] += weight;
  }

  // nu <- (1 - alpha) nu + alpha * I(key). An empty mixture becomes the
  // point mass at key.
  void mix_in(const Key& key, double alpha) {
    if (atoms_.empty()) {
      atoms_[key] = 1.0;
      return;
    }
    for (auto& [k, w] : atoms_) w *= (1.0 - alpha);
    atoms_[key] += alpha;
  }

  double total() const {
    double s = 0.0;
    for (const auto& [k, w] : atoms_) s += w;
    return s;
  }

  void normalize() {
    const double s = total();
    if (!(s > 0.0)) throw std::invalid_argument("NatureMixture: zero mass");
    for (auto& [k, w] : atoms_) w /= s;
  }

 private:
  int resolution_;
  std::map<Key, double> atoms_;
};

namespace detail {

// Per-arm binomial pmf vectors at the arm means.
inline std::vector<std::vector<double>> arm_pmfs(const ProblemSpec& spec,
                                                 const MeanVector& mu) {
  const auto sizes = spec.arm_sizes();
  std::vector<std::vector<double>> out;
  out.reserve(sizes.size());
  for (std::size_t a = 0; a < sizes.size(); ++a) {
    out.push_back(pmf_vector(sizes[a], mu[a]));
  }
  return out;
}

inline void check_mean_vector(const MeanVector& mu, const ProblemSpec& spec) {
  if (static_cast<int>(mu.size()) != spec.num_treatments) {
    throw std::invalid_argument("mean vector has wrong length");
  }
  for (double m : mu.means) detail::check_probability(m, "mean vector");
  if (spec.innovations() &&
      std::abs(mu.means.back() - *spec.status_quo_mean) > 1e-12) {
    throw std::invalid_argument(
        "mean vector's last coordinate must equal the status quo mean");
  }
}

// Sum over samples of delta(w) * prod_a pmf_a[n_a], for every treatment.
inline std::vector<double> expectation_from_pmfs(
    const TreatmentRule& rule, const std::vector<std::vector<double>>& pmfs) {
  const SampleSpace& space = rule.space();
  const int arms = space.num_arms();
  const int T = rule.num_treatments();
  std::vector<double> out(T, 0.0);
  std::vector<int> counts(arms, 0);
  for (std::size_t w = 0; w < space.size(); ++w) {
    double lik = 1.0;
    for (int a = 0; a < arms; ++a) lik *= pmfs[a][counts[a]];
    if (lik != 0.0) {
      const auto r = rule.row(w);
      for (int t = 0; t < T; ++t) out[t] += r[t] * lik;
    }
    for (int a = arms - 1; a >= 0; --a) {
      if (++counts[a] <= space.sizes()[a]) break;
      counts[a] = 0;
    }
  }
  return out;
}

inline double clamp_regret(double r) {
  if (r < 0.0) {
    if (r < -kNegativeRegretTol) {
      throw std::runtime_error("negative regret " + std::to_string(r) +
                               ": numerical failure");
    }
    return 0.0;
  }
  return r;
}

}  // namespace detail

// E_mu delta_t(w_N) for every treatment t.
inline std::vector<double> expected_assignment(const TreatmentRule& rule,
                                               const MeanVector& mu,
                                               const ProblemSpec& spec) {
  check_rule_shape(rule, spec);
  detail::check_mean_vector(mu, spec);
  return detail::expectation_from_pmfs(rule, detail::arm_pmfs(spec, mu));
}

// max_t mu_t - sum_t mu_t E_mu delta_t. Under the innovations design the
// status quo is chosen with probability 1 - sum_{t<T} E delta_t.
inline double regret(const TreatmentRule& rule, const MeanVector& mu,
                     const ProblemSpec& spec) {
  const auto e = expected_assignment(rule, mu, spec);
  const int T = spec.num_treatments;
  const double mu_last = mu[T - 1];
  double value = mu.max() - mu_last;
  for (int t = 0; t < T - 1; ++t) value -= (mu[t] - mu_last) * e[t];
  return detail::clamp_regret(value);
}

// sum_m p_m R(rule, mu_m).
inline double regret_vs_mixture(const TreatmentRule& rule,
                                const NatureMixture& nu,
                                const ProblemSpec& spec) {
  if (nu.empty()) throw std::invalid_argument("regret_vs_mixture: empty mixture");
  double value = 0.0;
  for (const auto& [key, weight] : nu.atoms()) {
    value += weight * regret(rule, mean_vector(spec, key, nu.resolution()), spec);
  }
  return value;
}

}  // namespace mmr

#endif  // MMR_MODEL_HPP_
