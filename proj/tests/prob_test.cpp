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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "brute_force.hpp"
#include "mmr/prob.hpp"

namespace {

TEST(BinomPmf, FairCoinAllFailures) {
  EXPECT_NEAR(mmr::binom_pmf(0, 5, 0.5), 0.03125, 1e-15);
}

TEST(BinomPmf, DegenerateSuccess) {
  EXPECT_EQ(mmr::binom_pmf(2, 2, 1.0), 1.0);
  EXPECT_EQ(mmr::binom_pmf(1, 2, 1.0), 0.0);
  EXPECT_EQ(mmr::binom_pmf(0, 2, 0.0), 1.0);
  EXPECT_EQ(mmr::binom_pmf(2, 2, 0.0), 0.0);
}

TEST(BinomPmf, MatchesDirectProduct) {
  EXPECT_NEAR(mmr::binom_pmf(3, 10, 0.3), bf::binom(3, 10, 0.3), 1e-14);
  for (int N : {1, 7, 20}) {
    for (int n = 0; n <= N; ++n) {
      EXPECT_NEAR(mmr::binom_pmf(n, N, 0.37), bf::binom(n, N, 0.37), 1e-14);
    }
  }
}

TEST(BinomPmf, Reflection) {
  for (int N : {3, 40, 400}) {
    for (double mu : {0.001, 0.25, 0.5, 0.731}) {
      for (int n = 0; n <= N; n += std::max(1, N / 17)) {
        EXPECT_NEAR(mmr::binom_pmf(n, N, mu), mmr::binom_pmf(N - n, N, 1.0 - mu),
                    1e-14);
      }
    }
  }
}

TEST(BinomPmf, RejectsBadArguments) {
  EXPECT_THROW(mmr::binom_pmf(-1, 3, 0.5), std::domain_error);
  EXPECT_THROW(mmr::binom_pmf(4, 3, 0.5), std::domain_error);
  EXPECT_THROW(mmr::binom_pmf(1, 3, 1.5), std::domain_error);
  EXPECT_THROW(mmr::binom_pmf(1, 3, -0.1), std::domain_error);
}

TEST(PmfVector, SmallCases) {
  const auto a = mmr::pmf_vector(1, 0.5);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_DOUBLE_EQ(a[0], 0.5);
  EXPECT_DOUBLE_EQ(a[1], 0.5);
  const auto b = mmr::pmf_vector(2, 0.0);
  EXPECT_EQ(b, (std::vector<double>{1.0, 0.0, 0.0}));
  const auto c = mmr::pmf_vector(5, 0.3);
  EXPECT_NEAR(std::accumulate(c.begin(), c.end(), 0.0), 1.0, 1e-12);
}

TEST(PmfVector, SumsToOneUpTo400) {
  for (int N : {1, 50, 200, 400}) {
    for (int i = 0; i <= 1000; i += 37) {
      const auto v = mmr::pmf_vector(N, i / 1000.0);
      EXPECT_NEAR(std::accumulate(v.begin(), v.end(), 0.0), 1.0, 1e-10)
          << "N=" << N << " i=" << i;
    }
  }
}

TEST(PoissonBinomial, TwoFairCoins) {
  const std::vector<double> probs{0.5, 0.5};
  const auto v = mmr::poisson_binom_pmf(probs);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[0], 0.25, 1e-15);
  EXPECT_NEAR(v[1], 0.5, 1e-15);
  EXPECT_NEAR(v[2], 0.25, 1e-15);
}

TEST(PoissonBinomial, UnequalCoins) {
  const std::vector<double> probs{0.1, 0.9};
  const auto v = mmr::poisson_binom_pmf(probs);
  EXPECT_NEAR(v[0], 0.09, 1e-15);
  EXPECT_NEAR(v[1], 0.82, 1e-15);
  EXPECT_NEAR(v[2], 0.09, 1e-15);
}

TEST(PoissonBinomial, ReducesToBinomial) {
  for (int N : {1, 5, 60, 200}) {
    for (double p : {0.0, 0.13, 0.5, 0.87, 1.0}) {
      const std::vector<double> probs(N, p);
      const auto pb = mmr::poisson_binom_pmf(probs);
      const auto bin = mmr::pmf_vector(N, p);
      ASSERT_EQ(pb.size(), bin.size());
      for (int n = 0; n <= N; ++n) EXPECT_NEAR(pb[n], bin[n], 1e-12);
    }
  }
}

TEST(PoissonBinomial, EmptyIsPointMassAtZero) {
  const auto v = mmr::poisson_binom_pmf(std::vector<double>{});
  EXPECT_EQ(v, std::vector<double>{1.0});
}

TEST(PmfTable, RowsMatchPmfVector) {
  const mmr::PmfTable table(12, 40);
  for (int i = 0; i <= 40; ++i) {
    const auto row = table.row(i);
    const auto ref = mmr::pmf_vector(12, i / 40.0);
    for (int n = 0; n <= 12; ++n) {
      EXPECT_NEAR(row[n], ref[n], 1e-15);
      if (ref[n] > 0.0) {
        EXPECT_NEAR(table.log_row(i)[n], std::log(ref[n]), 1e-12);
      }
    }
  }
}

TEST(PmfTable, RejectsZeroResolution) {
  EXPECT_THROW(mmr::PmfTable(3, 0), std::domain_error);
}

}  // namespace
