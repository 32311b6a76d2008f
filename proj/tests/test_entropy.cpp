// Copyright 2026 The renyirate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "renyirate/entropy.hpp"
#include "test_support.hpp"

namespace renyirate {
namespace {

using testing::random_simplex;

TEST(RenyiEntropy, UniformGivesLogOfSizeForEveryOrder) {
  for (std::size_t k : {1U, 2U, 5U, 17U}) {
    FiniteDistribution d = FiniteDistribution::uniform(k);
    for (double alpha : {0.0, 0.3, 1.0, 2.0, 7.5}) {
      EXPECT_NEAR(renyi_entropy(d, alpha).value, std::log2(static_cast<double>(k)), 1e-13);
    }
  }
}

TEST(RenyiEntropy, FairCoinOrderTwoIsOneBit) {
  EXPECT_DOUBLE_EQ(renyi_entropy(FiniteDistribution({0.5, 0.5}), 2.0).value, 1.0);
}

TEST(RenyiEntropy, OrderTwoOfThreeQuartersMatchesOracle) {
  EntropyValue v = renyi_entropy(FiniteDistribution({0.75, 0.25}), 2.0);
  EXPECT_NEAR(v.value, oracle::kRenyi2Of75_25, 1e-15);
  EXPECT_EQ(v.alpha, 2.0);
  EXPECT_EQ(v.base, 2.0);
}

TEST(RenyiEntropy, BaseConversion) {
  FiniteDistribution d({0.75, 0.25});
  EXPECT_NEAR(renyi_entropy(d, 2.0, std::exp(1.0)).value, oracle::kRenyi2Of75_25 * std::log(2.0), 1e-15);
}

TEST(RenyiEntropy, ZeroAtomsSkippedForPositiveOrders) {
  EXPECT_NEAR(renyi_entropy(FiniteDistribution({0.75, 0.0, 0.25}), 2.0).value, oracle::kRenyi2Of75_25, 1e-15);
}

TEST(RenyiEntropy, NonPositiveOrderWithZeroAtomIsRejected) {
  FiniteDistribution d({0.5, 0.0, 0.5});
  EXPECT_ERROR_KIND(renyi_entropy(d, 0.0), ErrorKind::NonAdmissibleAlpha);
  EXPECT_ERROR_KIND(renyi_entropy(d, -1.0), ErrorKind::NonAdmissibleAlpha);
}

TEST(FiniteDistribution, RejectsBadSums) {
  EXPECT_ERROR_KIND(FiniteDistribution({0.5, 0.6}), ErrorKind::InvalidDistribution);
  EXPECT_ERROR_KIND(FiniteDistribution({1.5, -0.5}), ErrorKind::InvalidDistribution);
  EXPECT_ERROR_KIND(FiniteDistribution(std::vector<double>{}), ErrorKind::InvalidDistribution);
  EXPECT_NO_THROW(FiniteDistribution({0.5, 0.5 + 5e-13}));
}

TEST(FiniteDistribution, NormalizesOnRequest) {
  FiniteDistribution d({3.0, 1.0}, true);
  EXPECT_DOUBLE_EQ(d[0], 0.75);
  EXPECT_FALSE(d.has_zero_atoms());
  EXPECT_TRUE(FiniteDistribution({1.0, 0.0}).has_zero_atoms());
}

TEST(ShannonEntropy, Examples) {
  EXPECT_EQ(shannon_entropy(FiniteDistribution({1.0})).value, 0.0);
  EXPECT_DOUBLE_EQ(shannon_entropy(FiniteDistribution({0.5, 0.5})).value, 1.0);
  EXPECT_NEAR(shannon_entropy(FiniteDistribution({0.75, 0.25})).value, oracle::kShannonOf75_25, 1e-15);
  EXPECT_NEAR(renyi_entropy(FiniteDistribution({0.75, 0.25}), 1.0).value, oracle::kShannonOf75_25, 1e-15);
}

TEST(ShannonEntropy, RejectsBadBase) {
  FiniteDistribution d({0.5, 0.5});
  EXPECT_ERROR_KIND(shannon_entropy(d, 1.0), ErrorKind::OutOfRange);
  EXPECT_ERROR_KIND(renyi_entropy(d, 2.0, 0.5), ErrorKind::OutOfRange);
}

TEST(BinaryEntropy, Examples) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(1.0 / 16.0), oracle::kBinaryEntropyOneSixteenth, 1e-15);
  EXPECT_NEAR(binary_entropy(1.0 / 16.0), shannon_entropy(FiniteDistribution({1.0 / 16.0, 15.0 / 16.0})).value,
              1e-15);
}

TEST(BinaryEntropy, OutOfRange) {
  EXPECT_ERROR_KIND(binary_entropy(-0.1), ErrorKind::OutOfRange);
  EXPECT_ERROR_KIND(binary_entropy(1.1), ErrorKind::OutOfRange);
}

TEST(RenyiEntropyProperty, ContinuousAtOrderOne) {
  std::mt19937_64 rng(11);
  const double eps = 1e-4;
  for (int t = 0; t < 100; ++t) {
    std::size_t k = 2 + rng() % 9;
    FiniteDistribution d(random_simplex(rng, k));
    double h = shannon_entropy(d).value;
    EXPECT_LE(std::abs(renyi_entropy(d, 1.0 + eps).value - h), 10.0 * eps * static_cast<double>(k));
    EXPECT_LE(std::abs(renyi_entropy(d, 1.0 - eps).value - h), 10.0 * eps * static_cast<double>(k));
  }
}

TEST(RenyiEntropyProperty, NonIncreasingInOrder) {
  std::mt19937_64 rng(12);
  const double grid[] = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  for (int t = 0; t < 100; ++t) {
    FiniteDistribution d(random_simplex(rng, 2 + rng() % 12, 0.0));
    double prev = INFINITY;
    for (double a : grid) {
      double v = renyi_entropy(d, a).value;
      EXPECT_LE(v, prev + 1e-12);
      prev = v;
    }
  }
}

TEST(RenyiEntropyProperty, OrderZeroIsLogSupport) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    std::size_t k = 1 + rng() % 20;
    FiniteDistribution d(random_simplex(rng, k));
    EXPECT_NEAR(renyi_entropy(d, 0.0).value, std::log2(static_cast<double>(k)), 1e-12);
  }
}

TEST(RenyiEntropyProperty, PermutationIsBitIdentical) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> p = random_simplex(rng, 3 + rng() % 30, 0.0);
    std::vector<double> q = p;
    std::shuffle(q.begin(), q.end(), rng);
    FiniteDistribution a(p);
    FiniteDistribution b(q);
    for (double alpha : {0.5, 1.0, 2.0, 3.7}) {
      EXPECT_EQ(renyi_entropy(a, alpha).value, renyi_entropy(b, alpha).value);
    }
  }
}

TEST(LogSumExp, HandlesVeryNegativeTerms) {
  LogSumExp acc;
  EXPECT_TRUE(acc.empty());
  for (int i = 0; i < 1000; ++i) acc.add(-2000.0);
  EXPECT_NEAR(acc.value(), -2000.0 + std::log(1000.0), 1e-9);
}

}  // namespace
}  // namespace renyirate
