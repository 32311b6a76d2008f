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

#include <cmath>
#include <random>

#include "renyirate/enumeration.hpp"
#include "renyirate/spectral.hpp"
#include "test_support.hpp"

namespace renyirate {
namespace {

using testing::binary_hmm;
using testing::symmetric_chain;

TEST(RenyiEntropyPrefix, IidFactorizes) {
  FiniteDistribution d({0.5, 0.3, 0.2});
  ProcessModel p = ProcessModel::iid(d);
  for (double alpha : {0.5, 1.0, 2.0}) {
    double h1 = renyi_entropy(d, alpha).value;
    for (std::size_t n : {1U, 4U, 9U}) {
      EXPECT_NEAR(renyi_entropy_prefix(p, n, alpha).value, static_cast<double>(n) * h1, 1e-10);
    }
  }
}

TEST(RenyiEntropyPrefix, LengthOneIsMarginalEntropy) {
  ProcessModel p = binary_hmm(0.3, 0.1);
  FiniteDistribution marginal(joint_table(p, 1));
  for (double alpha : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(renyi_entropy_prefix(p, 1, alpha).value, renyi_entropy(marginal, alpha).value, 1e-14);
  }
}

TEST(RenyiEntropyPrefix, MarkovSequenceDecreasesTowardSpectralRate) {
  ProcessModel p = testing::chain_process(symmetric_chain(0.25));
  double rate = renyi_rate_markov(symmetric_chain(0.25), 2.0).value;
  double prev = INFINITY;
  for (std::size_t n = 1; n <= 14; ++n) {
    double v = renyi_entropy_prefix(p, n, 2.0).value / static_cast<double>(n);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, rate);
    prev = v;
  }
}

TEST(RenyiEntropyPrefix, OrderOneIsShannonOfJointTable) {
  std::mt19937_64 rng(31);
  ProcessModel p = ProcessModel::hmm(testing::random_positive_chain(rng, 3), 2, {0.9, 0.1, 0.4, 0.6, 0.25, 0.75});
  for (std::size_t n : {3U, 8U, 11U}) {
    FiniteDistribution joint(joint_table(p, n));
    EXPECT_NEAR(renyi_entropy_prefix(p, n, 1.0).value, shannon_entropy(joint).value, 1e-10);
    EXPECT_NEAR(renyi_entropy_prefix(p, n, 2.5).value, renyi_entropy(joint, 2.5).value, 1e-10);
  }
}

TEST(RenyiEntropyPrefix, CapIsEnforced) {
  ProcessModel p = binary_hmm(0.3, 0.1);
  EnumerationOptions opts;
  opts.cap = 1 << 10;
  EXPECT_NO_THROW(renyi_entropy_prefix(p, 10, 2.0, kDefaultBase, opts));
  EXPECT_ERROR_KIND(renyi_entropy_prefix(p, 11, 2.0, kDefaultBase, opts), ErrorKind::EnumerationTooLarge);
  EXPECT_ERROR_KIND(renyi_entropy_prefix(p, 25, 2.0), ErrorKind::EnumerationTooLarge);
}

TEST(RenyiEntropyPrefix, NonPositiveOrderWithImpossibleSequences) {
  const double p[] = {0.5, 0.5, 1.0, 0.0};
  ProcessModel m = testing::chain_process(MarkovChain::from_dense(2, p));
  EXPECT_ERROR_KIND(renyi_entropy_prefix(m, 3, 0.0), ErrorKind::NonAdmissibleAlpha);
  EXPECT_NO_THROW(renyi_entropy_prefix(m, 3, 0.5));
}

TEST(EnumerationProperty, SerialAndParallelAreBitIdentical) {
  std::mt19937_64 rng(32);
  std::vector<ProcessModel> models = {
      binary_hmm(0.3, 0.05),
      testing::chain_process(testing::random_positive_chain(rng, 3)),
      ProcessModel::iid(FiniteDistribution({0.6, 0.3, 0.1})),
  };
  for (const ProcessModel& p : models) {
    std::size_t n = p.alphabet() == 2 ? 16 : 10;
    for (std::size_t chunks : {1U, 7U, 256U}) {
      EnumerationOptions serial{kDefaultEnumerationCap, Exec::Serial, chunks};
      EnumerationOptions parallel{kDefaultEnumerationCap, Exec::Parallel, chunks};
      for (double alpha : {0.5, 1.0, 2.0}) {
        EXPECT_EQ(renyi_entropy_prefix(p, n, alpha, kDefaultBase, serial).value,
                  renyi_entropy_prefix(p, n, alpha, kDefaultBase, parallel).value);
      }
      EXPECT_EQ(joint_table(p, n, serial), joint_table(p, n, parallel));
    }
  }
}

TEST(RenyiRateSequence, IidIsConstant) {
  ConvergenceReport r = renyi_rate_sequence(ProcessModel::iid(FiniteDistribution({0.75, 0.25})), 8, 2.0);
  ASSERT_EQ(r.estimates.size(), 8U);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(r.estimates[i].index, i + 1);
    EXPECT_NEAR(r.estimates[i].value, r.estimates[0].value, 1e-12);
  }
  EXPECT_TRUE(std::isinf(r.fitted_rate));
  EXPECT_EQ(r.residual_rms, 0.0);
}

TEST(RenyiRateSequence, MarkovLimitMatchesSpectral) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 3; ++t) {
    MarkovChain mc = testing::random_positive_chain(rng, 2);
    ConvergenceReport r = renyi_rate_sequence(testing::chain_process(mc), 14, 2.0);
    EXPECT_NEAR(r.fitted_limit, renyi_rate_markov(mc, 2.0).value, 0.02);
  }
}

TEST(RenyiRateSequence, HmmPolynomialRate) {
  ConvergenceReport r = renyi_rate_sequence(binary_hmm(0.3, 0.05), 14, 2.0);
  EXPECT_GE(r.fitted_rate, 0.5);
}

TEST(EstimateConstants, IidHasNoMemory) {
  ConditionConstants c = estimate_constants(ProcessModel::iid(FiniteDistribution({0.7, 0.2, 0.1})), 5, 2.0);
  EXPECT_NEAR(c.c_lower, 0.1, 1e-15);
  EXPECT_NEAR(c.c_upper, 0.7, 1e-15);
  for (double d : c.forgetting_profile) EXPECT_LE(d, 1e-14);
}

TEST(EstimateConstants, MarkovBoundsAreTransitionExtremes) {
  const double p[] = {0.6, 0.3, 0.1, 0.2, 0.2, 0.6, 0.35, 0.4, 0.25};
  ConditionConstants c = estimate_constants(testing::chain_process(MarkovChain::from_dense(3, p)), 5, 2.0);
  EXPECT_NEAR(c.c_lower, 0.1, 1e-14);
  EXPECT_NEAR(c.c_upper, 0.6, 1e-14);
  // Order one: histories ending in the same symbol share their conditional law.
  for (std::size_t n = 1; n < c.forgetting_profile.size(); ++n) EXPECT_LE(c.forgetting_profile[n], 1e-14);
}

TEST(EstimateConstants, ForgettingImprovesWithCleanerChannel) {
  ConditionConstants noisy = estimate_constants(binary_hmm(0.3, 0.2), 12, 2.0);
  ConditionConstants clean = estimate_constants(binary_hmm(0.3, 0.05), 12, 2.0);
  EXPECT_LT(clean.rho_forget, noisy.rho_forget);
  EXPECT_GT(clean.c_lower, 0.0);
  EXPECT_GT(noisy.c_lower, 0.0);
  EXPECT_LE(noisy.c_lower, noisy.c_upper);
}

TEST(EstimateConstants, HorizonValidation) {
  EXPECT_ERROR_KIND(estimate_constants(binary_hmm(0.3, 0.1), 1, 2.0), ErrorKind::OutOfRange);
  EXPECT_ERROR_KIND(estimate_constants(binary_hmm(0.3, 0.1), 30, 2.0), ErrorKind::EnumerationTooLarge);
}

}  // namespace
}  // namespace renyirate
