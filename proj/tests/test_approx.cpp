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
#include "renyirate/approx.hpp"
#include "test_support.hpp"

namespace renyirate {
namespace {

using testing::binary_hmm;
using testing::symmetric_chain;

ProcessModel order2_source() {
  std::mt19937_64 rng(41);
  std::vector<double> table;
  for (int u = 0; u < 4; ++u) {
    std::vector<double> r = testing::random_simplex(rng, 2, 0.1);
    table.insert(table.end(), r.begin(), r.end());
  }
  return ProcessModel::markov(2, 2, table);
}

TEST(MarkovApproximation, ReproducesMarkovSource) {
  ProcessModel p = order2_source();
  MarkovApproximation a = markov_approximation(p, 2);
  ASSERT_EQ(a.table().size(), p.table().size());
  for (std::size_t i = 0; i < a.table().size(); ++i) EXPECT_NEAR(a.table()[i], p.table()[i], 1e-13);
}

TEST(MarkovApproximation, IidRowsAreTheMarginal) {
  ProcessModel p = ProcessModel::iid(FiniteDistribution({0.2, 0.5, 0.3}));
  MarkovApproximation a = markov_approximation(p, 2);
  for (std::size_t u = 0; u < a.histories(); ++u)
    for (std::size_t s = 0; s < 3; ++s) EXPECT_NEAR(a.conditional(u, s), p.marginal()[s], 1e-14);
}

TEST(MarkovApproximation, HmmFirstOrderEntry) {
  MarkovApproximation a = markov_approximation(binary_hmm(0.3, 0.1), 1);
  EXPECT_NEAR(a.conditional(0, 0), oracle::kHmmConditional00, 1e-14);
}

TEST(MarkovApproximation, ZeroHistoryIsRejected) {
  const double cycle[] = {0.0, 1.0, 1.0, 0.0};
  ProcessModel p = testing::chain_process(MarkovChain::from_dense(2, cycle));
  EXPECT_ERROR_KIND(markov_approximation(p, 2), ErrorKind::ZeroHistoryProbability);
}

TEST(MarkovApproximationProperty, MarginalConsistency) {
  std::mt19937_64 rng(42);
  std::vector<ProcessModel> sources = {binary_hmm(0.3, 0.1), binary_hmm(0.2, 0.05), order2_source(),
                                       ProcessModel::hmm(testing::random_positive_chain(rng, 3), 2,
                                                         {0.8, 0.2, 0.3, 0.7, 0.5, 0.5})};
  for (const ProcessModel& p : sources) {
    for (std::size_t m = 1; m <= 5; ++m) {
      MarkovApproximation a = markov_approximation(p, m);
      std::vector<double> hist = joint_table(p, m);
      std::vector<double> next = joint_table(p, m + 1);
      for (std::size_t u = 0; u < a.histories(); ++u) {
        EXPECT_NEAR(a.initial_blocks()[u], hist[u], 1e-12);
        double row = 0.0;
        for (std::size_t s = 0; s < 2; ++s) {
          EXPECT_NEAR(hist[u] * a.conditional(u, s), next[u * 2 + s], 1e-10);
          row += a.conditional(u, s);
        }
        EXPECT_NEAR(row, 1.0, 1e-12);
      }
    }
  }
}

TEST(BlockLift, OrderOneIsTheChain) {
  MarkovChain mc = symmetric_chain(0.2);
  BlockLiftedChain lift = block_lift(markov_approximation(testing::chain_process(mc), 1));
  std::vector<double> got = lift.chain.transition().to_dense();
  std::vector<double> want = mc.transition().to_dense();
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-14);
}

TEST(BlockLift, OverlapStructure) {
  BlockLiftedChain lift = block_lift(markov_approximation(binary_hmm(0.3, 0.1), 2));
  const NonnegMatrix& t = lift.chain.transition();
  ASSERT_EQ(t.dim(), 4U);
  for (std::size_t u = 0; u < 4; ++u) {
    EXPECT_EQ(t.row_cols(u).size(), 2U);
    double s = 0.0;
    for (std::size_t e = 0; e < t.row_cols(u).size(); ++e) {
      EXPECT_EQ(t.row_cols(u)[e] / 2, u % 2);
      s += t.row_values(u)[e];
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(BlockLift, StationaryLawIsTheBlockMarginal) {
  ProcessModel p = binary_hmm(0.3, 0.1);
  for (std::size_t m = 1; m <= 6; ++m) {
    BlockLiftedChain lift = block_lift(markov_approximation(p, m));
    FiniteDistribution pi = stationary_distribution(lift.chain);
    std::vector<double> joint = joint_table(p, m);
    for (std::size_t u = 0; u < joint.size(); ++u) EXPECT_NEAR(pi[u], joint[u], 1e-8);
  }
}

TEST(RenyiRateApprox, IidSource) {
  FiniteDistribution d({0.6, 0.4});
  ProcessModel p = ProcessModel::iid(d);
  for (std::size_t m = 1; m <= 3; ++m) {
    EXPECT_NEAR(renyi_rate_approx(markov_approximation(p, m), 2.0).value, renyi_entropy(d, 2.0).value, 1e-12);
  }
}

TEST(RenyiRateApprox, UpscalingInvariance) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 5; ++t) {
    MarkovChain mc = testing::random_positive_chain(rng, 2 + t % 2);
    ProcessModel p = testing::chain_process(mc);
    for (double alpha : {0.5, 2.0, 4.0}) {
      double exact = renyi_rate_markov(mc, alpha).value;
      for (std::size_t m = 1; m <= 3; ++m) {
        EXPECT_NEAR(renyi_rate_approx(markov_approximation(p, m), alpha).value, exact, 1e-9);
      }
    }
  }
}

TEST(RenyiRateApprox, HmmApproachesEnumeration) {
  ProcessModel p = binary_hmm(0.3, 0.05);
  ConvergenceReport prefix = renyi_rate_sequence(p, 14, 2.0);
  double target = prefix.fitted_limit;
  double gap1 = std::abs(renyi_rate_approx(markov_approximation(p, 1), 2.0).value - target);
  double gap6 = std::abs(renyi_rate_approx(markov_approximation(p, 6), 2.0).value - target);
  EXPECT_LT(gap6, gap1);
  EXPECT_LT(gap6, 0.02);
}

TEST(ApproxRateSequence, Examples) {
  ConvergenceReport iid = approx_rate_sequence(ProcessModel::iid(FiniteDistribution({0.6, 0.4})), 2.0, 4);
  EXPECT_TRUE(std::isnan(iid.fitted_rate));
  for (const Estimate& e : iid.estimates) EXPECT_NEAR(e.value, iid.estimates[0].value, 1e-12);

  ConvergenceReport two = approx_rate_sequence(order2_source(), 2.0, 5);
  for (std::size_t i = 2; i < two.estimates.size(); ++i) EXPECT_NEAR(two.estimates[i].value, two.estimates[1].value, 1e-9);

  ConvergenceReport hmm = approx_rate_sequence(binary_hmm(0.3, 0.05), 2.0, 6);
  EXPECT_EQ(hmm.fit_kind, FitKind::Geometric);
  EXPECT_GT(hmm.fitted_rate, 0.0);
  EXPECT_LT(hmm.fitted_rate, 1.0);
  EXPECT_LT(hmm.residual_rms, 0.1);

  EXPECT_ERROR_KIND(approx_rate_sequence(binary_hmm(0.3, 0.05), 2.0, 30), ErrorKind::EnumerationTooLarge);
}

TEST(DeltaDiagnostic, Examples) {
  DeltaDiagnostic exact = delta_matrix_diagnostic(order2_source(), 2, 2.0);
  EXPECT_LE(exact.max_abs_entry, 1e-13);
  EXPECT_EQ(exact.positive_entries_per_row, 2U);

  ProcessModel p = binary_hmm(0.3, 0.05);
  std::vector<double> d;
  for (std::size_t m = 1; m <= 5; ++m) {
    DeltaDiagnostic dd = delta_matrix_diagnostic(p, m, 2.0);
    EXPECT_EQ(dd.positive_entries_per_row, 2U);
    d.push_back(dd.max_abs_entry);
  }
  ConditionConstants c = estimate_constants(p, 12, 2.0);
  for (std::size_t i = 1; i < d.size(); ++i) {
    EXPECT_LT(d[i], d[i - 1]);
    // Successive ratios stay near the estimated forgetting rate.
    EXPECT_LT(d[i] / d[i - 1], std::max(0.5, 2.0 * c.rho_forget));
  }
}

TEST(ApproxProperty, EigenvectorRatioBound) {
  std::vector<ProcessModel> sources = {binary_hmm(0.3, 0.1), binary_hmm(0.3, 0.05), order2_source()};
  for (const ProcessModel& p : sources) {
    for (double alpha : {0.5, 2.0}) {
      ConditionConstants c = estimate_constants(p, 10, alpha);
      for (std::size_t m = 1; m <= 4; ++m) {
        BlockLiftedChain lift = block_lift(markov_approximation(p, m));
        PerronResult pr = perron_eigen(alpha_power_matrix(lift.chain.transition(), alpha));
        auto [lo, hi] = std::minmax_element(pr.eigenvector.begin(), pr.eigenvector.end());
        double bound = std::pow(c.c_upper / c.c_lower, 2.0 * alpha * static_cast<double>(m + 1));
        EXPECT_LE(*hi / *lo, bound * (1 + 1e-12));
      }
    }
  }
}

TEST(ApproxProperty, ShannonRateNonIncreasingInOrder) {
  std::vector<ProcessModel> sources = {binary_hmm(0.3, 0.1), binary_hmm(0.1, 0.2), order2_source()};
  for (const ProcessModel& p : sources) {
    double prev = INFINITY;
    for (std::size_t m = 1; m <= 7; ++m) {
      double h = renyi_rate_approx(markov_approximation(p, m), 1.0).value;
      EXPECT_LE(h, prev + 1e-12);
      prev = h;
    }
  }
}

}  // namespace
}  // namespace renyirate
