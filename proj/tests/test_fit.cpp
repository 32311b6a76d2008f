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

#include "renyirate/fit.hpp"
#include "test_support.hpp"

namespace renyirate {
namespace {

ConvergenceReport series(std::size_t first, std::size_t last, double (*f)(double)) {
  ConvergenceReport r;
  for (std::size_t n = first; n <= last; ++n) r.estimates.push_back({n, f(static_cast<double>(n))});
  return r;
}

TEST(LeastSquares, ExactLine) {
  const double x[] = {1, 2, 3, 4};
  const double y[] = {1, 3, 5, 7};
  LineFit f = least_squares(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-15);
  EXPECT_NEAR(f.intercept, -1.0, 1e-15);
  EXPECT_NEAR(f.rms, 0.0, 1e-15);
}

TEST(LeastSquares, Degenerate) {
  const double x[] = {1, 1};
  const double y[] = {0, 2};
  EXPECT_ERROR_KIND(least_squares(x, y), ErrorKind::OutOfRange);
  EXPECT_ERROR_KIND(least_squares(std::span<const double>(x, 1), std::span<const double>(y, 1)),
                    ErrorKind::OutOfRange);
}

TEST(FitPolynomial, RecoversDecreasingPowerLaw) {
  ConvergenceReport r = series(1, 40, [](double n) { return 0.7 + 0.5 * std::pow(n, -0.8); });
  fit_polynomial(r, 2);
  EXPECT_EQ(r.fit_kind, FitKind::Polynomial);
  EXPECT_NEAR(r.fitted_limit, 0.7, 1e-5);
  EXPECT_NEAR(r.fitted_rate, 0.8, 1e-3);
  EXPECT_NEAR(r.fitted_scale, 0.5, 1e-3);
  EXPECT_LT(r.residual_rms, 1e-4);
}

TEST(FitPolynomial, RecoversIncreasingPowerLaw) {
  ConvergenceReport r = series(1, 30, [](double n) { return 1.2 - 0.3 / n; });
  fit_polynomial(r, 2);
  EXPECT_NEAR(r.fitted_limit, 1.2, 1e-5);
  EXPECT_NEAR(r.fitted_rate, 1.0, 1e-3);
}

TEST(FitPolynomial, ConstantSequence) {
  ConvergenceReport r = series(1, 10, [](double) { return 0.81; });
  fit_polynomial(r, 2);
  EXPECT_TRUE(std::isinf(r.fitted_rate));
  EXPECT_EQ(r.residual_rms, 0.0);
  EXPECT_EQ(r.fitted_limit, 0.81);
}

TEST(FitGeometric, RecoversRatio) {
  ConvergenceReport r = series(1, 8, [](double m) { return 2.0 - 0.4 * std::pow(0.3, m); });
  fit_geometric(r);
  EXPECT_EQ(r.fit_kind, FitKind::Geometric);
  EXPECT_NEAR(r.fitted_rate, 0.3, 1e-9);
  EXPECT_NEAR(r.fitted_limit, 2.0, 1e-9);
  EXPECT_LT(r.residual_rms, 1e-9);
}

TEST(FitGeometric, FlatSequenceLeavesRateUndefined) {
  ConvergenceReport r = series(1, 6, [](double) { return 1.0; });
  fit_geometric(r);
  EXPECT_TRUE(std::isnan(r.fitted_rate));
  EXPECT_EQ(r.fitted_limit, 1.0);
}

}  // namespace
}  // namespace renyirate
