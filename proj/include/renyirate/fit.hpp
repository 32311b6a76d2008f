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

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace renyirate {

enum class FitKind { Polynomial, Geometric };

struct Estimate {
  std::size_t index = 0;
  double value = 0.0;
};

/// A sequence of estimates with the fitted convergence model.
///
/// Polynomial: value_n ~ fitted_limit + sign * fitted_scale * n^(-fitted_rate).
///   A constant sequence reports fitted_rate = +inf and residual 0.
/// Geometric: |value_{m+1} - value_m| ~ fitted_scale * fitted_rate^m.
///   Fewer than two positive differences leave fitted_rate as NaN.
/// residual_rms is always measured in the log domain of the fitted quantity.
struct ConvergenceReport {
  std::vector<Estimate> estimates;
  double fitted_limit = std::numeric_limits<double>::quiet_NaN();
  double fitted_rate = std::numeric_limits<double>::quiet_NaN();
  double fitted_scale = std::numeric_limits<double>::quiet_NaN();
  double residual_rms = std::numeric_limits<double>::quiet_NaN();
  FitKind fit_kind = FitKind::Polynomial;
};

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 points with
/// distinct x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

/// Fits value_n = L + s C n^-gamma to the estimates with index >= fit_from,
/// scanning L beyond the extreme value and refining by golden section.
void fit_polynomial(ConvergenceReport& report, std::size_t fit_from = 2);

/// Fits successive differences geometrically and extrapolates the limit.
void fit_geometric(ConvergenceReport& report);

}  // namespace renyirate
