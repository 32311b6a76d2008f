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

#include "renyirate/fit.hpp"

#include <algorithm>
#include <cmath>

#include "renyirate/error.hpp"

namespace renyirate {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Differences below this (relative to the value scale) are solver noise.
constexpr double kDifferenceFloor = 1e-10;

struct PolyCandidate {
  double limit = 0.0;
  LineFit line;
  double value_rms = 0.0;
};

PolyCandidate evaluate_limit(const std::vector<double>& logn, const std::vector<double>& v, double limit,
                             double sign) {
  std::vector<double> y(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) y[i] = std::log(std::abs(v[i] - limit));
  PolyCandidate c;
  c.limit = limit;
  c.line = least_squares(logn, y);
  double ss = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double pred = limit + sign * std::exp(c.line.intercept + c.line.slope * logn[i]);
    ss += (v[i] - pred) * (v[i] - pred);
  }
  c.value_rms = std::sqrt(ss / static_cast<double>(v.size()));
  return c;
}

}  // namespace

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) fail(ErrorKind::OutOfRange, "least squares needs >= 2 paired points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) fail(ErrorKind::OutOfRange, "least squares needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / static_cast<double>(n));
  return f;
}

void fit_polynomial(ConvergenceReport& report, std::size_t fit_from) {
  report.fit_kind = FitKind::Polynomial;
  std::vector<double> logn;
  std::vector<double> v;
  for (const Estimate& e : report.estimates) {
    if (e.index >= fit_from && e.index > 0) {
      logn.push_back(std::log(static_cast<double>(e.index)));
      v.push_back(e.value);
    }
  }
  report.fitted_limit = report.estimates.empty() ? kNaN : report.estimates.back().value;
  report.fitted_rate = kNaN;
  report.fitted_scale = kNaN;
  report.residual_rms = kNaN;
  if (v.empty()) return;

  auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double range = hi - lo;
  if (range <= 1e-12 * std::max(1.0, std::abs(hi))) {
    report.fitted_limit = v.back();
    report.fitted_rate = std::numeric_limits<double>::infinity();
    report.fitted_scale = 0.0;
    report.residual_rms = 0.0;
    return;
  }
  if (v.size() < 3) return;

  double trend = v.back() - v[v.size() - 2];
  if (trend == 0.0) trend = v.back() - v.front();
  // Decreasing sequences approach their limit from above.
  const double sign = trend < 0.0 ? 1.0 : -1.0;
  const double anchor = trend < 0.0 ? lo : hi;
  auto at = [&](double log_offset) {
    return evaluate_limit(logn, v, anchor - sign * std::exp(log_offset), sign);
  };

  const double t_lo = std::log(range * 1e-8);
  const double t_hi = std::log(range * 1e4);
  constexpr int kGrid = 240;
  int best = 0;
  double best_rms = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    double t = t_lo + (t_hi - t_lo) * i / kGrid;
    double r = at(t).value_rms;
    if (r < best_rms) {
      best_rms = r;
      best = i;
    }
  }
  const double step = (t_hi - t_lo) / kGrid;
  double a = t_lo + step * std::max(best - 1, 0);
  double b = t_lo + step * std::min(best + 1, kGrid);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = at(c).value_rms;
  double fd = at(d).value_rms;
  for (int it = 0; it < 100 && (b - a) > 1e-10; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = at(c).value_rms;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = at(d).value_rms;
    }
  }
  PolyCandidate fit = at(0.5 * (a + b));
  PolyCandidate grid_fit = at(t_lo + step * best);
  if (grid_fit.value_rms < fit.value_rms) fit = grid_fit;
  report.fitted_limit = fit.limit;
  report.fitted_rate = -fit.line.slope;
  report.fitted_scale = std::exp(fit.line.intercept);
  report.residual_rms = fit.line.rms;
}

void fit_geometric(ConvergenceReport& report) {
  report.fit_kind = FitKind::Geometric;
  report.fitted_limit = report.estimates.empty() ? kNaN : report.estimates.back().value;
  report.fitted_rate = kNaN;
  report.fitted_scale = kNaN;
  report.residual_rms = kNaN;
  std::vector<double> idx;
  std::vector<double> logd;
  double last_signed = 0.0;
  for (std::size_t i = 0; i + 1 < report.estimates.size(); ++i) {
    const Estimate& e0 = report.estimates[i];
    const Estimate& e1 = report.estimates[i + 1];
    double diff = e1.value - e0.value;
    double scale = std::max(1.0, std::abs(e1.value));
    if (std::abs(diff) > kDifferenceFloor * scale) {
      idx.push_back(static_cast<double>(e0.index));
      logd.push_back(std::log(std::abs(diff)));
      last_signed = diff;
    }
  }
  if (idx.size() < 2) return;
  LineFit f = least_squares(idx, logd);
  double rho = std::exp(f.slope);
  report.fitted_rate = rho;
  report.fitted_scale = std::exp(f.intercept);
  report.residual_rms = f.rms;
  if (rho < 1.0) {
    // Remaining differences after the last one summed as a geometric series.
    double last_abs = std::abs(last_signed);
    double tail = last_abs * rho / (1.0 - rho);
    report.fitted_limit = report.estimates.back().value + (last_signed < 0.0 ? -tail : tail);
  }
}

}  // namespace renyirate
