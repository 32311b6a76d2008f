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

#include "renyirate/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "renyirate/error.hpp"

namespace renyirate {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

MarkovChain::MarkovChain(NonnegMatrix transition, std::optional<FiniteDistribution> initial)
    : transition_(std::move(transition)) {
  const std::size_t k = transition_.dim();
  if (k == 0) fail(ErrorKind::InvalidMatrix, "chain needs at least one state");
  for (std::size_t i = 0; i < k; ++i) {
    double s = 0.0;
    for (double v : transition_.row_values(i)) s += v;
    if (std::abs(s - 1.0) > kRowSumTolerance) {
      fail(ErrorKind::InvalidMatrix, "row " + std::to_string(i) + " sums to " + fmt(s));
    }
  }
  irreducible_ = transition_.irreducible();
  period_ = irreducible_ ? transition_.period() : 0;
  if (initial) {
    if (initial->size() != k) fail(ErrorKind::InvalidDistribution, "initial law has wrong length");
    initial_ = std::move(*initial);
  } else if (irreducible_) {
    initial_ = stationary_distribution(*this);
  } else {
    initial_ = FiniteDistribution::uniform(k);
  }
}

MarkovChain MarkovChain::from_dense(std::size_t k, std::span<const double> rows,
                                    std::optional<FiniteDistribution> initial) {
  return MarkovChain(NonnegMatrix::from_dense(k, rows), std::move(initial));
}

NonnegMatrix alpha_power_matrix(const NonnegMatrix& p, double alpha) {
  if (!std::isfinite(alpha)) fail(ErrorKind::NonAdmissibleAlpha, "alpha must be finite");
  const std::size_t k = p.dim();
  if (alpha <= 0.0 && p.nonzeros() != k * k) {
    fail(ErrorKind::NonAdmissibleAlpha, "alpha <= 0 needs a transition matrix without zero entries");
  }
  if (alpha == 1.0) return p;
  std::vector<std::vector<NonnegMatrix::Entry>> rows(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto cols = p.row_cols(i);
    auto vals = p.row_values(i);
    rows[i].reserve(cols.size());
    for (std::size_t e = 0; e < cols.size(); ++e) rows[i].push_back({cols[e], std::pow(vals[e], alpha)});
  }
  return NonnegMatrix::from_rows(k, std::move(rows));
}

std::pair<double, double> collatz_wielandt_bounds(const NonnegMatrix& r, std::span<const double> x,
                                                  Exec exec) {
  if (x.size() != r.dim()) fail(ErrorKind::InvalidMatrix, "vector length does not match matrix");
  for (double v : x) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::NonPositiveVector, "x must be strictly positive");
  }
  std::vector<double> y(x.size());
  r.multiply(x, y, exec);
  double lo = y[0] / x[0];
  double hi = lo;
  for (std::size_t i = 1; i < x.size(); ++i) {
    double q = y[i] / x[i];
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return {lo, hi};
}

PerronResult perron_eigen(const NonnegMatrix& r, const PerronOptions& opts) {
  const std::size_t k = r.dim();
  if (k == 0) fail(ErrorKind::InvalidMatrix, "empty matrix");
  if (!r.irreducible()) fail(ErrorKind::Reducible, "support digraph is not strongly connected");

  // A periodic support makes plain power iteration oscillate; iterating with
  // R + sI (same Perron vector) restores convergence.
  double shift = 0.0;
  if (r.period() > 1) {
    for (std::size_t i = 0; i < k; ++i) {
      double s = 0.0;
      for (double v : r.row_values(i)) s += v;
      shift = std::max(shift, s);
    }
  }

  std::vector<double> x(k, 1.0 / static_cast<double>(k));
  std::vector<double> y(k);
  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    r.multiply(x, y, opts.exec);
    lo = y[0] / x[0];
    hi = lo;
    for (std::size_t i = 1; i < k; ++i) {
      double q = y[i] / x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    double lambda = 0.5 * (lo + hi);
    if (hi - lo <= opts.relative_width * lambda) {
      PerronResult res;
      res.eigenvalue = lambda;
      res.iterations = it;
      res.residual = std::max(hi - lambda, lambda - lo);
      res.eigenvector = x;
      return res;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      y[i] += shift * x[i];
      total += y[i];
    }
    if (!(total > 0.0) || !std::isfinite(total)) break;
    for (std::size_t i = 0; i < k; ++i) {
      x[i] = y[i] / total;
      if (!(x[i] > 0.0)) x[i] = std::numeric_limits<double>::min();
    }
  }
  fail(ErrorKind::NoConvergence,
       "power iteration hit the cap with bracket [" + fmt(lo) + ", " + fmt(hi) + "]");
}

FiniteDistribution stationary_distribution(const MarkovChain& mc) {
  const NonnegMatrix& p = mc.transition();
  if (!p.irreducible()) fail(ErrorKind::Reducible, "stationary law is not unique for a reducible chain");
  const std::size_t k = p.dim();
  const bool lazy = p.period() != 1;
  std::vector<double> pi(k, 1.0 / static_cast<double>(k));
  std::vector<double> next(k);
  constexpr std::size_t kCap = 1000000;
  for (std::size_t it = 0; it < kCap; ++it) {
    p.multiply_transpose(pi, next);
    double resid = 0.0;
    for (std::size_t i = 0; i < k; ++i) resid += std::abs(next[i] - pi[i]);
    if (resid <= 1e-13) break;
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      pi[i] = lazy ? 0.5 * (pi[i] + next[i]) : next[i];
      total += pi[i];
    }
    for (double& v : pi) v /= total;
  }
  return FiniteDistribution(std::move(pi), true);
}

EntropyValue shannon_rate_markov(const MarkovChain& mc, double base) {
  check_base(base);
  if (!mc.irreducible()) fail(ErrorKind::Reducible, "Shannon rate needs an irreducible chain");
  FiniteDistribution pi = stationary_distribution(mc);
  const NonnegMatrix& p = mc.transition();
  double h = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    double row = 0.0;
    for (double v : p.row_values(i)) row -= v * std::log(v);
    h += pi[i] * row;
  }
  return {h / std::log(base), 1.0, base};
}

EntropyValue renyi_rate_markov(const MarkovChain& mc, double alpha, double base) {
  check_base(base);
  if (!mc.irreducible()) fail(ErrorKind::Reducible, "Renyi rate needs an irreducible chain");
  if (!mc.aperiodic()) {
    fail(ErrorKind::Periodic, "chain has period " + std::to_string(mc.period()));
  }
  if (alpha == 1.0) return shannon_rate_markov(mc, base);
  NonnegMatrix r = alpha_power_matrix(mc.transition(), alpha);
  PerronResult pr = perron_eigen(r);
  return {std::log(pr.eigenvalue) / (1.0 - alpha) / std::log(base), alpha, base};
}

}  // namespace renyirate
