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

#include "renyirate/entropy.hpp"

#include <algorithm>
#include <string>

#include "renyirate/error.hpp"

namespace renyirate {

FiniteDistribution::FiniteDistribution(std::vector<double> probs, bool normalize)
    : probs_(std::move(probs)) {
  if (probs_.empty()) fail(ErrorKind::InvalidDistribution, "empty distribution");
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    double p = probs_[i];
    if (!std::isfinite(p) || p < 0.0) {
      fail(ErrorKind::InvalidDistribution, "entry " + std::to_string(i) + " is negative or not finite");
    }
    total += p;
  }
  if (normalize) {
    if (!(total > 0.0)) fail(ErrorKind::InvalidDistribution, "no positive mass to normalize");
    for (double& p : probs_) p /= total;
  } else if (std::abs(total - 1.0) > kDistributionTolerance) {
    fail(ErrorKind::InvalidDistribution, "probabilities sum to " + std::to_string(total));
  }
  zero_atoms_ = static_cast<std::size_t>(std::count(probs_.begin(), probs_.end(), 0.0));
}

FiniteDistribution FiniteDistribution::uniform(std::size_t k) {
  if (k == 0) fail(ErrorKind::InvalidDistribution, "empty distribution");
  return FiniteDistribution(std::vector<double>(k, 1.0 / static_cast<double>(k)), true);
}

void check_base(double base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    fail(ErrorKind::OutOfRange, "logarithm base must be finite and > 1");
  }
}

EntropyValue shannon_entropy(const FiniteDistribution& d, double base) {
  check_base(base);
  // Terms are summed in sorted order so that relabelling the atoms cannot
  // change a single bit of the result.
  std::vector<double> terms;
  terms.reserve(d.size());
  for (double p : d.probs()) {
    if (p > 0.0) terms.push_back(-p * std::log(p));
  }
  std::sort(terms.begin(), terms.end());
  double h = 0.0;
  for (double t : terms) h += t;
  return {h / std::log(base), 1.0, base};
}

EntropyValue renyi_entropy(const FiniteDistribution& d, double alpha, double base) {
  check_base(base);
  if (!std::isfinite(alpha)) fail(ErrorKind::NonAdmissibleAlpha, "alpha must be finite");
  if (alpha == 1.0) return shannon_entropy(d, base);
  if (alpha <= 0.0 && d.has_zero_atoms()) {
    fail(ErrorKind::NonAdmissibleAlpha, "alpha <= 0 is undefined for a distribution with zero atoms");
  }
  std::vector<double> terms;
  terms.reserve(d.size());
  for (double p : d.probs()) {
    if (p > 0.0) terms.push_back(alpha * std::log(p));
  }
  std::sort(terms.begin(), terms.end());
  LogSumExp acc;
  for (double t : terms) acc.add(t);
  return {acc.value() / (1.0 - alpha) / std::log(base), alpha, base};
}

double binary_entropy(double p, double base) {
  check_base(base);
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorKind::OutOfRange, "binary entropy needs p in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  double q = 1.0 - p;
  return (-p * std::log(p) - q * std::log1p(-p)) / std::log(base);
}

}  // namespace renyirate
