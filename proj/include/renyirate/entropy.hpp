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

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace renyirate {

inline constexpr double kDistributionTolerance = 1e-12;
inline constexpr double kDefaultBase = 2.0;

/// Probability vector over symbols 0..size()-1.
///
/// Construction validates non-negativity and that the entries sum to 1
/// within kDistributionTolerance (absolute). Pass normalize = true to rescale
/// an arbitrary non-negative vector with positive mass instead.
class FiniteDistribution {
 public:
  FiniteDistribution() = default;
  explicit FiniteDistribution(std::vector<double> probs, bool normalize = false);

  static FiniteDistribution uniform(std::size_t k);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  bool has_zero_atoms() const noexcept { return zero_atoms_ > 0; }
  std::size_t support_size() const noexcept { return probs_.size() - zero_atoms_; }

 private:
  std::vector<double> probs_;
  std::size_t zero_atoms_ = 0;
};

/// An entropy in units of log_base.
struct EntropyValue {
  double value = 0.0;
  double alpha = 1.0;
  double base = kDefaultBase;
};

/// Numerically stable log(sum exp(x_i)) accumulator. Order of add() calls is
/// the order of floating-point operations, so callers control reproducibility.
class LogSumExp {
 public:
  void add(double x) noexcept {
    if (x == -std::numeric_limits<double>::infinity()) return;
    if (x > max_) {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    } else {
      sum_ += std::exp(x - max_);
    }
  }
  void merge(const LogSumExp& other) noexcept {
    if (other.empty()) return;
    if (empty()) {
      *this = other;
      return;
    }
    if (other.max_ > max_) {
      sum_ = sum_ * std::exp(max_ - other.max_) + other.sum_;
      max_ = other.max_;
    } else {
      sum_ += other.sum_ * std::exp(other.max_ - max_);
    }
  }
  bool empty() const noexcept { return sum_ == 0.0; }
  double value() const noexcept {
    return empty() ? -std::numeric_limits<double>::infinity() : max_ + std::log(sum_);
  }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

/// Rényi entropy of order alpha; alpha == 1 gives the Shannon entropy.
/// Zero atoms are skipped for alpha > 0 and rejected for alpha <= 0.
EntropyValue renyi_entropy(const FiniteDistribution& d, double alpha, double base = kDefaultBase);

EntropyValue shannon_entropy(const FiniteDistribution& d, double base = kDefaultBase);

/// H_b(p) = -p log p - (1-p) log(1-p), with H_b(0) = H_b(1) = 0.
double binary_entropy(double p, double base = kDefaultBase);

/// Throws OutOfRange unless base > 1.
void check_base(double base);

}  // namespace renyirate
