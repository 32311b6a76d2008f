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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "renyirate/entropy.hpp"
#include "renyirate/parallel.hpp"
#include "renyirate/sparse_matrix.hpp"

namespace renyirate {

inline constexpr double kRowSumTolerance = 1e-12;

/// Finite-state Markov chain with validated structural flags.
class MarkovChain {
 public:
  MarkovChain() = default;

  /// Throws InvalidMatrix if a row does not sum to 1 within kRowSumTolerance.
  /// Without an initial law the stationary law is used when the chain is
  /// irreducible, the uniform law otherwise.
  explicit MarkovChain(NonnegMatrix transition, std::optional<FiniteDistribution> initial = std::nullopt);

  static MarkovChain from_dense(std::size_t k, std::span<const double> rows,
                                std::optional<FiniteDistribution> initial = std::nullopt);

  std::size_t states() const noexcept { return transition_.dim(); }
  const NonnegMatrix& transition() const noexcept { return transition_; }
  const FiniteDistribution& initial() const noexcept { return initial_; }
  bool irreducible() const noexcept { return irreducible_; }
  bool aperiodic() const noexcept { return period_ == 1; }
  std::size_t period() const noexcept { return period_; }

 private:
  NonnegMatrix transition_;
  FiniteDistribution initial_;
  bool irreducible_ = false;
  std::size_t period_ = 0;
};

struct PerronResult {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;  // strictly positive, sums to 1
  std::size_t iterations = 0;
  double residual = 0.0;  // max_i |[Rv]_i - lambda v_i| / v_i
};

struct PerronOptions {
  double relative_width = 1e-12;
  std::size_t max_iterations = 100000;
  Exec exec = Exec::Parallel;
};

/// Entrywise alpha-power r_ij = p_ij^alpha. Zero entries stay absent for
/// alpha > 0; alpha <= 0 requires every entry of P to be positive.
NonnegMatrix alpha_power_matrix(const NonnegMatrix& p, double alpha);

/// Collatz-Wielandt enclosure (min_i [Rx]_i/x_i, max_i [Rx]_i/x_i).
std::pair<double, double> collatz_wielandt_bounds(const NonnegMatrix& r, std::span<const double> x,
                                                  Exec exec = Exec::Parallel);

/// Perron root and vector by power iteration from the all-ones vector, stopped
/// when the Collatz-Wielandt bracket is narrower than relative_width * lambda.
PerronResult perron_eigen(const NonnegMatrix& r, const PerronOptions& opts = {});

FiniteDistribution stationary_distribution(const MarkovChain& mc);

EntropyValue renyi_rate_markov(const MarkovChain& mc, double alpha, double base = kDefaultBase);

/// Needs only irreducibility: the stationary law is unique for periodic chains too.
EntropyValue shannon_rate_markov(const MarkovChain& mc, double base = kDefaultBase);

}  // namespace renyirate
