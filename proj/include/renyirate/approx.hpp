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
#include <span>
#include <vector>

#include "renyirate/enumeration.hpp"
#include "renyirate/fit.hpp"
#include "renyirate/process.hpp"
#include "renyirate/spectral.hpp"

namespace renyirate {

/// Order-m Markov process matching a source's (m+1)-dimensional marginals.
class MarkovApproximation {
 public:
  MarkovApproximation() = default;
  MarkovApproximation(std::size_t alphabet, std::size_t order, std::vector<double> table,
                      FiniteDistribution initial_blocks);

  std::size_t alphabet() const noexcept { return alphabet_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t histories() const noexcept { return initial_.size(); }
  /// p(s | history u), u indexed lexicographically over A^m.
  double conditional(std::size_t u, std::size_t s) const { return table_[u * alphabet_ + s]; }
  std::span<const double> table() const noexcept { return table_; }
  const FiniteDistribution& initial_blocks() const noexcept { return initial_; }

  ProcessModel as_process() const;

 private:
  std::size_t alphabet_ = 0;
  std::size_t order_ = 0;
  std::vector<double> table_;
  FiniteDistribution initial_;
};

/// First-order chain on A^m blocks; state u moves to (u mod A^(m-1)) * A + s.
struct BlockLiftedChain {
  std::size_t alphabet = 0;
  std::size_t order = 0;
  MarkovChain chain;

  static std::size_t successor(std::size_t u, std::size_t s, std::size_t alphabet, std::size_t modulus) {
    return (u % modulus) * alphabet + s;
  }
};

/// Builds the order-m approximation from exact (m+1)-joints of p.
MarkovApproximation markov_approximation(const ProcessModel& p, std::size_t m,
                                         const EnumerationOptions& opts = {});

/// Same, from a precomputed table of (m+1)-joints in lexicographic order.
MarkovApproximation approximation_from_joints(std::span<const double> joints, std::size_t alphabet,
                                              std::size_t m, Exec exec = Exec::Parallel);

BlockLiftedChain block_lift(const MarkovApproximation& a);

EntropyValue renyi_rate_approx(const MarkovApproximation& a, double alpha, double base = kDefaultBase);

/// Estimates (m, H_alpha(Y^(m))) for m = 1..m_max with a geometric fit of the
/// successive differences.
ConvergenceReport approx_rate_sequence(const ProcessModel& p, double alpha, std::size_t m_max,
                                       double base = kDefaultBase, const EnumerationOptions& opts = {});

struct DeltaDiagnostic {
  double max_abs_entry = 0.0;
  /// Structural successors per row (the smallest over rows; equals A when
  /// every row has the full overlap pattern).
  std::size_t positive_entries_per_row = 0;
};

/// Compares R^(m+1) with the order-m matrix upscaled to A^(m+1) states.
DeltaDiagnostic delta_matrix_diagnostic(const ProcessModel& p, std::size_t m, double alpha,
                                        const EnumerationOptions& opts = {});

}  // namespace renyirate
