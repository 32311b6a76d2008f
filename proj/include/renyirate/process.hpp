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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "renyirate/entropy.hpp"
#include "renyirate/spectral.hpp"

namespace renyirate {

using Symbol = std::uint32_t;
using Sequence = std::vector<Symbol>;

enum class ProcessKind { Iid, Markov, Hmm };

/// Finite-alphabet process with a finite conditional description.
///
/// iid:    one marginal law.
/// markov: order m >= 1, a row-stochastic table with A^m rows (history in
///         lexicographic order, oldest symbol most significant) and A columns,
///         plus a law over the first m symbols.
/// hmm:    hidden chain observed through a row-stochastic emission matrix with
///         one row per hidden state and A columns.
class ProcessModel {
 public:
  static ProcessModel iid(FiniteDistribution marginal);

  /// Without an initial block law the stationary law of the block-lifted chain
  /// is used (uniform if that chain is reducible).
  static ProcessModel markov(std::size_t alphabet, std::size_t order, std::vector<double> table,
                             std::optional<FiniteDistribution> initial_blocks = std::nullopt);

  static ProcessModel hmm(MarkovChain hidden, std::size_t alphabet, std::vector<double> emission);

  ProcessKind kind() const noexcept { return kind_; }
  std::size_t alphabet() const noexcept { return alphabet_; }

  // iid
  const FiniteDistribution& marginal() const noexcept { return marginal_; }
  // markov
  std::size_t order() const noexcept { return order_; }
  std::span<const double> table() const noexcept { return table_; }
  const FiniteDistribution& initial_blocks() const noexcept { return initial_blocks_; }
  // hmm
  const MarkovChain& hidden() const noexcept { return hidden_; }
  std::span<const double> emission() const noexcept { return emission_; }
  double emission_at(std::size_t x, std::size_t z) const { return emission_[x * alphabet_ + z]; }
  /// Hidden chain irreducible and aperiodic.
  bool hidden_ergodic() const noexcept { return hidden_ergodic_; }
  bool emission_positive() const noexcept { return emission_positive_; }

  // Log-domain helpers shared by the prefix walkers.
  double log_marginal(Symbol s) const { return log_marginal_[s]; }
  double log_transition(std::size_t ctx, Symbol s) const { return log_table_[ctx * alphabet_ + s]; }
  /// Log probability of the first d symbols (d <= order), encoded as an index.
  double log_prefix(std::size_t d, std::size_t index) const { return log_prefix_[d][index]; }
  std::size_t context_modulus() const noexcept { return context_modulus_; }

 private:
  ProcessKind kind_ = ProcessKind::Iid;
  std::size_t alphabet_ = 0;
  FiniteDistribution marginal_;
  std::vector<double> log_marginal_;
  std::size_t order_ = 0;
  std::vector<double> table_;
  std::vector<double> log_table_;
  FiniteDistribution initial_blocks_;
  std::vector<std::vector<double>> log_prefix_;
  std::size_t context_modulus_ = 1;  // A^(m-1)
  MarkovChain hidden_;
  std::vector<double> emission_;
  bool hidden_ergodic_ = false;
  bool emission_positive_ = false;
};

/// State reached after reading a prefix: absolute log probability plus what the
/// model needs to extend it by one symbol.
struct PrefixNode {
  double log_prob = 0.0;
  std::size_t depth = 0;
  std::size_t context = 0;    // markov: last min(depth, m) symbols as an index
  std::vector<double> pred;   // hmm: law of the next hidden state given the prefix
};

/// Incremental evaluation of prefix probabilities; the engine behind joint
/// probabilities, exhaustive enumeration and conditional tables.
class PrefixWalker {
 public:
  explicit PrefixWalker(const ProcessModel& model) : model_(&model) {}

  PrefixNode root() const;
  /// out = parent extended by s. out may not alias parent.
  void extend(const PrefixNode& parent, Symbol s, PrefixNode& out) const;
  PrefixNode walk(std::span<const Symbol> y) const;

  const ProcessModel& model() const noexcept { return *model_; }

 private:
  const ProcessModel* model_;
};

/// Exact joint probability of y (n >= 1).
double joint_probability(const ProcessModel& p, std::span<const Symbol> y);
double log_joint_probability(const ProcessModel& p, std::span<const Symbol> y);

/// p(next | history); an empty history gives the one-symbol marginal.
double conditional_probability(const ProcessModel& p, std::span<const Symbol> history, Symbol next);

/// Inverse-CDF sampling driven by a 64-bit Mersenne twister seeded with seed.
Sequence sample_path(const ProcessModel& p, std::size_t n, std::uint64_t seed);

/// Checks y against the alphabet; throws SymbolOutOfRange.
void check_symbols(const ProcessModel& p, std::span<const Symbol> y);

/// A^n, or nullopt if it exceeds cap.
std::optional<std::size_t> checked_power(std::size_t a, std::size_t n, std::size_t cap);

}  // namespace renyirate
