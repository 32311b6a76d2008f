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
#include <string_view>
#include <vector>

#include "renyirate/cutstack.hpp"

namespace renyirate::counterexample {

using cutstack::Integer;
using cutstack::Rational;

enum class Mode { Faithful, Toy };

std::string_view mode_name(Mode mode) noexcept;

/// Parameters of the construction: alpha_m = 1/(m+N)^3, beta_m = 1/(m+N)^2,
/// N + 1 = 2^(l1/3), epsilon_m = 2^-m.
struct ConstructionParams {
  Mode mode = Mode::Toy;
  unsigned l1 = 6;
  unsigned long n_offset = 3;
  /// True when head + tail_upper < 1/6 (the entropy bound exceeds 1/2).
  bool faithful = false;
  /// 1/(l1 2^(2 l1/3 - 1)), the entropy deficit of G(1) below 2/3.
  double head = 0.0;
  /// Rigorous upper bound on sum_{m>=2} H_b(beta_m) in bits.
  double tail_upper = 0.0;
  /// The epsilon-independence test on the fold is enforced only when true;
  /// toy mode keeps the fold small so that every level stays enumerable.
  bool enforce_independence = true;
  std::size_t toy_fold = 2;
  std::size_t max_fold = std::size_t{1} << 20;
  /// Representation limits: interval-backed columns, pooled labels and
  /// column-measure classes.
  std::size_t interval_cap = 4096;
  std::size_t label_cap = std::size_t{1} << 17;
  std::size_t class_cap = std::size_t{1} << 16;

  Rational alpha(std::size_t m) const;
  Rational beta(std::size_t m) const;
  Rational epsilon(std::size_t m) const;
  /// H(G(1)) = 2/3 - head.
  double g1_entropy() const { return 2.0 / 3.0 - head; }
  /// H(G(1)) - tail_upper: lower bound on the entropy of the limit process.
  double limit_entropy_lower_bound() const { return g1_entropy() - tail_upper; }
};

/// Upper bound on sum_{j >= first} H_b(1/j^2) in bits: exact partial sum to
/// `cutoff`, then the integral bound (2 ln J + 3) / (J ln 2) on the rest.
double binary_entropy_tail_upper(unsigned long first, unsigned long cutoff);

/// Faithful: smallest l1 (multiple of 3, at most 60) whose parameters satisfy
/// the 1/6 constraint; NoFeasibleParams otherwise. Toy: l1 = 6, N = 3.
ConstructionParams select_parameters(Mode mode);
/// Parameters for an arbitrary l1 (multiple of 3, >= 3).
ConstructionParams params_for(unsigned l1, Mode mode);

struct HeightChoice {
  std::size_t fold = 1;
  Integer next_height;
  /// epsilon(S, S^<M>) for S = {L(m,2), R(m)}, when computable.
  std::optional<double> epsilon;
  /// epsilon <= epsilon_m was verified.
  bool certified = false;
  /// (1 - (m+1)/l_{m+1}) beta_{m+1} >= alpha_{m+1}.
  bool condition_b = false;
};

/// G(m) = {L(m), R(m)}. R(m) is held in whichever representations stayed
/// within the configured caps.
struct ConstructionLevel {
  std::size_t m = 1;
  Integer height;
  /// lambda(L(m)) = beta_m.
  Rational left_measure;
  double entropy_lower_bound = 0.0;
  /// Normalized Shannon entropy recomputed from labels, when available.
  std::optional<double> entropy;

  std::optional<cutstack::Column> left_column;
  std::optional<cutstack::Gadget> right_gadget;
  std::optional<cutstack::LabelDistribution> right_labels;
  std::optional<cutstack::ColumnClasses> right_classes;

  /// The step that produced this level (absent for m = 1).
  std::optional<HeightChoice> choice;

  std::optional<cutstack::Gadget> gadget() const;
  /// Pooled labels of all of G(m).
  std::optional<cutstack::LabelDistribution> labels() const;
  /// Label of L(m).
  std::string all_ones() const;
};

ConstructionLevel build_g1(const ConstructionParams& params);

HeightChoice choose_height(const ConstructionLevel& level, const ConstructionParams& params);

ConstructionLevel advance_level(const ConstructionLevel& level, const ConstructionParams& params,
                                const HeightChoice& choice);

/// epsilon(S, S^<M>) on the interval-backed form, S = {L(m,2), R(m)};
/// nullopt when the expansion exceeds interval_cap.
std::optional<Rational> interval_epsilon(const ConstructionLevel& level, const ConstructionParams& params,
                                         std::size_t fold);

/// (1 - m/l_m) beta_m; PropertyViolated if below alpha_m.
Rational all_ones_lower_bound(const ConstructionLevel& level, const ConstructionParams& params);

/// H(G(1)) - sum_{j=2}^m H_b(beta_j) for m = 1..m_max (index m-1). Faithful
/// parameters must keep every value above 1/2 (PropertyViolated otherwise).
std::vector<double> entropy_lower_bound_sequence(const ConstructionParams& params, std::size_t m_max);

/// b_m = (alpha / ((1 - alpha) m)) log2 alpha_m.
double renyi_upper_bound(const ConstructionParams& params, double alpha, std::size_t m);
/// b_1..b_m_max; alpha must exceed 1. Checks b_m >= 0 and b_{m+1} < b_m.
std::vector<double> renyi_upper_bound_sequence(const ConstructionParams& params, double alpha, std::size_t m_max);

/// (1/m) log2 alpha_m.
double property_a_value(const ConstructionParams& params, std::size_t m);
/// |(1/m) log2 alpha_m| shrinks across m = 10, 100, ..., m_max and ends below
/// 1e-3.
bool property_a_holds(const ConstructionParams& params, std::size_t m_max = 1000000);

/// (1/((1-alpha) k)) log2 sum_a P_k(a)^alpha over the k-block distribution of
/// G(m), k = 1..k_max; alpha == 1 gives the per-symbol Shannon value.
std::vector<double> empirical_prefix_renyi(const ConstructionLevel& level, double alpha, std::size_t k_max);

struct Verdict {
  Mode mode = Mode::Toy;
  bool faithful = false;
  bool property_a = false;
  bool property_b = false;
  /// Lower bound on the entropy of the limit process.
  double property_d_bound = 0.0;
  /// property_d_bound minus the largest requested Renyi bound at m = 10^4.
  double renyi_gap = 0.0;
};

struct Construction {
  ConstructionParams params;
  std::vector<ConstructionLevel> levels;
  Verdict verdict;
};

/// Builds levels 1..levels and evaluates the verdict for the given alphas.
Construction run_construction(const ConstructionParams& params, std::size_t levels,
                              const std::vector<double>& alphas);

}  // namespace renyirate::counterexample
