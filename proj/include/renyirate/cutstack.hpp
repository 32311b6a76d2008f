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

#include <gmpxx.h>

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "renyirate/entropy.hpp"

namespace renyirate::cutstack {

using Rational = mpq_class;
using Integer = mpz_class;

/// log of a positive rational in natural units, safe for huge numerators and
/// denominators.
double log_rational(const Rational& q);
double to_double(const Rational& q);
std::string to_string(const Rational& q);
/// Parses "a", "-a" or "a/b" exactly; throws ParseError.
Rational parse_rational(std::string_view s);

struct RationalInterval {
  Rational start;
  Rational width;

  Rational end() const { return start + width; }
  bool operator==(const RationalInterval&) const = default;
};

/// One level of a column. A level is a single interval unless the column was
/// produced by merging, in which case it is the ordered union of pieces.
struct Level {
  std::vector<RationalInterval> pieces;

  Rational width() const;
  bool operator==(const Level&) const = default;
};

/// A tower of equal-width disjoint levels, bottom first, with one label
/// symbol per level.
class Column {
 public:
  Column() = default;
  Column(std::vector<Level> levels, std::string label);

  /// Height-h column whose level j is [start + j*width, start + (j+1)*width).
  static Column contiguous(const Rational& start, const Rational& width, std::string label);

  std::size_t height() const noexcept { return levels_.size(); }
  const Rational& width() const noexcept { return width_; }
  Rational measure() const { return width_ * static_cast<unsigned long>(levels_.size()); }
  const std::string& label() const noexcept { return label_; }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  /// Start of the leftmost base piece (used for canonical ordering).
  const Rational& base_start() const { return levels_.front().pieces.front().start; }

  /// Vertical slice at width parameters [from, to) of this column; every
  /// level contributes the same parameter range of its piece sequence.
  Column slice(const Rational& from, const Rational& to) const;

  /// Throws WidthMismatch on unequal level widths, OverlappingSupports on
  /// intersecting levels.
  void validate() const;

  bool operator==(const Column&) const = default;

 private:
  std::vector<Level> levels_;
  std::string label_;
  Rational width_;
};

class Gadget {
 public:
  Gadget() = default;
  explicit Gadget(std::vector<Column> columns) : columns_(std::move(columns)) {}

  const std::vector<Column>& columns() const noexcept { return columns_; }
  std::size_t size() const noexcept { return columns_.size(); }
  const Column& operator[](std::size_t i) const { return columns_[i]; }

  Rational width() const;
  Rational measure() const;
  /// Common height, or 0 if heights differ.
  std::size_t uniform_height() const;

  /// Columns divided by the total width (the width distribution).
  std::vector<Rational> width_distribution() const;
  /// Column measures divided by the total measure.
  std::vector<Rational> measure_distribution() const;

  /// Columns sorted by base_start.
  Gadget canonicalized() const;

  /// All pieces of all levels; throws OverlappingSupports if two intersect.
  void validate() const;

  bool operator==(const Gadget&) const = default;

 private:
  std::vector<Column> columns_;
};

/// Exact union of the supports as sorted disjoint maximal intervals.
std::vector<RationalInterval> support(const Gadget& g);

std::vector<Gadget> cut_copies(const Gadget& g, const std::vector<Rational>& pi);

Column stack(const Column& lower, const Column& upper);

/// S * S': column C_i of S is cut by the width shares of S', each C'_j is cut
/// by the width shares of S, and C'_{j,i} is put on top of C_{i,j}. Output
/// order is i-major, j-minor.
Gadget independent_cut_stack(const Gadget& s, const Gadget& s2);

Gadget m_fold_ics(const Gadget& s, std::size_t m);

struct SplitGadget {
  Column left;
  Gadget right;

  Gadget combined() const;
};

/// <S_L>_m together with S_R^<m>.
SplitGadget fractional_ics(const Column& left, const Gadget& right, std::size_t m);

/// Pools equal-height, equal-label columns level by level, in order of first
/// appearance.
Gadget merge_gadget(const Gadget& g);

double normalized_shannon_entropy(const Gadget& g, double base = kDefaultBase);

/// Exact sum over column pairs of |lambda(C cap D) - lambda(C) lambda(D)|.
Rational epsilon_independence_exact(const Gadget& s, const Gadget& s2);
double epsilon_independence(const Gadget& s, const Gadget& s2);

/// Label measures pooled over columns, for gadgets of one common height.
struct LabelDistribution {
  std::map<std::string, Rational> measure;
  std::size_t height = 0;

  Rational total() const;
};

LabelDistribution label_distribution(const Gadget& g);

/// Label-level M-fold independent cutting and stacking: the measure of a
/// concatenation b_1..b_M is mu * prod(lambda(b_i) / mu).
LabelDistribution m_fold_labels(const LabelDistribution& d, std::size_t m);

/// Normalized Shannon entropy from pooled labels; needs total measure 1.
double normalized_shannon_entropy(const LabelDistribution& d, double base = kDefaultBase);

/// p_k(a | C): share of the h - k + 1 windows of the label equal to a.
Rational block_frequency(const Column& c, std::string_view a);
Rational block_frequency(std::string_view label, std::string_view a);

using BlockDistribution = std::map<std::string, Rational>;

/// sum_C p_k(a | C) lambda(C) for every length-k word a that occurs.
BlockDistribution gadget_block_distribution(const Gadget& g, std::size_t k);
BlockDistribution gadget_block_distribution(const LabelDistribution& d, std::size_t k);

/// Length-k marginal of the concatenated-block process of a uniform-height
/// gadget (k <= h); windows that straddle a block boundary are weighted by
/// the product measure over ordered column pairs.
BlockDistribution concatenated_block_distribution(const Gadget& g, std::size_t k);
BlockDistribution concatenated_block_distribution(const LabelDistribution& d, std::size_t k);
Rational concatenated_block_probability(const Gadget& g, std::string_view a);

/// Column measures of a uniform-height gadget grouped as measure -> count.
using ColumnClasses = std::map<Rational, Integer>;

ColumnClasses column_classes(const Gadget& g);

/// Column classes of S^<M> (Kronecker law with equal measures pooled).
ColumnClasses m_fold_classes(const ColumnClasses& c, std::size_t m);

/// epsilon(S, S^<M>) for a uniform-height S given only its column classes:
/// mu * sum_C E|n_C/M - mu p_C| with n_C ~ Binomial(M, p_C), p_C = lambda(C)/mu.
double reduced_epsilon(const ColumnClasses& c, std::size_t m);
Rational reduced_epsilon_exact(const ColumnClasses& c, std::size_t m);

/// Text form: one column per line, levels separated by ';', each level
/// "start width [+ start width ...] symbol". '#' starts a comment.
Gadget read_gadget(std::istream& in);
void write_gadget(std::ostream& out, const Gadget& g);

}  // namespace renyirate::cutstack
