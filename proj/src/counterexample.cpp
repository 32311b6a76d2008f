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

#include "renyirate/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "renyirate/entropy.hpp"
#include "renyirate/error.hpp"

namespace renyirate::counterexample {

namespace {

constexpr unsigned kMaxL1 = 60;
constexpr std::size_t kRenyiEvaluationIndex = 10000;

bool power_within(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) return false;
    v *= base;
  }
  return v <= cap;
}

/// Upper bound on the number of distinct measures among M-fold products of k
/// classes: C(M + k - 1, k - 1).
double composition_count(std::size_t k, std::size_t m) {
  return std::exp(std::lgamma(static_cast<double>(m + k)) - std::lgamma(static_cast<double>(m + 1)) -
                  std::lgamma(static_cast<double>(k)));
}

std::string binary_label(unsigned long value, unsigned width) {
  std::string s(width, '0');
  for (unsigned i = 0; i < width; ++i) {
    if ((value >> i) & 1UL) s[width - 1 - i] = '1';
  }
  return s;
}

double hb_bits(const Rational& p) { return binary_entropy(cutstack::to_double(p), 2.0); }

}  // namespace

std::string_view mode_name(Mode mode) noexcept { return mode == Mode::Faithful ? "faithful" : "toy"; }

Rational ConstructionParams::alpha(std::size_t m) const {
  mpz_class d = mpz_class(static_cast<unsigned long>(m)) + n_offset;
  return Rational(1) / Rational(d * d * d);
}

Rational ConstructionParams::beta(std::size_t m) const {
  mpz_class d = mpz_class(static_cast<unsigned long>(m)) + n_offset;
  return Rational(1) / Rational(d * d);
}

Rational ConstructionParams::epsilon(std::size_t m) const {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(m));
  return Rational(1) / Rational(d);
}

double binary_entropy_tail_upper(unsigned long first, unsigned long cutoff) {
  if (first < 2 || cutoff < first) fail(ErrorKind::OutOfRange, "tail bound needs 2 <= first <= cutoff");
  // Smallest terms first.
  double partial = 0.0;
  for (unsigned long j = cutoff; j >= first; --j) {
    double jd = static_cast<double>(j);
    partial += binary_entropy(1.0 / (jd * jd), 2.0);
  }
  const double big_j = static_cast<double>(cutoff);
  const double remainder = (2.0 * std::log(big_j) + 3.0) / (big_j * std::log(2.0));
  // Slack for rounding in the partial sum.
  return partial + remainder + 1e-12;
}

ConstructionParams params_for(unsigned l1, Mode mode) {
  if (l1 < 3 || l1 % 3 != 0 || l1 > kMaxL1) {
    fail(ErrorKind::OutOfRange, "l1 must be a multiple of 3 in [3, " + std::to_string(kMaxL1) + "]");
  }
  ConstructionParams p;
  p.mode = mode;
  p.l1 = l1;
  p.n_offset = (1UL << (l1 / 3)) - 1;
  p.enforce_independence = mode == Mode::Faithful;
  p.head = 1.0 / (static_cast<double>(l1) * std::ldexp(1.0, static_cast<int>(2 * l1 / 3 - 1)));
  const unsigned long first = p.n_offset + 2;
  p.tail_upper = binary_entropy_tail_upper(first, std::max<unsigned long>(1000000UL, 4 * first));
  p.faithful = p.head + p.tail_upper < 1.0 / 6.0;
  return p;
}

ConstructionParams select_parameters(Mode mode) {
  if (mode == Mode::Toy) return params_for(6, Mode::Toy);
  for (unsigned l1 = 3; l1 <= kMaxL1; l1 += 3) {
    ConstructionParams p = params_for(l1, Mode::Faithful);
    if (p.faithful) return p;
  }
  fail(ErrorKind::NoFeasibleParams, "no l1 <= " + std::to_string(kMaxL1) + " satisfies the 1/6 constraint");
}

std::optional<cutstack::Gadget> ConstructionLevel::gadget() const {
  if (!left_column || !right_gadget) return std::nullopt;
  std::vector<cutstack::Column> cols = right_gadget->columns();
  cols.push_back(*left_column);
  return cutstack::Gadget(std::move(cols)).canonicalized();
}

std::string ConstructionLevel::all_ones() const { return std::string(height.get_ui(), '1'); }

std::optional<cutstack::LabelDistribution> ConstructionLevel::labels() const {
  if (!right_labels) return std::nullopt;
  cutstack::LabelDistribution d = *right_labels;
  d.measure[all_ones()] += left_measure;
  return d;
}

ConstructionLevel build_g1(const ConstructionParams& params) {
  const unsigned l1 = params.l1;
  const unsigned long k = 1UL << (2 * l1 / 3);
  const Rational width = Rational(1) / Rational(mpz_class(static_cast<unsigned long>(l1)) * k);
  const Rational column_span = width * static_cast<unsigned long>(l1);

  ConstructionLevel g;
  g.m = 1;
  g.height = l1;
  g.left_measure = column_span;
  g.entropy_lower_bound = params.g1_entropy();

  const std::string ones(l1, '1');
  auto right_label = [&](unsigned long j) { return j == k - 1 ? ones : binary_label(j - 1, l1); };

  if (k <= params.interval_cap) {
    g.left_column = cutstack::Column::contiguous(0, width, ones);
    std::vector<cutstack::Column> cols;
    cols.reserve(k - 1);
    for (unsigned long j = 1; j < k; ++j) {
      cols.push_back(cutstack::Column::contiguous(column_span * j, width, right_label(j)));
    }
    g.right_gadget = cutstack::Gadget(std::move(cols));
  }
  if (k <= params.label_cap) {
    cutstack::LabelDistribution d;
    d.height = l1;
    for (unsigned long j = 1; j < k; ++j) d.measure[right_label(j)] += column_span;
    g.right_labels = std::move(d);
  }
  g.right_classes = cutstack::ColumnClasses{{column_span, mpz_class(k - 1)}};
  if (auto d = g.labels()) g.entropy = cutstack::normalized_shannon_entropy(*d);
  return g;
}

namespace {

cutstack::ColumnClasses stacked_classes(const ConstructionLevel& level, const ConstructionParams& params) {
  cutstack::ColumnClasses s = *level.right_classes;
  s[level.left_measure - params.beta(level.m + 1)] += 1;
  return s;
}

bool condition_b(const ConstructionParams& params, std::size_t m, const Integer& height) {
  Rational share(mpz_class(height - static_cast<unsigned long>(m)), height);
  share.canonicalize();
  Rational lhs = share * params.beta(m);
  return lhs >= params.alpha(m);
}

}  // namespace

HeightChoice choose_height(const ConstructionLevel& level, const ConstructionParams& params) {
  const std::size_t next = level.m + 1;
  const Rational target = params.epsilon(level.m);
  std::optional<cutstack::ColumnClasses> s;
  if (level.right_classes) s = stacked_classes(level, params);

  const std::size_t start = params.enforce_independence ? 2 : std::max<std::size_t>(params.toy_fold, 1);
  for (std::size_t fold = start; fold <= params.max_fold; fold *= 2) {
    HeightChoice c;
    c.fold = fold;
    c.next_height = level.height * static_cast<unsigned long>(fold);
    c.condition_b = condition_b(params, next, c.next_height);
    if (!c.condition_b) continue;
    if (s) {
      c.epsilon = cutstack::reduced_epsilon(*s, fold);
      c.certified = *c.epsilon <= cutstack::to_double(target);
    }
    if (!params.enforce_independence || !s || c.certified) return c;
  }
  fail(ErrorKind::SearchCapExceeded, "no fold up to " + std::to_string(params.max_fold) + " satisfies the conditions at level " +
                                         std::to_string(level.m));
}

std::optional<Rational> interval_epsilon(const ConstructionLevel& level, const ConstructionParams& params,
                                         std::size_t fold) {
  if (!level.left_column || !level.right_gadget) return std::nullopt;
  if (!power_within(level.right_gadget->size() + 1, fold, params.interval_cap)) return std::nullopt;
  const Rational ratio = params.beta(level.m + 1) / level.left_measure;
  std::vector<cutstack::Gadget> parts = cutstack::cut_copies(cutstack::Gadget({*level.left_column}), {ratio, 1 - ratio});
  std::vector<cutstack::Column> cols = level.right_gadget->columns();
  cols.push_back(parts[1][0]);
  cutstack::Gadget s(std::move(cols));
  return cutstack::epsilon_independence_exact(s, cutstack::m_fold_ics(s, fold));
}

ConstructionLevel advance_level(const ConstructionLevel& level, const ConstructionParams& params,
                                const HeightChoice& choice) {
  const std::size_t fold = choice.fold;
  if (fold == 0) fail(ErrorKind::OutOfRange, "fold must be >= 1");
  const Rational beta_next = params.beta(level.m + 1);
  const Rational left_rest = level.left_measure - beta_next;

  ConstructionLevel g;
  g.m = level.m + 1;
  g.height = level.height * static_cast<unsigned long>(fold);
  g.left_measure = beta_next;
  g.entropy_lower_bound = level.entropy_lower_bound - hb_bits(beta_next);
  g.choice = choice;

  if (level.left_column && level.right_gadget &&
      power_within(level.right_gadget->size() + 1, fold, params.interval_cap)) {
    const Rational ratio = beta_next / level.left_measure;
    std::vector<cutstack::Gadget> parts =
        cutstack::cut_copies(cutstack::Gadget({*level.left_column}), {ratio, 1 - ratio});
    std::vector<cutstack::Column> cols = level.right_gadget->columns();
    cols.push_back(parts[1][0]);
    cutstack::SplitGadget split = cutstack::fractional_ics(parts[0][0], cutstack::Gadget(std::move(cols)), fold);
    g.left_column = std::move(split.left);
    g.right_labels = cutstack::label_distribution(split.right);
    g.right_gadget = std::move(split.right);
  } else if (level.right_labels) {
    cutstack::LabelDistribution s = *level.right_labels;
    s.measure[level.all_ones()] += left_rest;
    if (power_within(s.measure.size(), fold, params.label_cap)) g.right_labels = cutstack::m_fold_labels(s, fold);
  }

  if (level.right_classes) {
    cutstack::ColumnClasses s = stacked_classes(level, params);
    if (composition_count(s.size(), fold) <= static_cast<double>(params.class_cap)) {
      g.right_classes = cutstack::m_fold_classes(s, fold);
    }
  }
  if (auto d = g.labels()) g.entropy = cutstack::normalized_shannon_entropy(*d);
  return g;
}

Rational all_ones_lower_bound(const ConstructionLevel& level, const ConstructionParams& params) {
  const unsigned long m = static_cast<unsigned long>(level.m);
  Rational share(mpz_class(level.height - m), level.height);
  share.canonicalize();
  Rational bound = share * level.left_measure;
  if (bound < params.alpha(level.m)) {
    fail(ErrorKind::PropertyViolated, "property B: (1 - m/l_m) beta_m = " + cutstack::to_string(bound) +
                                          " is below alpha_m at m = " + std::to_string(level.m));
  }
  return bound;
}

std::vector<double> entropy_lower_bound_sequence(const ConstructionParams& params, std::size_t m_max) {
  if (m_max == 0) fail(ErrorKind::OutOfRange, "m_max must be >= 1");
  std::vector<double> out;
  out.reserve(m_max);
  double v = params.g1_entropy();
  for (std::size_t m = 1; m <= m_max; ++m) {
    if (m >= 2) v -= hb_bits(params.beta(m));
    if (params.faithful && !(v > 0.5)) {
      fail(ErrorKind::PropertyViolated, "property D: entropy lower bound " + std::to_string(v) +
                                            " is not above 1/2 at m = " + std::to_string(m));
    }
    out.push_back(v);
  }
  return out;
}

double renyi_upper_bound(const ConstructionParams& params, double alpha, std::size_t m) {
  if (!(alpha > 1.0)) fail(ErrorKind::OutOfRange, "the Renyi upper bound needs alpha > 1");
  if (m == 0) fail(ErrorKind::OutOfRange, "m must be >= 1");
  const double md = static_cast<double>(m);
  return alpha / (alpha - 1.0) * 3.0 * std::log2(md + static_cast<double>(params.n_offset)) / md;
}

std::vector<double> renyi_upper_bound_sequence(const ConstructionParams& params, double alpha, std::size_t m_max) {
  std::vector<double> out;
  out.reserve(m_max);
  for (std::size_t m = 1; m <= m_max; ++m) {
    double b = renyi_upper_bound(params, alpha, m);
    if (b < 0.0 || (!out.empty() && !(b < out.back()))) {
      fail(ErrorKind::PropertyViolated, "Renyi bound is not decreasing at m = " + std::to_string(m));
    }
    out.push_back(b);
  }
  return out;
}

double property_a_value(const ConstructionParams& params, std::size_t m) {
  if (m == 0) fail(ErrorKind::OutOfRange, "m must be >= 1");
  const double md = static_cast<double>(m);
  return -3.0 * std::log2(md + static_cast<double>(params.n_offset)) / md;
}

bool property_a_holds(const ConstructionParams& params, std::size_t m_max) {
  double prev = INFINITY;
  double last = INFINITY;
  for (std::size_t m = 10; m <= m_max; m *= 10) {
    last = std::abs(property_a_value(params, m));
    if (!(last < prev)) return false;
    prev = last;
  }
  return last < 1e-3;
}

std::vector<double> empirical_prefix_renyi(const ConstructionLevel& level, double alpha, std::size_t k_max) {
  std::optional<cutstack::LabelDistribution> d = level.labels();
  if (!d) {
    fail(ErrorKind::EnumerationTooLarge, "level " + std::to_string(level.m) + " has no label expansion");
  }
  if (k_max > d->height) {
    fail(ErrorKind::BlockTooLong, "k_max " + std::to_string(k_max) + " exceeds height " + std::to_string(d->height));
  }
  std::vector<double> out;
  out.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    cutstack::BlockDistribution blocks = cutstack::gadget_block_distribution(*d, k);
    std::vector<double> probs;
    probs.reserve(blocks.size());
    for (const auto& [word, q] : blocks) probs.push_back(cutstack::to_double(q));
    FiniteDistribution dist(std::move(probs));
    out.push_back(renyi_entropy(dist, alpha, 2.0).value / static_cast<double>(k));
  }
  return out;
}

Construction run_construction(const ConstructionParams& params, std::size_t levels, const std::vector<double>& alphas) {
  if (levels == 0) fail(ErrorKind::OutOfRange, "need at least one level");
  if (alphas.empty()) fail(ErrorKind::OutOfRange, "alpha list is empty");
  for (double a : alphas) {
    if (!(a > 1.0)) fail(ErrorKind::OutOfRange, "counterexample alphas must exceed 1");
  }

  Construction out;
  out.params = params;
  out.levels.push_back(build_g1(params));
  while (true) {
    const ConstructionLevel& cur = out.levels.back();
    all_ones_lower_bound(cur, params);
    if (auto d = cur.labels()) {
      auto it = d->measure.find(cur.all_ones());
      if (it == d->measure.end() || it->second < params.beta(cur.m)) {
        fail(ErrorKind::PropertyViolated, "all-ones label measure below beta_m at m = " + std::to_string(cur.m));
      }
    }
    if (out.levels.size() == levels) break;
    HeightChoice c = choose_height(cur, params);
    out.levels.push_back(advance_level(cur, params, c));
  }
  entropy_lower_bound_sequence(params, levels);

  Verdict& v = out.verdict;
  v.mode = params.mode;
  v.faithful = params.faithful;
  v.property_a = property_a_holds(params);
  v.property_b = true;
  v.property_d_bound = params.limit_entropy_lower_bound();
  double worst = 0.0;
  for (double a : alphas) worst = std::max(worst, renyi_upper_bound(params, a, kRenyiEvaluationIndex));
  v.renyi_gap = v.property_d_bound - worst;
  return out;
}

}  // namespace renyirate::counterexample
