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

#include "renyirate/cutstack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>
#include <utility>

#include "renyirate/error.hpp"

namespace renyirate::cutstack {

namespace {

double log_integer(const mpz_class& z) {
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(d) + static_cast<double>(exp) * std::log(2.0);
}

struct TaggedPiece {
  Rational start;
  Rational end;
  std::size_t column;
};

std::vector<TaggedPiece> tagged_pieces(const Gadget& g) {
  std::vector<TaggedPiece> out;
  for (std::size_t c = 0; c < g.size(); ++c) {
    for (const Level& l : g[c].levels()) {
      for (const RationalInterval& p : l.pieces) out.push_back({p.start, p.end(), c});
    }
  }
  std::sort(out.begin(), out.end(), [](const TaggedPiece& a, const TaggedPiece& b) { return a.start < b.start; });
  return out;
}

void check_disjoint(const std::vector<TaggedPiece>& sorted, const char* what) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].start < sorted[i - 1].end) {
      fail(ErrorKind::OverlappingSupports, std::string(what) + ": pieces starting at " + to_string(sorted[i - 1].start) +
                                               " and " + to_string(sorted[i].start) + " intersect");
    }
  }
}

Level slice_level(const Level& l, const Rational& from, const Rational& to) {
  Level out;
  Rational offset = 0;
  for (const RationalInterval& p : l.pieces) {
    Rational next = offset + p.width;
    Rational lo = std::max(from, offset);
    Rational hi = std::min(to, next);
    if (lo < hi) out.pieces.push_back({p.start + (lo - offset), hi - lo});
    if (next >= to) break;
    offset = std::move(next);
  }
  return out;
}

std::size_t require_uniform_height(const Gadget& g) {
  std::size_t h = g.uniform_height();
  if (h == 0) fail(ErrorKind::NonUniformHeight, "gadget columns do not share one height");
  return h;
}

Gadget sorted_columns(std::vector<Column> cols) {
  std::stable_sort(cols.begin(), cols.end(),
                   [](const Column& a, const Column& b) { return a.base_start() < b.base_start(); });
  return Gadget(std::move(cols));
}

Rational rational_power(const Rational& q, std::size_t n) {
  Rational out = 1;
  Rational b = q;
  while (n > 0) {
    if (n & 1U) out *= b;
    b *= b;
    n >>= 1U;
  }
  return out;
}

double entropy_of_measures(const std::map<std::string, Rational>& m, std::size_t height, double base) {
  check_base(base);
  double nats = 0.0;
  for (const auto& [label, lam] : m) {
    if (sgn(lam) > 0) nats -= to_double(lam) * log_rational(lam);
  }
  return nats / static_cast<double>(height) / std::log(base);
}

void add_to(BlockDistribution& d, std::string key, const Rational& v) {
  auto [it, inserted] = d.try_emplace(std::move(key), v);
  if (!inserted) it->second += v;
}

}  // namespace

double log_rational(const Rational& q) {
  if (sgn(q) <= 0) fail(ErrorKind::OutOfRange, "log of a non-positive rational");
  return log_integer(q.get_num()) - log_integer(q.get_den());
}

double to_double(const Rational& q) { return q.get_d(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view s) {
  std::string text(s);
  bool ok = !text.empty();
  std::size_t slashes = 0;
  for (std::size_t i = 0; i < text.size() && ok; ++i) {
    char ch = text[i];
    if (ch == '/') {
      ++slashes;
      ok = i > 0 && i + 1 < text.size();
    } else if (ch == '-' || ch == '+') {
      ok = i == 0 && text.size() > 1;
    } else {
      ok = ch >= '0' && ch <= '9';
    }
  }
  if (!ok || slashes > 1) fail(ErrorKind::ParseError, "not a rational: '" + text + "'");
  if (text.front() == '+') text.erase(0, 1);
  Rational q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0) fail(ErrorKind::ParseError, "not a rational: '" + text + "'");
  if (sgn(q.get_den()) == 0) fail(ErrorKind::ParseError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

Rational Level::width() const {
  Rational w = 0;
  for (const RationalInterval& p : pieces) w += p.width;
  return w;
}

Column::Column(std::vector<Level> levels, std::string label) : levels_(std::move(levels)), label_(std::move(label)) {
  if (levels_.empty()) fail(ErrorKind::OutOfRange, "a column needs at least one level");
  if (label_.size() != levels_.size()) {
    fail(ErrorKind::OutOfRange, "label length " + std::to_string(label_.size()) + " differs from height " +
                                    std::to_string(levels_.size()));
  }
  width_ = levels_.front().width();
  if (sgn(width_) <= 0) fail(ErrorKind::OutOfRange, "column width must be positive");
  for (std::size_t j = 1; j < levels_.size(); ++j) {
    if (levels_[j].width() != width_) {
      fail(ErrorKind::WidthMismatch, "level " + std::to_string(j) + " has width " + to_string(levels_[j].width()) +
                                         ", base has " + to_string(width_));
    }
  }
}

Column Column::contiguous(const Rational& start, const Rational& width, std::string label) {
  std::vector<Level> levels(label.size());
  for (std::size_t j = 0; j < levels.size(); ++j) {
    levels[j].pieces.push_back({start + width * static_cast<unsigned long>(j), width});
  }
  return Column(std::move(levels), std::move(label));
}

Column Column::slice(const Rational& from, const Rational& to) const {
  if (!(sgn(from) >= 0 && from < to && to <= width_)) {
    fail(ErrorKind::OutOfRange, "slice [" + to_string(from) + ", " + to_string(to) + ") outside column width " +
                                    to_string(width_));
  }
  std::vector<Level> out;
  out.reserve(levels_.size());
  for (const Level& l : levels_) out.push_back(slice_level(l, from, to));
  return Column(std::move(out), label_);
}

void Column::validate() const {
  for (const Level& l : levels_) {
    for (const RationalInterval& p : l.pieces) {
      if (sgn(p.width) <= 0 || sgn(p.start) < 0 || p.end() > 1) {
        fail(ErrorKind::OutOfRange, "piece [" + to_string(p.start) + ", " + to_string(p.end()) + ") not inside [0,1]");
      }
    }
  }
  check_disjoint(tagged_pieces(Gadget({*this})), "column levels");
}

Rational Gadget::width() const {
  Rational w = 0;
  for (const Column& c : columns_) w += c.width();
  return w;
}

Rational Gadget::measure() const {
  Rational m = 0;
  for (const Column& c : columns_) m += c.measure();
  return m;
}

std::size_t Gadget::uniform_height() const {
  if (columns_.empty()) return 0;
  std::size_t h = columns_.front().height();
  for (const Column& c : columns_) {
    if (c.height() != h) return 0;
  }
  return h;
}

std::vector<Rational> Gadget::width_distribution() const {
  Rational w = width();
  std::vector<Rational> out;
  out.reserve(columns_.size());
  for (const Column& c : columns_) out.push_back(c.width() / w);
  return out;
}

std::vector<Rational> Gadget::measure_distribution() const {
  Rational m = measure();
  std::vector<Rational> out;
  out.reserve(columns_.size());
  for (const Column& c : columns_) out.push_back(c.measure() / m);
  return out;
}

Gadget Gadget::canonicalized() const { return sorted_columns(columns_); }

void Gadget::validate() const {
  for (const Column& c : columns_) {
    for (const Level& l : c.levels()) {
      for (const RationalInterval& p : l.pieces) {
        if (sgn(p.width) <= 0 || sgn(p.start) < 0 || p.end() > 1) {
          fail(ErrorKind::OutOfRange,
               "piece [" + to_string(p.start) + ", " + to_string(p.end()) + ") not inside [0,1]");
        }
      }
    }
  }
  check_disjoint(tagged_pieces(*this), "gadget");
}

std::vector<RationalInterval> support(const Gadget& g) {
  std::vector<RationalInterval> out;
  for (const TaggedPiece& p : tagged_pieces(g)) {
    if (!out.empty() && out.back().end() == p.start) {
      out.back().width += p.end - p.start;
    } else {
      out.push_back({p.start, p.end - p.start});
    }
  }
  return out;
}

std::vector<Gadget> cut_copies(const Gadget& g, const std::vector<Rational>& pi) {
  if (pi.empty()) fail(ErrorKind::InvalidDistribution, "empty copy distribution");
  Rational total = 0;
  for (const Rational& q : pi) {
    if (sgn(q) <= 0) fail(ErrorKind::InvalidDistribution, "copy weights must be positive");
    total += q;
  }
  if (total != 1) fail(ErrorKind::InvalidDistribution, "copy weights sum to " + to_string(total) + ", not 1");

  std::vector<std::vector<Column>> copies(pi.size());
  for (const Column& c : g.columns()) {
    Rational from = 0;
    Rational cum = 0;
    for (std::size_t k = 0; k < pi.size(); ++k) {
      cum += pi[k];
      Rational to = c.width() * cum;
      copies[k].push_back(c.slice(from, to));
      from = std::move(to);
    }
  }
  std::vector<Gadget> out;
  out.reserve(copies.size());
  for (auto& cols : copies) out.push_back(sorted_columns(std::move(cols)));
  return out;
}

Column stack(const Column& lower, const Column& upper) {
  if (lower.width() != upper.width()) {
    fail(ErrorKind::WidthMismatch,
         "cannot stack width " + to_string(upper.width()) + " onto width " + to_string(lower.width()));
  }
  std::vector<Level> levels = lower.levels();
  levels.insert(levels.end(), upper.levels().begin(), upper.levels().end());
  return Column(std::move(levels), lower.label() + upper.label());
}

Gadget independent_cut_stack(const Gadget& s, const Gadget& s2) {
  if (s.size() == 0 || s2.size() == 0) fail(ErrorKind::OutOfRange, "empty gadget");
  const Rational w = s.width();
  if (w != s2.width()) {
    fail(ErrorKind::WidthMismatch, "gadget widths " + to_string(w) + " and " + to_string(s2.width()) + " differ");
  }
  {
    std::vector<TaggedPiece> all = tagged_pieces(s);
    std::vector<TaggedPiece> more = tagged_pieces(s2);
    all.insert(all.end(), more.begin(), more.end());
    std::sort(all.begin(), all.end(), [](const TaggedPiece& a, const TaggedPiece& b) { return a.start < b.start; });
    check_disjoint(all, "independent cut and stack");
  }

  const std::size_t k1 = s.size();
  const std::size_t k2 = s2.size();
  // Cumulative width shares of each gadget.
  auto shares = [&](const Gadget& g) {
    std::vector<Rational> cum(g.size() + 1);
    cum[0] = 0;
    for (std::size_t i = 0; i < g.size(); ++i) cum[i + 1] = cum[i] + g[i].width() / w;
    return cum;
  };
  const std::vector<Rational> cum1 = shares(s);
  const std::vector<Rational> cum2 = shares(s2);

  std::vector<Column> out;
  out.reserve(k1 * k2);
  for (std::size_t i = 0; i < k1; ++i) {
    const Column& ci = s[i];
    for (std::size_t j = 0; j < k2; ++j) {
      const Column& cj = s2[j];
      Column lower = ci.slice(ci.width() * cum2[j], ci.width() * cum2[j + 1]);
      Column upper = cj.slice(cj.width() * cum1[i], cj.width() * cum1[i + 1]);
      out.push_back(stack(lower, upper));
    }
  }
  return sorted_columns(std::move(out));
}

Gadget m_fold_ics(const Gadget& s, std::size_t m) {
  if (m == 0) fail(ErrorKind::OutOfRange, "m must be >= 1");
  if (m == 1) return s.canonicalized();
  std::vector<Gadget> copies = cut_copies(s, std::vector<Rational>(m, Rational(1, static_cast<unsigned long>(m))));
  Gadget acc = std::move(copies.front());
  for (std::size_t i = 1; i < m; ++i) acc = independent_cut_stack(acc, copies[i]);
  return acc;
}

Gadget SplitGadget::combined() const {
  std::vector<Column> cols = right.columns();
  cols.push_back(left);
  return sorted_columns(std::move(cols));
}

SplitGadget fractional_ics(const Column& left, const Gadget& right, std::size_t m) {
  if (m == 0) fail(ErrorKind::OutOfRange, "m must be >= 1");
  {
    std::vector<Column> cols = right.columns();
    cols.push_back(left);
    Gadget(std::move(cols)).validate();
  }
  SplitGadget out;
  const Rational piece = left.width() / static_cast<unsigned long>(m);
  Column tower = left.slice(0, piece);
  for (std::size_t k = 1; k < m; ++k) {
    tower = stack(tower, left.slice(piece * static_cast<unsigned long>(k), piece * static_cast<unsigned long>(k + 1)));
  }
  out.left = std::move(tower);
  out.right = m_fold_ics(right, m);
  return out;
}

Gadget merge_gadget(const Gadget& g) {
  std::map<std::pair<std::size_t, std::string>, std::size_t> slot;
  std::vector<std::vector<Level>> levels;
  std::vector<std::string> labels;
  for (const Column& c : g.columns()) {
    auto key = std::make_pair(c.height(), c.label());
    auto [it, inserted] = slot.try_emplace(key, levels.size());
    if (inserted) {
      levels.push_back(c.levels());
      labels.push_back(c.label());
      continue;
    }
    std::vector<Level>& dst = levels[it->second];
    for (std::size_t j = 0; j < c.height(); ++j) {
      dst[j].pieces.insert(dst[j].pieces.end(), c.levels()[j].pieces.begin(), c.levels()[j].pieces.end());
    }
  }
  std::vector<Column> cols;
  cols.reserve(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) cols.emplace_back(std::move(levels[i]), std::move(labels[i]));
  return sorted_columns(std::move(cols));
}

double normalized_shannon_entropy(const Gadget& g, double base) {
  return normalized_shannon_entropy(label_distribution(g), base);
}

Rational epsilon_independence_exact(const Gadget& s, const Gadget& s2) {
  const std::vector<TaggedPiece> a = tagged_pieces(s);
  const std::vector<TaggedPiece> b = tagged_pieces(s2);
  check_disjoint(a, "first gadget");
  check_disjoint(b, "second gadget");

  std::map<std::pair<std::size_t, std::size_t>, Rational> overlap;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const Rational& lo = std::max(a[i].start, b[j].start);
    const Rational& hi = std::min(a[i].end, b[j].end);
    if (lo < hi) {
      auto [it, inserted] = overlap.try_emplace({a[i].column, b[j].column}, hi - lo);
      if (!inserted) it->second += hi - lo;
    }
    if (a[i].end < b[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  // Pairs with no intersection contribute lambda(C) lambda(D); the sum over
  // all pairs of that product is lambda(S) lambda(S').
  Rational eps = s.measure() * s2.measure();
  for (const auto& [key, inter] : overlap) {
    Rational prod = s[key.first].measure() * s2[key.second].measure();
    eps += abs(inter - prod) - prod;
  }
  return eps;
}

double epsilon_independence(const Gadget& s, const Gadget& s2) { return to_double(epsilon_independence_exact(s, s2)); }

Rational LabelDistribution::total() const {
  Rational t = 0;
  for (const auto& [label, lam] : measure) t += lam;
  return t;
}

LabelDistribution label_distribution(const Gadget& g) {
  LabelDistribution d;
  d.height = require_uniform_height(g);
  for (const Column& c : g.columns()) add_to(d.measure, c.label(), c.measure());
  return d;
}

LabelDistribution m_fold_labels(const LabelDistribution& d, std::size_t m) {
  if (m == 0) fail(ErrorKind::OutOfRange, "m must be >= 1");
  const Rational mu = d.total();
  LabelDistribution acc = d;
  for (std::size_t t = 1; t < m; ++t) {
    LabelDistribution next;
    next.height = acc.height + d.height;
    for (const auto& [l1, m1] : acc.measure) {
      for (const auto& [l2, m2] : d.measure) add_to(next.measure, l1 + l2, m1 * m2 / mu);
    }
    acc = std::move(next);
  }
  return acc;
}

double normalized_shannon_entropy(const LabelDistribution& d, double base) {
  if (d.height == 0) fail(ErrorKind::NonUniformHeight, "label distribution has no common height");
  for (const auto& [label, lam] : d.measure) {
    if (label.size() != d.height) fail(ErrorKind::NonUniformHeight, "label '" + label + "' has the wrong length");
  }
  Rational total = d.total();
  if (total != 1) fail(ErrorKind::NonUnitMeasure, "gadget measure is " + to_string(total) + ", not 1");
  return entropy_of_measures(d.measure, d.height, base);
}

Rational block_frequency(std::string_view label, std::string_view a) {
  const std::size_t h = label.size();
  const std::size_t k = a.size();
  if (k == 0) fail(ErrorKind::OutOfRange, "empty block");
  if (k > h) {
    fail(ErrorKind::BlockTooLong, "block length " + std::to_string(k) + " exceeds height " + std::to_string(h));
  }
  unsigned long count = 0;
  for (std::size_t i = 0; i + k <= h; ++i) {
    if (label.substr(i, k) == a) ++count;
  }
  Rational freq(count, static_cast<unsigned long>(h - k + 1));
  freq.canonicalize();
  return freq;
}

Rational block_frequency(const Column& c, std::string_view a) { return block_frequency(c.label(), a); }

namespace {

void add_windows(BlockDistribution& out, std::string_view label, std::size_t k, const Rational& weight) {
  const std::size_t h = label.size();
  if (k == 0) fail(ErrorKind::OutOfRange, "block length must be >= 1");
  if (k > h) {
    fail(ErrorKind::BlockTooLong, "block length " + std::to_string(k) + " exceeds height " + std::to_string(h));
  }
  Rational share = weight / static_cast<unsigned long>(h - k + 1);
  for (std::size_t i = 0; i + k <= h; ++i) add_to(out, std::string(label.substr(i, k)), share);
}

BlockDistribution concatenated_from_labels(const std::map<std::string, Rational>& labels, std::size_t h,
                                           std::size_t k) {
  if (k == 0) fail(ErrorKind::OutOfRange, "block length must be >= 1");
  if (k > h) {
    fail(ErrorKind::BlockTooLong, "block length " + std::to_string(k) + " exceeds height " + std::to_string(h));
  }
  const Rational inv_h(1, static_cast<unsigned long>(h));
  BlockDistribution out;
  for (const auto& [label, lam] : labels) {
    Rational w = lam * inv_h;
    for (std::size_t i = 0; i + k <= h; ++i) add_to(out, label.substr(i, k), w);
  }
  // Windows starting at offset i > h - k run into the next block.
  for (std::size_t i = h - k + 1; i < h; ++i) {
    std::map<std::string, Rational> tails;
    std::map<std::string, Rational> heads;
    for (const auto& [label, lam] : labels) {
      add_to(tails, label.substr(i), lam);
      add_to(heads, label.substr(0, i + k - h), lam);
    }
    for (const auto& [t, lt] : tails) {
      for (const auto& [hd, lh] : heads) add_to(out, t + hd, lt * lh * inv_h);
    }
  }
  return out;
}

}  // namespace

BlockDistribution gadget_block_distribution(const Gadget& g, std::size_t k) {
  BlockDistribution out;
  for (const Column& c : g.columns()) add_windows(out, c.label(), k, c.measure());
  return out;
}

BlockDistribution gadget_block_distribution(const LabelDistribution& d, std::size_t k) {
  BlockDistribution out;
  for (const auto& [label, lam] : d.measure) add_windows(out, label, k, lam);
  return out;
}

BlockDistribution concatenated_block_distribution(const Gadget& g, std::size_t k) {
  std::size_t h = require_uniform_height(g);
  std::map<std::string, Rational> labels;
  for (const Column& c : g.columns()) add_to(labels, c.label(), c.measure());
  return concatenated_from_labels(labels, h, k);
}

BlockDistribution concatenated_block_distribution(const LabelDistribution& d, std::size_t k) {
  return concatenated_from_labels(d.measure, d.height, k);
}

Rational concatenated_block_probability(const Gadget& g, std::string_view a) {
  BlockDistribution d = concatenated_block_distribution(g, a.size());
  auto it = d.find(std::string(a));
  return it == d.end() ? Rational(0) : it->second;
}

ColumnClasses column_classes(const Gadget& g) {
  require_uniform_height(g);
  ColumnClasses out;
  for (const Column& c : g.columns()) out[c.measure()] += 1;
  return out;
}

ColumnClasses m_fold_classes(const ColumnClasses& c, std::size_t m) {
  if (m == 0) fail(ErrorKind::OutOfRange, "m must be >= 1");
  Rational mu = 0;
  for (const auto& [lam, n] : c) mu += lam * n;
  ColumnClasses acc = c;
  for (std::size_t t = 1; t < m; ++t) {
    ColumnClasses next;
    for (const auto& [l1, n1] : acc) {
      for (const auto& [l2, n2] : c) next[l1 * l2 / mu] += n1 * n2;
    }
    acc = std::move(next);
  }
  return acc;
}

double reduced_epsilon(const ColumnClasses& c, std::size_t m) {
  if (m == 0) fail(ErrorKind::OutOfRange, "m must be >= 1");
  Rational mu_q = 0;
  for (const auto& [lam, n] : c) mu_q += lam * n;
  const long double mu = static_cast<long double>(to_double(mu_q));
  const long double big_m = static_cast<long double>(m);
  long double eps = 0.0L;
  for (const auto& [lam_q, n] : c) {
    const long double lam = static_cast<long double>(to_double(lam_q));
    const long double p = static_cast<long double>(to_double(lam_q / mu_q));
    const long double count = static_cast<long double>(n.get_d());
    long double expected_abs = 0.0L;
    if (p >= 1.0L) {
      expected_abs = std::fabs(1.0L - lam);
    } else {
      // E|X - a| = E[X] - a + 2 E[(a - X)^+], X = n_C / M, a = lambda(C).
      const long double target = big_m * lam;
      const std::size_t jmax = static_cast<std::size_t>(std::floor(target));
      const long double lg_m = std::lgamma(big_m + 1.0L);
      const long double lp = std::log(p);
      const long double lq = std::log1p(-p);
      long double below = 0.0L;
      for (std::size_t j = 0; j <= std::min(jmax, m); ++j) {
        const long double jj = static_cast<long double>(j);
        long double log_pmf = lg_m - std::lgamma(jj + 1.0L) - std::lgamma(big_m - jj + 1.0L) + jj * lp + (big_m - jj) * lq;
        below += (target - jj) * std::exp(log_pmf);
      }
      expected_abs = p - lam + 2.0L * below / big_m;
    }
    eps += mu * count * expected_abs;
  }
  return static_cast<double>(eps);
}

Rational reduced_epsilon_exact(const ColumnClasses& c, std::size_t m) {
  if (m == 0) fail(ErrorKind::OutOfRange, "m must be >= 1");
  Rational mu = 0;
  for (const auto& [lam, n] : c) mu += lam * n;
  const unsigned long big_m = static_cast<unsigned long>(m);
  Rational eps = 0;
  for (const auto& [lam, n] : c) {
    const Rational p = lam / mu;
    const Rational q = 1 - p;
    const Rational target = lam * big_m;
    mpz_class jmax;
    mpz_fdiv_q(jmax.get_mpz_t(), target.get_num_mpz_t(), target.get_den_mpz_t());
    const unsigned long top = std::min<unsigned long>(jmax.get_ui(), big_m);
    Rational below = 0;
    for (unsigned long j = 0; j <= top; ++j) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), big_m, j);
      Rational pmf = Rational(binom) * rational_power(p, j) * rational_power(q, big_m - j);
      below += (target - j) * pmf;
    }
    Rational expected_abs = p - lam + 2 * below / big_m;
    eps += mu * Rational(n) * expected_abs;
  }
  return eps;
}

Gadget read_gadget(std::istream& in) {
  std::vector<Column> cols;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";

    std::vector<Level> levels;
    std::string label;
    std::stringstream row(line);
    std::string level_text;
    while (std::getline(row, level_text, ';')) {
      std::istringstream toks(level_text);
      std::vector<std::string> t;
      for (std::string tok; toks >> tok;) t.push_back(tok);
      if (t.size() < 3) fail(ErrorKind::ParseError, where + "a level needs 'start width symbol'");
      if (t.back().size() != 1) fail(ErrorKind::ParseError, where + "level symbol must be one character");
      Level lvl;
      std::size_t i = 0;
      while (true) {
        if (i + 1 >= t.size() - 1) fail(ErrorKind::ParseError, where + "incomplete 'start width' pair");
        lvl.pieces.push_back({parse_rational(t[i]), parse_rational(t[i + 1])});
        i += 2;
        if (i == t.size() - 1) break;
        if (t[i] != "+") fail(ErrorKind::ParseError, where + "expected '+' between pieces, got '" + t[i] + "'");
        ++i;
      }
      label.push_back(t.back().front());
      levels.push_back(std::move(lvl));
    }
    if (levels.empty()) fail(ErrorKind::ParseError, where + "empty column");
    try {
      cols.emplace_back(std::move(levels), std::move(label));
    } catch (const Error& e) {
      fail(e.kind(), where + e.what());
    }
  }
  Gadget g(std::move(cols));
  g.validate();
  return g;
}

void write_gadget(std::ostream& out, const Gadget& g) {
  for (const Column& c : g.columns()) {
    for (std::size_t j = 0; j < c.height(); ++j) {
      if (j > 0) out << " ; ";
      const Level& l = c.levels()[j];
      for (std::size_t p = 0; p < l.pieces.size(); ++p) {
        if (p > 0) out << " + ";
        out << to_string(l.pieces[p].start) << ' ' << to_string(l.pieces[p].width);
      }
      out << ' ' << c.label()[j];
    }
    out << '\n';
  }
}

}  // namespace renyirate::cutstack
