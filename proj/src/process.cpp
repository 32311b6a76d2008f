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

#include "renyirate/process.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "renyirate/error.hpp"

namespace renyirate {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kTableCap = std::size_t{1} << 24;

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

void check_rows(std::span<const double> table, std::size_t rows, std::size_t cols, const char* what) {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      double v = table[r * cols + c];
      if (!std::isfinite(v) || v < 0.0) {
        fail(ErrorKind::InvalidMatrix,
             std::string(what) + " row " + std::to_string(r) + " has a negative or non-finite entry");
      }
      s += v;
    }
    if (std::abs(s - 1.0) > kRowSumTolerance) {
      fail(ErrorKind::InvalidMatrix, std::string(what) + " row " + std::to_string(r) + " sums to " +
                                         std::to_string(s));
    }
  }
}

std::size_t draw(std::mt19937_64& rng, std::span<const double> probs) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = i;
    acc += probs[i];
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace

std::optional<std::size_t> checked_power(std::size_t a, std::size_t n, std::size_t cap) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (a != 0 && v > cap / a) return std::nullopt;
    v *= a;
  }
  if (v > cap) return std::nullopt;
  return v;
}

ProcessModel ProcessModel::iid(FiniteDistribution marginal) {
  ProcessModel p;
  p.kind_ = ProcessKind::Iid;
  p.alphabet_ = marginal.size();
  for (double v : marginal.probs()) p.log_marginal_.push_back(safe_log(v));
  p.marginal_ = std::move(marginal);
  return p;
}

ProcessModel ProcessModel::markov(std::size_t alphabet, std::size_t order, std::vector<double> table,
                                  std::optional<FiniteDistribution> initial_blocks) {
  if (alphabet == 0) fail(ErrorKind::InvalidMatrix, "alphabet must be non-empty");
  if (order == 0) fail(ErrorKind::OutOfRange, "Markov order must be >= 1");
  auto rows = checked_power(alphabet, order, kTableCap);
  if (!rows) fail(ErrorKind::EnumerationTooLarge, "A^m exceeds the table cap");
  if (table.size() != *rows * alphabet) {
    fail(ErrorKind::InvalidMatrix, "transition table needs A^m rows of A entries");
  }
  check_rows(table, *rows, alphabet, "transition");

  ProcessModel p;
  p.kind_ = ProcessKind::Markov;
  p.alphabet_ = alphabet;
  p.order_ = order;
  p.context_modulus_ = *rows / alphabet;
  p.table_ = std::move(table);
  p.log_table_.reserve(p.table_.size());
  for (double v : p.table_) p.log_table_.push_back(safe_log(v));

  if (initial_blocks) {
    if (initial_blocks->size() != *rows) fail(ErrorKind::InvalidDistribution, "initial block law needs A^m entries");
    p.initial_blocks_ = std::move(*initial_blocks);
  } else {
    std::vector<std::vector<NonnegMatrix::Entry>> lift(*rows);
    for (std::size_t u = 0; u < *rows; ++u) {
      for (std::size_t s = 0; s < alphabet; ++s) {
        double v = p.table_[u * alphabet + s];
        if (v > 0.0) lift[u].push_back({(u % p.context_modulus_) * alphabet + s, v});
      }
    }
    MarkovChain chain(NonnegMatrix::from_rows(*rows, std::move(lift)));
    p.initial_blocks_ = chain.initial();
  }

  // Marginals of the first d symbols, d = 0..m.
  p.log_prefix_.assign(order + 1, {});
  std::vector<double> level(p.initial_blocks_.probs().begin(), p.initial_blocks_.probs().end());
  for (std::size_t d = order; d >= 1; --d) {
    auto& logs = p.log_prefix_[d];
    logs.reserve(level.size());
    for (double v : level) logs.push_back(safe_log(v));
    std::vector<double> shorter(level.size() / alphabet, 0.0);
    for (std::size_t i = 0; i < level.size(); ++i) shorter[i / alphabet] += level[i];
    level = std::move(shorter);
  }
  p.log_prefix_[0] = {0.0};
  return p;
}

ProcessModel ProcessModel::hmm(MarkovChain hidden, std::size_t alphabet, std::vector<double> emission) {
  if (alphabet == 0) fail(ErrorKind::InvalidMatrix, "alphabet must be non-empty");
  const std::size_t k = hidden.states();
  if (emission.size() != k * alphabet) fail(ErrorKind::InvalidMatrix, "emission matrix needs |X| rows of A entries");
  check_rows(emission, k, alphabet, "emission");
  ProcessModel p;
  p.kind_ = ProcessKind::Hmm;
  p.alphabet_ = alphabet;
  p.hidden_ergodic_ = hidden.irreducible() && hidden.aperiodic();
  p.emission_positive_ = true;
  for (double v : emission) p.emission_positive_ = p.emission_positive_ && v > 0.0;
  p.hidden_ = std::move(hidden);
  p.emission_ = std::move(emission);
  return p;
}

PrefixNode PrefixWalker::root() const {
  PrefixNode n;
  if (model_->kind() == ProcessKind::Hmm) {
    auto init = model_->hidden().initial().probs();
    n.pred.assign(init.begin(), init.end());
  }
  return n;
}

void PrefixWalker::extend(const PrefixNode& parent, Symbol s, PrefixNode& out) const {
  const ProcessModel& m = *model_;
  out.depth = parent.depth + 1;
  switch (m.kind()) {
    case ProcessKind::Iid:
      out.log_prob = parent.log_prob + m.log_marginal(s);
      return;
    case ProcessKind::Markov: {
      const std::size_t a = m.alphabet();
      if (parent.depth < m.order()) {
        out.context = parent.context * a + s;
        out.log_prob = m.log_prefix(out.depth, out.context);
      } else {
        out.log_prob = parent.log_prob + m.log_transition(parent.context, s);
        out.context = (parent.context % m.context_modulus()) * a + s;
      }
      return;
    }
    case ProcessKind::Hmm: {
      const std::size_t k = parent.pred.size();
      const NonnegMatrix& p = m.hidden().transition();
      out.pred.assign(k, 0.0);
      double c = 0.0;
      for (std::size_t x = 0; x < k; ++x) c += parent.pred[x] * m.emission_at(x, s);
      if (!(c > 0.0)) {
        out.log_prob = kNegInf;
        return;
      }
      for (std::size_t x = 0; x < k; ++x) {
        double f = parent.pred[x] * m.emission_at(x, s) / c;
        if (f == 0.0) continue;
        auto cols = p.row_cols(x);
        auto vals = p.row_values(x);
        for (std::size_t e = 0; e < cols.size(); ++e) out.pred[cols[e]] += f * vals[e];
      }
      out.log_prob = parent.log_prob + std::log(c);
      return;
    }
  }
}

PrefixNode PrefixWalker::walk(std::span<const Symbol> y) const {
  PrefixNode cur = root();
  PrefixNode next;
  for (Symbol s : y) {
    extend(cur, s, next);
    std::swap(cur, next);
    if (cur.log_prob == kNegInf) {
      cur.depth = y.size();
      break;
    }
  }
  return cur;
}

void check_symbols(const ProcessModel& p, std::span<const Symbol> y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] >= p.alphabet()) {
      fail(ErrorKind::SymbolOutOfRange, "symbol " + std::to_string(y[i]) + " at position " + std::to_string(i) +
                                            " is outside an alphabet of size " + std::to_string(p.alphabet()));
    }
  }
}

double log_joint_probability(const ProcessModel& p, std::span<const Symbol> y) {
  if (y.empty()) fail(ErrorKind::OutOfRange, "sequence must be non-empty");
  check_symbols(p, y);
  return PrefixWalker(p).walk(y).log_prob;
}

double joint_probability(const ProcessModel& p, std::span<const Symbol> y) {
  return std::exp(log_joint_probability(p, y));
}

double conditional_probability(const ProcessModel& p, std::span<const Symbol> history, Symbol next) {
  check_symbols(p, history);
  check_symbols(p, std::span<const Symbol>(&next, 1));
  PrefixWalker w(p);
  PrefixNode h = w.walk(history);
  if (h.log_prob == kNegInf) fail(ErrorKind::ZeroHistory, "history has probability zero");
  PrefixNode child;
  w.extend(h, next, child);
  if (child.log_prob == kNegInf) return 0.0;
  return std::exp(child.log_prob - h.log_prob);
}

Sequence sample_path(const ProcessModel& p, std::size_t n, std::uint64_t seed) {
  if (n == 0) fail(ErrorKind::OutOfRange, "path length must be >= 1");
  std::mt19937_64 rng(seed);
  Sequence out;
  out.reserve(n);
  const std::size_t a = p.alphabet();
  switch (p.kind()) {
    case ProcessKind::Iid:
      for (std::size_t t = 0; t < n; ++t) out.push_back(static_cast<Symbol>(draw(rng, p.marginal().probs())));
      break;
    case ProcessKind::Markov: {
      std::size_t block = draw(rng, p.initial_blocks().probs());
      const std::size_t m = p.order();
      Sequence first(m);
      std::size_t rest = block;
      for (std::size_t i = m; i-- > 0;) {
        first[i] = static_cast<Symbol>(rest % a);
        rest /= a;
      }
      std::size_t ctx = block;
      for (std::size_t t = 0; t < n; ++t) {
        if (t < m) {
          out.push_back(first[t]);
          continue;
        }
        Symbol s = static_cast<Symbol>(draw(rng, p.table().subspan(ctx * a, a)));
        out.push_back(s);
        ctx = (ctx % p.context_modulus()) * a + s;
      }
      break;
    }
    case ProcessKind::Hmm: {
      const NonnegMatrix& tp = p.hidden().transition();
      std::size_t x = draw(rng, p.hidden().initial().probs());
      for (std::size_t t = 0; t < n; ++t) {
        if (t > 0) {
          auto cols = tp.row_cols(x);
          x = cols[draw(rng, tp.row_values(x))];
        }
        out.push_back(static_cast<Symbol>(draw(rng, p.emission().subspan(x * a, a))));
      }
      break;
    }
  }
  return out;
}

}  // namespace renyirate
