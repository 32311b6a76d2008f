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

#include "renyirate/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "renyirate/error.hpp"

namespace renyirate {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct DepthSums {
  std::vector<LogSumExp> lse;
  std::vector<double> shannon;

  explicit DepthSums(std::size_t depths = 0) : lse(depths), shannon(depths, 0.0) {}

  void merge(const DepthSums& o) {
    for (std::size_t d = 0; d < lse.size(); ++d) {
      lse[d].merge(o.lse[d]);
      shannon[d] += o.shannon[d];
    }
  }
};

class SumWalker {
 public:
  SumWalker(const PrefixWalker& walker, double alpha, std::size_t alphabet, std::size_t n)
      : walker_(walker), alpha_(alpha), alphabet_(alphabet), n_(n), stack_(n + 1) {}

  /// Visits all extensions of `start` (at depth start.depth) down to depth n,
  /// adding depth-d contributions to sums.lse[d - first] for d >= first.
  /// Returns false if a zero-probability sequence makes alpha <= 0 undefined.
  bool run(const PrefixNode& start, std::size_t first, DepthSums& sums,
           std::vector<PrefixNode>* frontier, std::size_t frontier_depth) {
    stack_[start.depth] = start;
    return visit(start.depth, first, sums, frontier, frontier_depth);
  }

 private:
  bool visit(std::size_t depth, std::size_t first, DepthSums& sums, std::vector<PrefixNode>* frontier,
             std::size_t frontier_depth) {
    const PrefixNode& node = stack_[depth];
    if (frontier != nullptr && depth == frontier_depth) {
      frontier->push_back(node);
      return true;
    }
    if (depth == n_) return true;
    for (std::size_t s = 0; s < alphabet_; ++s) {
      PrefixNode& child = stack_[depth + 1];
      walker_.extend(stack_[depth], static_cast<Symbol>(s), child);
      const std::size_t d = depth + 1;
      if (child.log_prob == kNegInf) {
        if (alpha_ <= 0.0) return false;
        if (frontier != nullptr && d <= frontier_depth) {
          // Keep chunk boundaries fixed even when a subtree is empty.
          std::size_t leaves = 1;
          for (std::size_t i = d; i < frontier_depth; ++i) leaves *= alphabet_;
          for (std::size_t i = 0; i < leaves; ++i) frontier->push_back(child);
        }
        continue;
      }
      if (d >= first) {
        sums.lse[d - first].add(alpha_ * child.log_prob);
        sums.shannon[d - first] -= std::exp(child.log_prob) * child.log_prob;
      }
      if (!visit(d, first, sums, frontier, frontier_depth)) return false;
    }
    return true;
  }

  const PrefixWalker& walker_;
  double alpha_;
  std::size_t alphabet_;
  std::size_t n_;
  std::vector<PrefixNode> stack_;
};

void tree_reduce(std::vector<DepthSums>& parts) {
  for (std::size_t width = 1; width < parts.size(); width *= 2) {
    for (std::size_t i = 0; i + width < parts.size(); i += 2 * width) parts[i].merge(parts[i + width]);
  }
}

void check_alpha(double alpha) {
  if (!std::isfinite(alpha)) fail(ErrorKind::NonAdmissibleAlpha, "alpha must be finite");
}

}  // namespace

PrefixSums enumerate_prefix_sums(const ProcessModel& p, std::size_t n, double alpha,
                                 const EnumerationOptions& opts) {
  check_alpha(alpha);
  if (n == 0) fail(ErrorKind::OutOfRange, "prefix length must be >= 1");
  const std::size_t a = p.alphabet();
  if (!checked_power(a, n, opts.cap)) {
    fail(ErrorKind::EnumerationTooLarge, std::to_string(a) + "^" + std::to_string(n) +
                                             " sequences exceed the enumeration cap of " +
                                             std::to_string(opts.cap));
  }
  std::size_t split = 0;
  std::size_t width = 1;
  while (split < n && width < opts.chunks) {
    ++split;
    width *= a;
  }

  PrefixWalker walker(p);
  const PrefixNode root = walker.root();

  // Depths 1..split, serially, collecting the chunk roots at depth split.
  DepthSums top(split);
  std::vector<PrefixNode> frontier;
  frontier.reserve(width);
  {
    SumWalker w(walker, alpha, a, n);
    if (!w.run(root, 1, top, &frontier, split)) {
      fail(ErrorKind::NonAdmissibleAlpha, "alpha <= 0 with a zero-probability sequence");
    }
  }

  const std::size_t deep = n - split;
  const std::ptrdiff_t chunks = static_cast<std::ptrdiff_t>(frontier.size());
  std::vector<DepthSums> parts(frontier.size(), DepthSums(deep));
  std::vector<char> bad(frontier.size(), 0);
  if (deep > 0) {
    auto work = [&](std::ptrdiff_t c) {
      if (frontier[c].log_prob == kNegInf) return;
      SumWalker w(walker, alpha, a, n);
      if (!w.run(frontier[c], split + 1, parts[c], nullptr, 0)) bad[c] = 1;
    };
    if (opts.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::ptrdiff_t c = 0; c < chunks; ++c) work(c);
    } else {
      for (std::ptrdiff_t c = 0; c < chunks; ++c) work(c);
    }
  }
  if (std::find(bad.begin(), bad.end(), 1) != bad.end()) {
    fail(ErrorKind::NonAdmissibleAlpha, "alpha <= 0 with a zero-probability sequence");
  }
  PrefixSums out;
  out.log_power_sum.reserve(n);
  out.shannon_nats.reserve(n);
  for (std::size_t d = 0; d < split; ++d) {
    out.log_power_sum.push_back(top.lse[d].value());
    out.shannon_nats.push_back(top.shannon[d]);
  }
  if (deep > 0) {
    tree_reduce(parts);
    for (std::size_t d = 0; d < deep; ++d) {
      out.log_power_sum.push_back(parts[0].lse[d].value());
      out.shannon_nats.push_back(parts[0].shannon[d]);
    }
  }
  return out;
}

std::vector<double> joint_table(const ProcessModel& p, std::size_t n, const EnumerationOptions& opts) {
  if (n == 0) fail(ErrorKind::OutOfRange, "sequence length must be >= 1");
  const std::size_t a = p.alphabet();
  auto total = checked_power(a, n, opts.cap);
  if (!total) fail(ErrorKind::EnumerationTooLarge, "A^n exceeds the enumeration cap");
  std::size_t split = 0;
  std::size_t width = 1;
  while (split < n && width < opts.chunks) {
    ++split;
    width *= a;
  }
  const std::size_t leaves_per_chunk = *total / width;
  PrefixWalker walker(p);
  std::vector<PrefixNode> frontier;
  frontier.reserve(width);
  {
    DepthSums unused(split);
    SumWalker w(walker, 1.0, a, n);
    w.run(walker.root(), n + 1, unused, &frontier, split);
  }
  std::vector<double> out(*total, 0.0);
  auto work = [&](std::ptrdiff_t c) {
    if (frontier[c].log_prob == kNegInf) return;
    std::vector<PrefixNode> stack(n + 1);
    stack[split] = frontier[c];
    const std::size_t base = static_cast<std::size_t>(c) * leaves_per_chunk;
    auto dfs = [&](auto&& self, std::size_t depth, std::size_t offset) -> void {
      if (depth == n) {
        out[base + offset] = std::exp(stack[depth].log_prob);
        return;
      }
      for (std::size_t s = 0; s < a; ++s) {
        walker.extend(stack[depth], static_cast<Symbol>(s), stack[depth + 1]);
        if (stack[depth + 1].log_prob == kNegInf) continue;
        self(self, depth + 1, offset * a + s);
      }
    };
    dfs(dfs, split, 0);
  };
  const std::ptrdiff_t chunks = static_cast<std::ptrdiff_t>(frontier.size());
  if (opts.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < chunks; ++c) work(c);
  } else {
    for (std::ptrdiff_t c = 0; c < chunks; ++c) work(c);
  }
  return out;
}

namespace {

double entropy_from_sums(const PrefixSums& sums, std::size_t d, double alpha, double base) {
  if (alpha == 1.0) return sums.shannon_nats[d - 1] / std::log(base);
  return sums.log_power_sum[d - 1] / (1.0 - alpha) / std::log(base);
}

}  // namespace

EntropyValue renyi_entropy_prefix(const ProcessModel& p, std::size_t n, double alpha, double base,
                                  const EnumerationOptions& opts) {
  check_base(base);
  PrefixSums sums = enumerate_prefix_sums(p, n, alpha, opts);
  return {entropy_from_sums(sums, n, alpha, base), alpha, base};
}

ConvergenceReport renyi_rate_sequence(const ProcessModel& p, std::size_t n_max, double alpha, double base,
                                      std::size_t fit_from, const EnumerationOptions& opts) {
  check_base(base);
  PrefixSums sums = enumerate_prefix_sums(p, n_max, alpha, opts);
  ConvergenceReport r;
  for (std::size_t d = 1; d <= n_max; ++d) {
    r.estimates.push_back({d, entropy_from_sums(sums, d, alpha, base) / static_cast<double>(d)});
  }
  fit_polynomial(r, fit_from);
  return r;
}

ConditionConstants estimate_constants(const ProcessModel& p, std::size_t horizon, double alpha,
                                      const EnumerationOptions& opts) {
  check_alpha(alpha);
  if (horizon < 2) fail(ErrorKind::OutOfRange, "horizon must be >= 2");
  const std::size_t a = p.alphabet();
  if (!checked_power(a, horizon, opts.cap)) {
    fail(ErrorKind::EnumerationTooLarge, "A^horizon exceeds the enumeration cap");
  }
  const std::size_t max_ctx = horizon - 1;  // longest history length
  // tables[n][key]: min and max of q^alpha for histories ending in a given
  // n-symbol context followed by a given next symbol.
  std::vector<std::vector<double>> tmin(max_ctx + 1);
  std::vector<std::vector<double>> tmax(max_ctx + 1);
  std::vector<std::size_t> powa(max_ctx + 2, 1);
  for (std::size_t i = 1; i < powa.size(); ++i) powa[i] = powa[i - 1] * a;
  for (std::size_t n = 0; n <= max_ctx; ++n) {
    tmin[n].assign(powa[n + 1], std::numeric_limits<double>::infinity());
    tmax[n].assign(powa[n + 1], -std::numeric_limits<double>::infinity());
  }

  ConditionConstants cc;
  cc.alpha = alpha;
  cc.horizon = horizon;
  cc.c_lower = std::numeric_limits<double>::infinity();
  cc.c_upper = 0.0;

  PrefixWalker walker(p);
  std::vector<PrefixNode> stack(horizon + 1);
  std::vector<PrefixNode> kids(a);
  std::vector<Symbol> path(horizon);
  stack[0] = walker.root();

  auto visit = [&](auto&& self, std::size_t depth) -> void {
    const PrefixNode& node = stack[depth];
    if (depth >= 1) {
      std::vector<double> cond(a);
      for (std::size_t s = 0; s < a; ++s) {
        walker.extend(node, static_cast<Symbol>(s), kids[s]);
        cond[s] = kids[s].log_prob == kNegInf ? 0.0 : std::exp(kids[s].log_prob - node.log_prob);
        cc.c_lower = std::min(cc.c_lower, cond[s]);
        cc.c_upper = std::max(cc.c_upper, cond[s]);
      }
      std::size_t ctx = 0;
      for (std::size_t n = 0; n <= depth; ++n) {
        if (n > 0) ctx += static_cast<std::size_t>(path[depth - n]) * powa[n - 1];
        for (std::size_t s = 0; s < a; ++s) {
          double q = std::pow(cond[s], alpha);
          std::size_t key = ctx * a + s;
          tmin[n][key] = std::min(tmin[n][key], q);
          tmax[n][key] = std::max(tmax[n][key], q);
        }
      }
    }
    if (depth == max_ctx) return;
    for (std::size_t s = 0; s < a; ++s) {
      walker.extend(stack[depth], static_cast<Symbol>(s), stack[depth + 1]);
      if (stack[depth + 1].log_prob == kNegInf) continue;
      path[depth] = static_cast<Symbol>(s);
      self(self, depth + 1);
    }
  };
  visit(visit, 0);

  cc.forgetting_profile.assign(horizon - 1, 0.0);
  for (std::size_t n = 0; n + 1 < horizon; ++n) {
    double d = 0.0;
    for (std::size_t key = 0; key < tmin[n].size(); ++key) {
      if (tmin[n][key] <= tmax[n][key]) d = std::max(d, tmax[n][key] - tmin[n][key]);
    }
    cc.forgetting_profile[n] = d;
  }

  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t n = 1; n < cc.forgetting_profile.size(); ++n) {
    if (cc.forgetting_profile[n] > 1e-14) {
      xs.push_back(static_cast<double>(n));
      ys.push_back(std::log(cc.forgetting_profile[n]));
    }
  }
  double peak = *std::max_element(cc.forgetting_profile.begin(), cc.forgetting_profile.end());
  if (xs.size() < 2) {
    cc.rho_forget = 0.0;
    cc.c_forget = peak;
  } else {
    LineFit f = least_squares(xs, ys);
    cc.rho_forget = std::exp(f.slope);
    cc.c_forget = 0.0;
    for (std::size_t n = 0; n < cc.forgetting_profile.size(); ++n) {
      cc.c_forget = std::max(cc.c_forget, cc.forgetting_profile[n] / std::pow(cc.rho_forget, static_cast<double>(n)));
    }
  }
  if (cc.c_upper > 0.0) {
    cc.exponential_rate_condition = cc.rho_forget < std::pow(cc.c_lower / cc.c_upper, 2.0 * alpha);
  }
  return cc;
}

}  // namespace renyirate
