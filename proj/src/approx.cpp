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

#include "renyirate/approx.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "renyirate/error.hpp"

namespace renyirate {

namespace {

std::vector<double> marginalize_last(std::span<const double> joints, std::size_t alphabet) {
  std::vector<double> out(joints.size() / alphabet, 0.0);
  for (std::size_t u = 0; u < out.size(); ++u) {
    double s = 0.0;
    for (std::size_t x = 0; x < alphabet; ++x) s += joints[u * alphabet + x];
    out[u] = s;
  }
  return out;
}

}  // namespace

MarkovApproximation::MarkovApproximation(std::size_t alphabet, std::size_t order, std::vector<double> table,
                                         FiniteDistribution initial_blocks)
    : alphabet_(alphabet), order_(order), table_(std::move(table)), initial_(std::move(initial_blocks)) {
  if (table_.size() != initial_.size() * alphabet_) {
    fail(ErrorKind::InvalidMatrix, "approximation table does not match A^m histories");
  }
}

ProcessModel MarkovApproximation::as_process() const {
  return ProcessModel::markov(alphabet_, order_, table_, initial_);
}

MarkovApproximation approximation_from_joints(std::span<const double> joints, std::size_t alphabet,
                                              std::size_t m, Exec exec) {
  if (m == 0) fail(ErrorKind::OutOfRange, "approximation order must be >= 1");
  std::vector<double> hist = marginalize_last(joints, alphabet);
  const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(hist.size());
  for (std::ptrdiff_t u = 0; u < h; ++u) {
    if (!(hist[u] > 0.0)) {
      fail(ErrorKind::ZeroHistoryProbability, "history index " + std::to_string(u) + " has probability zero");
    }
  }
  std::vector<double> table(joints.size());
  auto row = [&](std::ptrdiff_t u) {
    for (std::size_t s = 0; s < alphabet; ++s) table[u * alphabet + s] = joints[u * alphabet + s] / hist[u];
  };
  if (exec == Exec::Parallel && h >= 4096) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t u = 0; u < h; ++u) row(u);
  } else {
    for (std::ptrdiff_t u = 0; u < h; ++u) row(u);
  }
  return MarkovApproximation(alphabet, m, std::move(table), FiniteDistribution(std::move(hist), true));
}

MarkovApproximation markov_approximation(const ProcessModel& p, std::size_t m, const EnumerationOptions& opts) {
  if (m == 0) fail(ErrorKind::OutOfRange, "approximation order must be >= 1");
  std::vector<double> joints = joint_table(p, m + 1, opts);
  return approximation_from_joints(joints, p.alphabet(), m, opts.exec);
}

BlockLiftedChain block_lift(const MarkovApproximation& a) {
  const std::size_t k = a.histories();
  const std::size_t alphabet = a.alphabet();
  const std::size_t modulus = k / alphabet;
  std::vector<std::vector<NonnegMatrix::Entry>> rows(k);
  for (std::size_t u = 0; u < k; ++u) {
    rows[u].reserve(alphabet);
    for (std::size_t s = 0; s < alphabet; ++s) {
      double v = a.conditional(u, s);
      if (v > 0.0) rows[u].push_back({BlockLiftedChain::successor(u, s, alphabet, modulus), v});
    }
  }
  BlockLiftedChain out;
  out.alphabet = alphabet;
  out.order = a.order();
  out.chain = MarkovChain(NonnegMatrix::from_rows(k, std::move(rows)), a.initial_blocks());
  return out;
}

EntropyValue renyi_rate_approx(const MarkovApproximation& a, double alpha, double base) {
  return renyi_rate_markov(block_lift(a).chain, alpha, base);
}

ConvergenceReport approx_rate_sequence(const ProcessModel& p, double alpha, std::size_t m_max, double base,
                                       const EnumerationOptions& opts) {
  if (m_max == 0) fail(ErrorKind::OutOfRange, "m_max must be >= 1");
  if (!checked_power(p.alphabet(), m_max + 1, opts.cap)) {
    fail(ErrorKind::EnumerationTooLarge, "A^(m_max+1) = " + std::to_string(p.alphabet()) + "^" +
                                             std::to_string(m_max + 1) + " exceeds the enumeration cap of " +
                                             std::to_string(opts.cap));
  }
  // One enumeration at the largest order; lower orders are its marginals.
  std::vector<std::vector<double>> joints(m_max + 2);
  joints[m_max + 1] = joint_table(p, m_max + 1, opts);
  for (std::size_t n = m_max; n >= 2; --n) joints[n] = marginalize_last(joints[n + 1], p.alphabet());

  ConvergenceReport r;
  for (std::size_t m = 1; m <= m_max; ++m) {
    MarkovApproximation a = approximation_from_joints(joints[m + 1], p.alphabet(), m, opts.exec);
    r.estimates.push_back({m, renyi_rate_approx(a, alpha, base).value});
  }
  fit_geometric(r);
  return r;
}

DeltaDiagnostic delta_matrix_diagnostic(const ProcessModel& p, std::size_t m, double alpha,
                                        const EnumerationOptions& opts) {
  if (m == 0) fail(ErrorKind::OutOfRange, "m must be >= 1");
  const std::size_t a = p.alphabet();
  if (!checked_power(a, m + 2, opts.cap)) fail(ErrorKind::EnumerationTooLarge, "A^(m+2) exceeds the enumeration cap");
  std::vector<double> big = joint_table(p, m + 2, opts);
  std::vector<double> small = marginalize_last(big, a);
  MarkovApproximation fine = approximation_from_joints(big, a, m + 1, opts.exec);
  MarkovApproximation coarse = approximation_from_joints(small, a, m, opts.exec);

  const std::size_t states = fine.histories();
  const std::size_t coarse_states = coarse.histories();
  DeltaDiagnostic d;
  d.positive_entries_per_row = a;
  for (std::size_t u = 0; u < states; ++u) {
    // The upscaled order-m chain only looks at the last m symbols of u.
    const std::size_t tail = u % coarse_states;
    std::size_t structural = 0;
    for (std::size_t s = 0; s < a; ++s) {
      double r_fine = std::pow(fine.conditional(u, s), alpha);
      double r_coarse = std::pow(coarse.conditional(tail, s), alpha);
      if (fine.conditional(u, s) > 0.0 || coarse.conditional(tail, s) > 0.0) ++structural;
      d.max_abs_entry = std::max(d.max_abs_entry, std::abs(r_fine - r_coarse));
    }
    d.positive_entries_per_row = std::min(d.positive_entries_per_row, structural);
  }
  return d;
}

}  // namespace renyirate
