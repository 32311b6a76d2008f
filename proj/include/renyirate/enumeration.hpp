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
#include <vector>

#include "renyirate/entropy.hpp"
#include "renyirate/fit.hpp"
#include "renyirate/parallel.hpp"
#include "renyirate/process.hpp"

namespace renyirate {

inline constexpr std::size_t kDefaultEnumerationCap = std::size_t{1} << 24;

struct EnumerationOptions {
  std::size_t cap = kDefaultEnumerationCap;
  Exec exec = Exec::Parallel;
  /// Target number of work chunks; prefixes are split at the shallowest depth
  /// with at least this many nodes.
  std::size_t chunks = 256;
};

/// Per-length sums over all A^d sequences, d = 1..n (index d-1):
/// log sum p^alpha (natural log) and the Shannon sum -sum p ln p.
struct PrefixSums {
  std::vector<double> log_power_sum;
  std::vector<double> shannon_nats;
};

/// Exhaustive enumeration shared by the prefix entropy functions. Work is cut
/// into fixed lexicographic prefix chunks whose partial sums are combined by a
/// fixed pairwise tree, so Exec::Serial and Exec::Parallel agree bit for bit.
PrefixSums enumerate_prefix_sums(const ProcessModel& p, std::size_t n, double alpha,
                                 const EnumerationOptions& opts = {});

/// Joint probabilities of all A^n sequences in lexicographic order (first
/// symbol most significant). Chunks write disjoint slices, so the result does
/// not depend on the execution policy.
std::vector<double> joint_table(const ProcessModel& p, std::size_t n, const EnumerationOptions& opts = {});

/// H_alpha(Y_1^n) by exhaustive enumeration; alpha == 1 gives the Shannon
/// entropy of the same joint law.
EntropyValue renyi_entropy_prefix(const ProcessModel& p, std::size_t n, double alpha,
                                  double base = kDefaultBase, const EnumerationOptions& opts = {});

/// Estimates (n, H_alpha(Y_1^n)/n) for n = 1..n_max with a polynomial fit over
/// n >= fit_from.
ConvergenceReport renyi_rate_sequence(const ProcessModel& p, std::size_t n_max, double alpha,
                                      double base = kDefaultBase, std::size_t fit_from = 2,
                                      const EnumerationOptions& opts = {});

/// Finite-horizon envelopes of the boundedness and forgetting constants.
///
/// forgetting_profile[n] is the largest |p^alpha(s|h) - p^alpha(s|h')| over
/// histories h, h' of lengths in [n, horizon-1] that end in the same n symbols.
/// rho_forget and c_forget come from a geometric fit of that profile over
/// n >= 1; a profile with fewer than two positive points gives rho_forget = 0
/// and c_forget = max of the profile.
struct ConditionConstants {
  double c_lower = 0.0;
  double c_upper = 0.0;
  double c_forget = 0.0;
  double rho_forget = 0.0;
  double alpha = 1.0;
  std::size_t horizon = 0;
  std::vector<double> forgetting_profile;
  /// rho_forget < (c_lower / c_upper)^(2 alpha).
  bool exponential_rate_condition = false;
};

ConditionConstants estimate_constants(const ProcessModel& p, std::size_t horizon, double alpha,
                                      const EnumerationOptions& opts = {});

}  // namespace renyirate
