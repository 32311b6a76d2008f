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

// Reference values computed independently with 40-digit arbitrary-precision
// arithmetic (mpmath) and frozen here.
namespace renyirate::oracle {

// Renyi entropy of order 2 of (0.75, 0.25) in bits: -log2(0.625).
inline constexpr double kRenyi2Of75_25 = 0.6780719051126376521;
// Shannon entropy of (0.75, 0.25) in bits.
inline constexpr double kShannonOf75_25 = 0.8112781244591328639;
// H_b(1/16) in bits.
inline constexpr double kBinaryEntropyOneSixteenth = 0.3372900666170138788;
// (6/100) log2(227): Renyi bound b_100 for alpha = 2, N = 127.
inline constexpr double kRenyiBound100 = 0.4695929092374548990;

// Two-state hidden chain with crossover 0.3 observed through a flip-0.1
// channel, uniform initial law.
inline constexpr double kHmmJoint00 = 0.314;
inline constexpr double kHmmJoint0 = 0.5;
inline constexpr double kHmmConditional00 = 0.628;

// Sum_{j >= 129} H_b(1/j^2) in bits, partial sum to 10^5 (mpmath, 30 digits).
inline constexpr double kTailPartialTo1e5 = 0.142342415262875661320875850271;

}  // namespace renyirate::oracle
