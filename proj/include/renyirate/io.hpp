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

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

#include "renyirate/process.hpp"
#include "renyirate/spectral.hpp"

namespace renyirate::io {

/// Shortest decimal that round-trips, locale independent; "nan", "inf" and
/// "-inf" for non-finite values.
std::string format_double(double v);

/// Locale-independent decimal parse of the whole token; throws ParseError.
double parse_double(std::string_view token);

/// Chain file: first line k, then k rows of k decimals, then an optional row
/// with the initial law. '#' starts a comment.
MarkovChain read_chain(std::istream& in);
void write_chain(std::ostream& out, const MarkovChain& mc);

/// Process file, line oriented:
///
///   alphabet A
///   kind iid|markov|hmm
///   iid:    marginal            (next line: A decimals)
///   markov: order m
///           transition          (next A^m lines: A decimals each)
///           initial             (optional, next line: A^m decimals)
///   hmm:    hidden k            (next k lines: k decimals each)
///           hidden_initial      (optional, next line: k decimals)
///           emission            (next k lines: A decimals each)
ProcessModel read_process(std::istream& in);
/// Canonical form of a process file.
void write_process(std::ostream& out, const ProcessModel& p);

/// A model file in either format, told apart by its first token.
using Model = std::variant<MarkovChain, ProcessModel>;
Model read_model(std::istream& in);

/// The process a model describes (a chain becomes an order-1 source).
ProcessModel as_process(const Model& m);

}  // namespace renyirate::io
