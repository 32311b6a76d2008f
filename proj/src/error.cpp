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

#include "renyirate/error.hpp"
#include "renyirate/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace renyirate {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::WidthMismatch: return "WidthMismatch";
    case ErrorKind::OverlappingSupports: return "OverlappingSupports";
    case ErrorKind::NonUniformHeight: return "NonUniformHeight";
    case ErrorKind::NonUnitMeasure: return "NonUnitMeasure";
    case ErrorKind::BlockTooLong: return "BlockTooLong";
    case ErrorKind::NonAdmissibleAlpha: return "NonAdmissibleAlpha";
    case ErrorKind::Reducible: return "Reducible";
    case ErrorKind::Periodic: return "Periodic";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NonPositiveVector: return "NonPositiveVector";
    case ErrorKind::ZeroHistory: return "ZeroHistory";
    case ErrorKind::ZeroHistoryProbability: return "ZeroHistoryProbability";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::NoFeasibleParams: return "NoFeasibleParams";
    case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorKind::PropertyViolated: return "PropertyViolated";
  }
  return "Unknown";
}

bool is_input_error(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDistribution:
    case ErrorKind::InvalidMatrix:
    case ErrorKind::OutOfRange:
    case ErrorKind::SymbolOutOfRange:
    case ErrorKind::ParseError:
    case ErrorKind::WidthMismatch:
    case ErrorKind::OverlappingSupports:
    case ErrorKind::NonUniformHeight:
    case ErrorKind::NonUnitMeasure:
    case ErrorKind::BlockTooLong:
      return true;
    default:
      return false;
  }
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int workers) {
#ifdef _OPENMP
  omp_set_num_threads(workers < 1 ? 1 : workers);
#else
  (void)workers;
#endif
}

bool apply_worker_env() {
  const char* env = std::getenv("RENYIRATE_WORKERS");
  if (env == nullptr || *env == '\0') return false;
  char* end = nullptr;
  long value = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || value < 1) return false;
  set_worker_count(static_cast<int>(value));
  return true;
}

}  // namespace renyirate
