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

namespace renyirate {

/// Selects the serial reference kernels or the OpenMP ones. Both produce
/// bit-identical results; the serial path exists for testing and benchmarks.
enum class Exec { Serial, Parallel };

/// Number of OpenMP workers used by Exec::Parallel kernels (1 without OpenMP).
int worker_count();

/// Sets the worker count; values < 1 are clamped to 1.
void set_worker_count(int workers);

/// Applies RENYIRATE_WORKERS from the environment if set. Returns true if applied.
bool apply_worker_env();

}  // namespace renyirate
