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
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "renyirate/parallel.hpp"

namespace renyirate {

/// Square nonnegative matrix in compressed sparse row form. Only strictly
/// positive entries are stored; zeros passed to the builders are dropped.
class NonnegMatrix {
 public:
  struct Entry {
    std::size_t col;
    double value;
  };

  NonnegMatrix() = default;

  /// Builds from a dense row-major k*k array. Throws InvalidMatrix on negative
  /// or non-finite entries, or if values.size() != k*k.
  static NonnegMatrix from_dense(std::size_t k, std::span<const double> values);

  /// Builds from per-row (col, value) lists. Entries within a row are sorted by
  /// column; duplicate columns are rejected.
  static NonnegMatrix from_rows(std::size_t k, std::vector<std::vector<Entry>> rows);

  std::size_t dim() const noexcept { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nonzeros() const noexcept { return cols_.size(); }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {vals_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  /// Entry (i, j), zero if structurally absent.
  double at(std::size_t i, std::size_t j) const;

  std::vector<double> to_dense() const;

  /// y = R x. Each row is reduced sequentially over its stored entries, so the
  /// serial and parallel paths agree bit for bit.
  void multiply(std::span<const double> x, std::span<double> y, Exec exec = Exec::Parallel) const;

  /// y = R^T x (serial; used by stationary-law iterations).
  void multiply_transpose(std::span<const double> x, std::span<double> y) const;

  NonnegMatrix scaled(double c) const;
  NonnegMatrix transposed() const;

  /// Strong connectivity of the support digraph.
  bool irreducible() const;

  /// Period of an irreducible support digraph (gcd of cycle lengths), via BFS
  /// levels from state 0. Returns 0 for a reducible matrix.
  std::size_t period() const;

 private:
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
};

}  // namespace renyirate
