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

#include "renyirate/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "renyirate/error.hpp"

namespace renyirate {

namespace {

// Below this many stored entries the OpenMP fork costs more than it saves.
constexpr std::size_t kParallelNnz = 1 << 14;

std::vector<std::size_t> bfs_levels(const NonnegMatrix& m, bool transpose_view,
                                    const NonnegMatrix* transposed) {
  const std::size_t k = m.dim();
  const NonnegMatrix& g = transpose_view ? *transposed : m;
  std::vector<std::size_t> level(k, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> queue;
  queue.reserve(k);
  level[0] = 0;
  queue.push_back(0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t u = queue[head];
    for (std::size_t v : g.row_cols(u)) {
      if (level[v] == std::numeric_limits<std::size_t>::max()) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level;
}

}  // namespace

NonnegMatrix NonnegMatrix::from_dense(std::size_t k, std::span<const double> values) {
  if (k == 0) fail(ErrorKind::InvalidMatrix, "matrix dimension must be positive");
  if (values.size() != k * k) fail(ErrorKind::InvalidMatrix, "expected k*k entries");
  NonnegMatrix m;
  m.row_ptr_.assign(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double v = values[i * k + j];
      if (!std::isfinite(v) || v < 0.0) {
        fail(ErrorKind::InvalidMatrix,
             "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is negative or not finite");
      }
      if (v > 0.0) {
        m.cols_.push_back(j);
        m.vals_.push_back(v);
      }
    }
    m.row_ptr_[i + 1] = m.cols_.size();
  }
  return m;
}

NonnegMatrix NonnegMatrix::from_rows(std::size_t k, std::vector<std::vector<Entry>> rows) {
  if (k == 0) fail(ErrorKind::InvalidMatrix, "matrix dimension must be positive");
  if (rows.size() != k) fail(ErrorKind::InvalidMatrix, "expected k rows");
  NonnegMatrix m;
  m.row_ptr_.assign(k + 1, 0);
  for (std::size_t i = 0; i < k; ++i) {
    auto& row = rows[i];
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    for (std::size_t e = 0; e < row.size(); ++e) {
      if (row[e].col >= k) fail(ErrorKind::InvalidMatrix, "column index out of range");
      if (e > 0 && row[e].col == row[e - 1].col) fail(ErrorKind::InvalidMatrix, "duplicate column in row");
      if (!std::isfinite(row[e].value) || row[e].value < 0.0) {
        fail(ErrorKind::InvalidMatrix, "entry in row " + std::to_string(i) + " is negative or not finite");
      }
      if (row[e].value > 0.0) {
        m.cols_.push_back(row[e].col);
        m.vals_.push_back(row[e].value);
      }
    }
    m.row_ptr_[i + 1] = m.cols_.size();
  }
  return m;
}

double NonnegMatrix::at(std::size_t i, std::size_t j) const {
  auto cols = row_cols(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return vals_[row_ptr_[i] + static_cast<std::size_t>(it - cols.begin())];
}

std::vector<double> NonnegMatrix::to_dense() const {
  const std::size_t k = dim();
  std::vector<double> out(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) out[i * k + cols_[e]] = vals_[e];
  }
  return out;
}

void NonnegMatrix::multiply(std::span<const double> x, std::span<double> y, Exec exec) const {
  const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(dim());
  auto row = [&](std::ptrdiff_t i) {
    double acc = 0.0;
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) acc += vals_[e] * x[cols_[e]];
    y[i] = acc;
  };
  if (exec == Exec::Parallel && nonzeros() >= kParallelNnz) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < k; ++i) row(i);
  } else {
    for (std::ptrdiff_t i = 0; i < k; ++i) row(i);
  }
}

void NonnegMatrix::multiply_transpose(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) y[cols_[e]] += vals_[e] * x[i];
  }
}

NonnegMatrix NonnegMatrix::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::OutOfRange, "scale factor must be positive");
  NonnegMatrix out = *this;
  for (double& v : out.vals_) v *= c;
  return out;
}

NonnegMatrix NonnegMatrix::transposed() const {
  const std::size_t k = dim();
  std::vector<std::vector<Entry>> rows(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) rows[cols_[e]].push_back({i, vals_[e]});
  }
  return from_rows(k, std::move(rows));
}

bool NonnegMatrix::irreducible() const {
  const std::size_t k = dim();
  if (k == 0) return false;
  constexpr std::size_t unseen = std::numeric_limits<std::size_t>::max();
  auto fwd = bfs_levels(*this, false, nullptr);
  if (std::find(fwd.begin(), fwd.end(), unseen) != fwd.end()) return false;
  NonnegMatrix t = transposed();
  auto bwd = bfs_levels(*this, true, &t);
  return std::find(bwd.begin(), bwd.end(), unseen) == bwd.end();
}

std::size_t NonnegMatrix::period() const {
  if (!irreducible()) return 0;
  auto level = bfs_levels(*this, false, nullptr);
  std::size_t g = 0;
  for (std::size_t u = 0; u < dim(); ++u) {
    for (std::size_t v : row_cols(u)) {
      // Every edge u->v closes a cycle-length combination level[u] + 1 - level[v].
      long long d = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[v]);
      g = std::gcd(g, static_cast<std::size_t>(d < 0 ? -d : d));
    }
  }
  return g;
}

}  // namespace renyirate
