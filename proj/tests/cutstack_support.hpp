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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "renyirate/cutstack.hpp"

namespace renyirate::cutstack::fixtures {

inline Rational q(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

struct Spec {
  std::string label;
  Rational width;
};

/// Columns laid side by side from start, each occupying height * width.
inline Gadget layout(const std::vector<Spec>& specs, Rational start = 0) {
  std::vector<Column> cols;
  for (const Spec& s : specs) {
    cols.push_back(Column::contiguous(start, s.width, s.label));
    start += s.width * static_cast<unsigned long>(s.label.size());
  }
  return Gadget(std::move(cols));
}

inline std::vector<Rational> kron(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out;
  for (const Rational& x : a)
    for (const Rational& y : b) out.push_back(x * y);
  return out;
}

inline std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

inline std::string random_label(std::mt19937_64& rng, std::size_t h, const std::string& alphabet = "01") {
  std::string s;
  for (std::size_t i = 0; i < h; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
  return s;
}

/// Random gadget with total width exactly total_width and heights in [1, max_h].
inline Gadget random_gadget(std::mt19937_64& rng, const Rational& total_width, const Rational& start, std::size_t max_h,
                     std::size_t max_cols) {
  std::size_t k = 1 + rng() % max_cols;
  std::vector<long> weights(k);
  long sum = 0;
  for (long& w : weights) sum += (w = 1 + static_cast<long>(rng() % 9));
  std::vector<Spec> specs;
  for (long w : weights) specs.push_back({random_label(rng, 1 + rng() % max_h), total_width * q(w, sum)});
  return layout(specs, start);
}

/// Uniform-height gadget of total measure 1 with the given labels and weights.
inline Gadget unit_gadget(const std::vector<std::string>& labels, const std::vector<long>& weights) {
  const std::size_t h = labels.front().size();
  long sum = 0;
  for (long w : weights) sum += w;
  std::vector<Spec> specs;
  for (std::size_t i = 0; i < labels.size(); ++i) specs.push_back({labels[i], q(weights[i], sum * static_cast<long>(h))});
  return layout(specs);
}

inline Gadget concat(const Gadget& a, const Gadget& b) {
  std::vector<Column> cols = a.columns();
  cols.insert(cols.end(), b.columns().begin(), b.columns().end());
  return Gadget(std::move(cols));
}

inline Gadget without_first(const Gadget& g) {
  return Gadget(std::vector<Column>(g.columns().begin() + 1, g.columns().end()));
}

/// C_0 followed by k >= 1 columns of height h; one of them carries label(C_0).
struct SplitInstance {
  Gadget gadget;
  Column c0;
  Gadget rest;
};

inline SplitInstance split_instance(std::mt19937_64& rng, std::size_t h, bool distinct_rest, double bound) {
  while (true) {
    std::size_t k = 2 + rng() % 3;
    std::string l0 = random_label(rng, h);
    std::vector<std::string> labels{l0};
    std::size_t twin = 1 + rng() % k;
    for (std::size_t i = 1; i <= k; ++i) {
      if (i == twin) {
        labels.push_back(l0);
        continue;
      }
      std::string l;
      do {
        l = random_label(rng, h);
      } while (l == l0 || (distinct_rest && std::find(labels.begin() + 1, labels.end(), l) != labels.end()));
      labels.push_back(l);
    }
    std::vector<long> weights;
    long sum = 0;
    for (std::size_t i = 0; i <= k; ++i) sum += weights.emplace_back(1 + static_cast<long>(rng() % 12));
    double same = static_cast<double>(weights[0] + weights[twin]) / static_cast<double>(sum);
    if (same > bound) continue;
    Gadget g = unit_gadget(labels, weights);
    return {g, g[0], without_first(g)};
  }
}

}  // namespace renyirate::cutstack::fixtures
