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

// Serial reference kernels against their OpenMP counterparts. The second
// benchmark argument selects the path: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "renyirate/approx.hpp"
#include "renyirate/enumeration.hpp"
#include "renyirate/spectral.hpp"

namespace {

using namespace renyirate;

ProcessModel example_hmm() {
  const double hidden[] = {0.7, 0.3, 0.3, 0.7};
  return ProcessModel::hmm(MarkovChain::from_dense(2, hidden), 2, {0.95, 0.05, 0.05, 0.95});
}

Exec exec_of(const benchmark::State& state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_PrefixEnumeration(benchmark::State& state) {
  ProcessModel p = example_hmm();
  EnumerationOptions opts;
  opts.exec = exec_of(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_prefix_sums(p, n, 2.0, opts));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_PrefixEnumeration)->ArgsProduct({{16, 20}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_JointTable(benchmark::State& state) {
  ProcessModel p = example_hmm();
  EnumerationOptions opts;
  opts.exec = exec_of(state);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(joint_table(p, n, opts));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_JointTable)->ArgsProduct({{16, 20}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_LiftedMatVec(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  MarkovApproximation a = markov_approximation(example_hmm(), m);
  NonnegMatrix r = alpha_power_matrix(block_lift(a).chain.transition(), 2.0);
  std::vector<double> x(r.dim(), 1.0);
  std::vector<double> y(r.dim());
  const Exec exec = exec_of(state);
  for (auto _ : state) {
    r.multiply(x, y, exec);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(r.nonzeros()));
}
BENCHMARK(BM_LiftedMatVec)->ArgsProduct({{12, 18}, {0, 1}})->UseRealTime();

void BM_PerronLifted(benchmark::State& state) {
  MarkovApproximation a = markov_approximation(example_hmm(), static_cast<std::size_t>(state.range(0)));
  NonnegMatrix r = alpha_power_matrix(block_lift(a).chain.transition(), 2.0);
  PerronOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(perron_eigen(r, opts));
}
BENCHMARK(BM_PerronLifted)->ArgsProduct({{14}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
