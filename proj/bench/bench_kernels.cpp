// Copyright 2026 The Authors.
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

// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "milnork/dependence.hpp"
#include "milnork/dual.hpp"
#include "milnork/kernels.hpp"
#include "milnork/parse.hpp"

using namespace milnork;

namespace {

struct ScanInput {
  Functional f, g;
  std::vector<RatFunc> xs, ys;
};

// A pair on one chain: no witness exists, so the scan visits the whole pool.
const ScanInput& scan_input() {
  static ScanInput in = [] {
    RingPtr r = parse_field("F5(x,y)");
    Valuation w = Valuation::composite(r, {parse_expr("x", r), parse_expr("y", r)});
    ScanInput s{Functional::coordinate(w, 0), Functional::coordinate(w, 1).scaled(3), {}, {}};
    s.xs = witness_pool(r, {s.f, s.g}, 1024);
    for (const auto& x : s.xs) s.ys.push_back(x.one_minus());
    return s;
  }();
  return in;
}

void BM_WitnessScanSerial(benchmark::State& st) {
  const auto& in = scan_input();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::witness_scan_serial(in.f, in.g, in.xs, in.ys));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(in.xs.size()));
}

void BM_WitnessScanParallel(benchmark::State& st) {
  const auto& in = scan_input();
  for (auto _ : st) benchmark::DoNotOptimize(kernels::witness_scan_parallel(in.f, in.g, in.xs, in.ys));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(in.xs.size()));
}

void BM_EvaluateSerial(benchmark::State& st) {
  const auto& in = scan_input();
  std::vector<Functional> fs{in.f, in.g, in.f + in.g};
  for (auto _ : st) benchmark::DoNotOptimize(kernels::evaluate_serial(fs, in.xs));
}

void BM_EvaluateParallel(benchmark::State& st) {
  const auto& in = scan_input();
  std::vector<Functional> fs{in.f, in.g, in.f + in.g};
  for (auto _ : st) benchmark::DoNotOptimize(kernels::evaluate_parallel(fs, in.xs));
}

void BM_Closure(benchmark::State& st) {
  RingPtr r = parse_field("Q(t)");
  ClosureOptions o;
  o.rounds = 3;
  o.parallel = st.range(0) != 0;
  for (auto _ : st)
    benchmark::DoNotOptimize(milnor_closure(r, {parse_expr("t", r)}, SubgroupSpec::trivial(), std::nullopt, o).dim());
}

}  // namespace

BENCHMARK(BM_WitnessScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WitnessScanParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Closure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
