// Copyright 2026 The qasm-forge Authors
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

#include <benchmark/benchmark.h>

#include "qforge/driver/driver.hpp"
#include "qforge/driver/fixtures.hpp"
#include "qforge/runtime/interpreter.hpp"

namespace {

using namespace qforge;

// Source to lowered IR for the Trotter circuit; should stay roughly flat in n.
void BM_CompileTrotter(benchmark::State &state) {
  std::string src = driver::trotter_source(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto c = driver::compile(src);
    benchmark::DoNotOptimize(c.lir.functions.size());
  }
}
BENCHMARK(BM_CompileTrotter)->Arg(5)->Arg(10)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CompileTrotterO0(benchmark::State &state) {
  std::string src = driver::trotter_source(static_cast<int>(state.range(0)));
  driver::CompileOptions opts;
  opts.opt_level = 0;
  for (auto _ : state) benchmark::DoNotOptimize(driver::compile(src, driver::Stage::Lowered, opts).lir.functions.size());
}
BENCHMARK(BM_CompileTrotterO0)->Arg(5)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_EstimateHeisenberg(benchmark::State &state) {
  auto variant = state.range(1) ? driver::HeisenbergVariant::Manual : driver::HeisenbergVariant::ComputeAction;
  auto c = driver::compile(driver::heisenberg_source(static_cast<int>(state.range(0)), variant));
  for (auto _ : state) {
    auto r = runtime::execute(c.lir, {});
    benchmark::DoNotOptimize(r.stats.total_gates);
  }
}
BENCHMARK(BM_EstimateHeisenberg)->Args({6, 0})->Args({6, 1})->Args({50, 0})->Args({50, 1})->Unit(benchmark::kMillisecond);

void BM_DeuteronStatevector(benchmark::State &state) {
  auto c = driver::compile(driver::deuteron_source());
  runtime::ExecutionConfig cfg;
  cfg.backend = runtime::BackendKind::Statevector;
  for (auto _ : state) benchmark::DoNotOptimize(runtime::execute(c.lir, cfg).output.size());
}
BENCHMARK(BM_DeuteronStatevector)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
