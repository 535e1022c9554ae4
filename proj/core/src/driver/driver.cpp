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

#include "qforge/driver/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "qforge/driver/fixtures.hpp"
#include "qforge/frontend/parser.hpp"
#include "qforge/ir/builder.hpp"
#include "qforge/ir/verifier.hpp"
#include "qforge/lowering/lower.hpp"

namespace qforge::driver {

CompileFailed::CompileFailed(DiagnosticList diags)
    : std::runtime_error(diags.empty() ? "compilation failed" : diags.front().message), diags_(std::move(diags)) {}

Compilation compile(std::string_view source, Stage stop, const CompileOptions &options) {
  Compilation c;
  auto parsed = frontend::parse_source(source);
  if (!parsed.ok()) throw CompileFailed(std::move(parsed.diagnostics));
  c.ast = std::move(parsed.program);
  if (stop == Stage::Ast) return c;

  auto built = ir::build_module(*c.ast);
  if (!built.ok()) throw CompileFailed(std::move(built.diagnostics));
  c.module = std::move(built.module);
  ir::verify_or_throw(*c.module, "ir construction");
  if (stop == Stage::Ir) return c;

  try {
    if (options.passes) c.trace = passes::run_passes(*c.module, *options.passes, options.pass_config);
    else if (options.opt_level > 0) c.trace = passes::run_pipeline(*c.module, options.pass_config);
  } catch (const CompileError &e) {
    throw CompileFailed({e.diagnostic()});
  }
  if (stop == Stage::IrOpt) return c;

  c.lir = lowering::lower_to_cfg(*c.module);
  auto problems = lowering::check_module(c.lir);
  auto balance = lowering::check_region_balance(c.lir);
  problems.insert(problems.end(), balance.begin(), balance.end());
  if (!problems.empty()) throw InternalError("lowered module is malformed: " + problems.front());
  return c;
}

std::vector<BenchRow> bench_trotter(const std::vector<int> &ns, int repetitions, const CompileOptions &options) {
  std::vector<BenchRow> rows;
  int reps = std::max(repetitions, 1);
  for (int n : ns) {
    std::string src = trotter_source(n);
    std::vector<double> times;
    for (int r = 0; r < reps; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      compile(src, Stage::Lowered, options);
      auto t1 = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    double sd = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1)) : 0.0;
    rows.push_back({n, mean, sd});
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow> &rows) {
  std::string out = "n,mean_s,std_s\n";
  char buf[96];
  for (const auto &r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.6e,%.6e\n", r.n, r.mean_s, r.std_s);
    out += buf;
  }
  return out;
}

}  // namespace qforge::driver
