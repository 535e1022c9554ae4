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

#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qforge/frontend/ast.hpp"
#include "qforge/ir/ir.hpp"
#include "qforge/lowering/lir.hpp"
#include "qforge/passes/passes.hpp"
#include "qforge/support/diagnostic.hpp"

namespace qforge::driver {

enum class Stage { Ast, Ir, IrOpt, Lowered };

struct CompileOptions {
  int opt_level = 1;
  /// Replaces the default pipeline; each pass runs once in order.
  std::optional<std::vector<std::string>> passes;
  passes::PassConfig pass_config;
};

struct Compilation {
  frontend::AstPtr ast;
  std::unique_ptr<ir::Module> module;  // optimized once past Stage::Ir
  lowering::LirModule lir;             // filled for Stage::Lowered
  passes::PipelineTrace trace;
};

/// Carries every diagnostic of a failed compile.
class CompileFailed : public std::runtime_error {
 public:
  explicit CompileFailed(DiagnosticList diags);
  const DiagnosticList &diagnostics() const { return diags_; }

 private:
  DiagnosticList diags_;
};

/// Runs the pipeline up to and including `stop`. Throws CompileFailed for user errors and
/// InternalError for broken invariants.
Compilation compile(std::string_view source, Stage stop = Stage::Lowered, const CompileOptions &options = {});

struct BenchRow {
  int n = 0;
  double mean_s = 0.0;
  double std_s = 0.0;
};

/// Wall-clock source-to-lowered compile time of the Trotter fixture per qubit count.
std::vector<BenchRow> bench_trotter(const std::vector<int> &ns, int repetitions,
                                    const CompileOptions &options = {});
std::string bench_csv(const std::vector<BenchRow> &rows);

}  // namespace qforge::driver
