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

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qforge/ir/ir.hpp"

namespace qforge::passes {

struct PassConfig {
  /// Pass names to run; empty means every pass of the default pipeline.
  std::set<std::string> enabled;
  int peephole_repeat = 8;
  /// Total constant trip count a function may unroll.
  std::int64_t unroll_threshold = 1'048'576;
  /// Max trip count times body size for a single loop (and max broadcast expansion size).
  std::int64_t unroll_op_budget = 256;
  bool verify_each = true;

  bool runs(std::string_view name) const { return enabled.empty() || enabled.count(std::string(name)) > 0; }
};

// Each pass returns true when it changed the module.

/// Throws CompileError on recursive call chains.
bool inline_calls(ir::Module &module);
bool unroll_affine_loops(ir::Module &module, const PassConfig &config = {});
bool propagate_constants(ir::Module &module);
bool remove_identity_pairs(ir::Module &module);
/// Pairwise merging of mergeable neighbours, restarting after each merge.
bool merge_rotations(ir::Module &module);
bool permute_commuting_gates(ir::Module &module);
bool simplify_gate_sequences(ir::Module &module);
bool lift_qubit_extracts(ir::Module &module);
bool eliminate_dead_code(ir::Module &module);

struct PassInfo {
  std::string_view name;
  bool (*run)(ir::Module &, const PassConfig &);
};

/// Registry in pipeline order.
std::span<const PassInfo> all_passes();
const PassInfo *find_pass(std::string_view name);

struct PipelineTrace {
  std::vector<std::string> passes_run;
  int peephole_rounds = 0;
};

/// inline, unroll, const-prop, then the peephole loop until no change (at most
/// peephole_repeat rounds), then dce. Verifies after each pass when enabled.
PipelineTrace run_pipeline(ir::Module &module, const PassConfig &config = {});

/// Runs the named passes once each, in the given order.
PipelineTrace run_passes(ir::Module &module, const std::vector<std::string> &names,
                         const PassConfig &config = {});

}  // namespace qforge::passes
