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

#include "qforge/ir/verifier.hpp"
#include "qforge/passes/passes.hpp"

namespace qforge::passes {

using ir::Module;

namespace {

const PassInfo kPasses[] = {
    {"inline", [](Module &m, const PassConfig &) { return inline_calls(m); }},
    {"unroll", [](Module &m, const PassConfig &c) { return unroll_affine_loops(m, c); }},
    {"const-prop", [](Module &m, const PassConfig &) { return propagate_constants(m); }},
    {"identity-pairs", [](Module &m, const PassConfig &) { return remove_identity_pairs(m); }},
    {"merge", [](Module &m, const PassConfig &) { return merge_rotations(m); }},
    {"permute", [](Module &m, const PassConfig &) { return permute_commuting_gates(m); }},
    {"simplify-sequences", [](Module &m, const PassConfig &) { return simplify_gate_sequences(m); }},
    {"extract-lifting", [](Module &m, const PassConfig &) { return lift_qubit_extracts(m); }},
    {"dce", [](Module &m, const PassConfig &) { return eliminate_dead_code(m); }},
};

constexpr std::size_t kFirstPeephole = 3, kLastPeephole = 7;

bool run_one(Module &module, const PassInfo &pass, const PassConfig &config, PipelineTrace &trace) {
  bool changed = pass.run(module, config);
  trace.passes_run.emplace_back(pass.name);
  if (config.verify_each) ir::verify_or_throw(module, std::string(pass.name));
  return changed;
}

}  // namespace

std::span<const PassInfo> all_passes() { return kPasses; }

const PassInfo *find_pass(std::string_view name) {
  for (const auto &p : kPasses)
    if (p.name == name) return &p;
  return nullptr;
}

PipelineTrace run_pipeline(Module &module, const PassConfig &config) {
  if (config.peephole_repeat < 1) throw InternalError("peephole_repeat must be at least 1");
  PipelineTrace trace;
  for (std::size_t i = 0; i < kFirstPeephole; ++i)
    if (config.runs(kPasses[i].name)) run_one(module, kPasses[i], config, trace);
  for (int round = 0; round < config.peephole_repeat; ++round) {
    bool changed = false;
    for (std::size_t i = kFirstPeephole; i <= kLastPeephole; ++i)
      if (config.runs(kPasses[i].name)) changed |= run_one(module, kPasses[i], config, trace);
    ++trace.peephole_rounds;
    if (!changed) break;
  }
  if (config.runs("dce")) run_one(module, kPasses[kLastPeephole + 1], config, trace);
  return trace;
}

PipelineTrace run_passes(Module &module, const std::vector<std::string> &names, const PassConfig &config) {
  PipelineTrace trace;
  for (const auto &name : names) {
    const PassInfo *p = find_pass(name);
    if (!p) throw CompileError("unknown pass '" + name + "'", {});
    run_one(module, *p, config, trace);
  }
  return trace;
}

}  // namespace qforge::passes
