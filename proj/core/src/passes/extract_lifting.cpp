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

#include <map>

#include "pass_utils.hpp"
#include "qforge/passes/passes.hpp"

namespace qforge::passes {

using namespace ir;
using detail::const_int;

namespace {

struct Line {
  Operation *extract;
  ValueId start;  // where the chain walk resumes
};

/// Last value of the qubit line starting at `v`, when every op on it precedes `limit`.
std::optional<ValueId> chain_end(const Function &fn, ValueId v, const Operation &limit) {
  while (true) {
    const auto &users = fn.users(v);
    if (users.empty()) return v;
    if (users.size() != 1) return std::nullopt;
    Operation *u = users.front();
    if (u->parent != limit.parent || u->slot >= limit.slot) return std::nullopt;
    if (u->name == op::kMeasure) {
      v = u->results[1];
    } else if (u->name == op::kReset || (is_gate(*u) && !is_broadcast(*u))) {
      auto pos = detail::operand_slot(*u, v, u->results.size());
      if (!pos) return std::nullopt;
      v = u->results[*pos];
    } else {
      return std::nullopt;  // consumed by a control or similar
    }
  }
}

bool blocks(const Function &fn, const Operation &op) {
  if (!op.regions.empty() || op.name == op::kCall) return true;
  for (ValueId v : op.operands())
    if (fn.type(v).is_qarray()) return true;
  return false;
}

bool lift_region(Function &fn, Region &region) {
  bool changed = false;
  std::map<std::pair<ValueId, std::int64_t>, Line> lines;
  for (std::size_t i = 0; i < region.ops.size(); ++i) {
    Operation *op = region.ops[i].get();
    if (op->erased) continue;
    if (op->name == op::kExtract) {
      auto idx = const_int(fn, op->operand(1));
      if (!idx) {
        lines.clear();
        continue;
      }
      auto key = std::pair{op->operand(0), *idx};
      auto it = lines.find(key);
      if (it != lines.end() && segment_of(*it->second.extract) == segment_of(*op)) {
        if (auto end = chain_end(fn, it->second.start, *op)) {
          fn.replace_all_uses(op->result(), *end);
          fn.erase(*op);
          it->second.start = *end;
          changed = true;
          continue;
        }
      }
      lines[key] = Line{op, op->result()};
      continue;
    }
    if (blocks(fn, *op)) lines.clear();
  }
  return changed;
}

}  // namespace

bool lift_qubit_extracts(Module &module) {
  bool changed = false;
  detail::for_each_function(module, [&](Function &fn) {
    for (Region *r : detail::regions_of(fn)) changed |= lift_region(fn, *r);
    fn.purge();
  });
  return changed;
}

}  // namespace qforge::passes
