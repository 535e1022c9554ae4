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
#include <set>

#include "pass_utils.hpp"
#include "qforge/passes/passes.hpp"

namespace qforge::passes {

using namespace ir;

namespace {

void collect_calls(Region &region, std::vector<Operation *> &out) {
  for (auto &op : region.ops) {
    if (op->erased) continue;
    if (op->name == op::kCall) out.push_back(op.get());
    for (auto &r : op->regions) collect_calls(*r, out);
  }
}

void stamp_segment(Operation &op, const Attribute &segment) {
  op.attrs["segment"] = segment;
  for (auto &r : op.regions)
    for (auto &inner : r->ops) stamp_segment(*inner, segment);
}

/// Replaces `call` with a copy of `callee`'s body.
void inline_one(Function &caller, Operation &call, const Function &callee) {
  ValueMap map;
  for (std::size_t i = 0; i < callee.body.args.size(); ++i) map[callee.body.args[i]] = call.operand(i);
  std::vector<std::unique_ptr<Operation>> body;
  std::vector<ValueId> returned;
  for (const auto &op : callee.body.ops) {
    if (op->erased) continue;
    if (op->name == op::kReturn) {
      for (ValueId v : op->operands()) returned.push_back(map.count(v) ? map.at(v) : v);
      continue;
    }
    body.push_back(caller.clone_from(callee, *op, map));
  }
  if (auto seg = call.attrs.find("segment"); seg != call.attrs.end())
    for (auto &op : body) stamp_segment(*op, seg->second);
  for (std::size_t i = 0; i < call.results.size(); ++i) caller.replace_all_uses(call.results[i], returned.at(i));
  caller.replace_with_many(call, std::move(body));
}

}  // namespace

bool inline_calls(Module &module) {
  // Post-order over the call graph so every callee is call-free when inlined.
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> marks;
  std::vector<Function *> order;
  std::function<void(Function &)> visit = [&](Function &fn) {
    marks[fn.name] = Mark::Active;
    std::vector<Operation *> calls;
    collect_calls(fn.body, calls);
    for (Operation *call : calls) {
      Function *callee = module.find(call->str_attr("callee").value_or(""));
      if (!callee || callee->is_declaration) continue;
      Mark m = marks[callee->name];
      if (m == Mark::Active)
        throw CompileError("recursive call chain through '" + callee->name + "' is not supported",
                           call->loc);
      if (m == Mark::None) visit(*callee);
    }
    marks[fn.name] = Mark::Done;
    order.push_back(&fn);
  };
  for (auto &fn : module.functions)
    if (!fn->is_declaration && marks[fn->name] == Mark::None) visit(*fn);

  bool changed = false;
  for (Function *fn : order) {
    std::vector<Operation *> calls;
    collect_calls(fn->body, calls);
    for (Operation *call : calls) {
      const Function *callee = module.find(call->str_attr("callee").value_or(""));
      if (!callee || callee->is_declaration) continue;
      inline_one(*fn, *call, *callee);
      changed = true;
    }
    fn->purge();
  }
  return changed;
}

}  // namespace qforge::passes
