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

#include <set>

#include "pass_utils.hpp"
#include "qforge/passes/passes.hpp"

namespace qforge::passes {

using namespace ir;

namespace {

bool unused(const Function &fn, const Operation &op) {
  for (ValueId r : op.results)
    if (fn.has_users(r)) return false;
  return true;
}

bool all_empty(const Operation &op) {
  for (const auto &r : op.regions)
    for (const auto &inner : r->ops)
      if (!inner->erased) return false;
  return true;
}

/// Erases `root` when every user is one of the ops `sink` accepts (those go too).
bool erase_with_sinks(Function &fn, Operation &root, bool (*sink)(const Operation &)) {
  std::vector<Operation *> users(fn.users(root.result()).begin(), fn.users(root.result()).end());
  for (Operation *u : users)
    if (!sink(*u) || u->results.size() != 0) return false;
  for (Operation *u : users) fn.erase(*u);
  fn.erase(root);
  return true;
}

bool sweep(Function &fn, Region &region) {
  bool changed = false;
  for (std::size_t k = region.ops.size(); k-- > 0;) {
    Operation &op = *region.ops[k];
    if (op.erased) continue;
    for (auto &r : op.regions) changed |= sweep(fn, *r);
    if (is_pure(op) && unused(fn, op)) {
      fn.erase(op);
      changed = true;
    } else if ((op.name == op::kIf || op.name == op::kFor || is_modifier_region(op)) && all_empty(op)) {
      fn.erase(op);
      changed = true;
    } else if (op.name == op::kAlloca) {
      changed |= erase_with_sinks(fn, op, [](const Operation &u) { return u.name == op::kStore; });
    } else if (op.name == op::kQalloc) {
      changed |= erase_with_sinks(fn, op, [](const Operation &u) { return u.name == op::kDealloc; });
    }
  }
  return changed;
}

void mark_reachable(const Module &module, const Function &fn, std::set<std::string> &seen) {
  if (!seen.insert(fn.name).second) return;
  walk(fn.body, [&](const Operation &op) {
    if (op.name != op::kCall) return;
    if (const Function *callee = module.find(op.str_attr("callee").value_or("")))
      mark_reachable(module, *callee, seen);
  });
}

}  // namespace

bool eliminate_dead_code(Module &module) {
  bool changed = false;
  detail::for_each_function(module, [&](Function &fn) {
    while (sweep(fn, fn.body)) {
      changed = true;
      fn.purge();
    }
    fn.purge();
  });
  // Subroutines no longer called from main (typically after inlining).
  if (const Function *main = module.find("main")) {
    std::set<std::string> live;
    mark_reachable(module, *main, live);
    auto &fns = module.functions;
    auto keep = std::remove_if(fns.begin(), fns.end(), [&](const std::unique_ptr<Function> &f) {
      return !f->is_declaration && !live.count(f->name);
    });
    if (keep != fns.end()) {
      fns.erase(keep, fns.end());
      changed = true;
    }
  }
  return changed;
}

}  // namespace qforge::passes
