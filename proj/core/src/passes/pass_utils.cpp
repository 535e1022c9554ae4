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

#include "pass_utils.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "qforge/support/gates.hpp"

namespace qforge::passes::detail {

using namespace ir;

std::optional<double> const_float(const Function &fn, ValueId v) {
  const Operation *def = fn.def(v);
  if (!def || def->name != op::kConstant) return std::nullopt;
  if (auto f = def->float_attr("value")) return f;
  if (auto i = def->int_attr("value")) return static_cast<double>(*i);
  return std::nullopt;
}

std::optional<std::int64_t> const_int(const Function &fn, ValueId v) {
  const Operation *def = fn.def(v);
  if (!def || def->name != op::kConstant) return std::nullopt;
  if (auto i = def->int_attr("value")) return i;
  if (auto b = def->bool_attr("value")) return *b ? 1 : 0;
  return std::nullopt;
}

std::optional<std::vector<double>> const_params(const Function &fn, const Operation &op) {
  if (const auto *angles = gate_angles(op)) return *angles;
  std::vector<double> out;
  for (ValueId v : gate_param_operands(op)) {
    auto f = const_float(fn, v);
    if (!f) return std::nullopt;
    out.push_back(*f);
  }
  return out;
}

bool rewritable(const Operation &op) {
  if (!is_gate(op) || is_broadcast(op) || op.erased) return false;
  if (!segment_of(op).empty()) return false;
  for (const Region *r = op.parent; r && r->parent_op; r = r->parent_op->parent) {
    if (is_modifier_region(*r->parent_op) || !segment_of(*r->parent_op).empty()) return false;
  }
  return true;
}

Operation *sole_user(const Function &fn, ValueId v) {
  const auto &users = fn.users(v);
  if (users.size() != 1) return nullptr;
  Operation *u = users.front();
  const Operation *def = fn.def(v);
  if (def && u->parent != def->parent) return nullptr;
  return u;
}

std::optional<std::size_t> operand_slot(const Operation &op, ValueId v, std::size_t count) {
  for (std::size_t i = 0; i < std::min(count, op.num_operands()); ++i)
    if (op.operand(i) == v) return i;
  return std::nullopt;
}

void bypass(Function &fn, Operation &op) {
  if (op.name == op::kMeasure) throw InternalError("bypass: measurement has a classical result");
  for (std::size_t i = 0; i < op.results.size(); ++i) fn.replace_all_uses(op.results[i], op.operand(i));
  fn.erase(op);
}

std::unique_ptr<Operation> make_gate(Function &fn, const std::string &name, std::vector<ValueId> qubits,
                                     std::vector<double> angles, const Operation &like) {
  Attributes attrs;
  if (auto seg = like.attrs.find("segment"); seg != like.attrs.end()) attrs.insert(*seg);
  if (!angles.empty()) attrs["angles"] = std::move(angles);
  std::vector<Type> results(qubits.size(), Type::qubit());
  return fn.make_op(std::string(op::kGatePrefix) + name, std::move(qubits), results, std::move(attrs),
                    like.loc);
}

double wrap_angle(double a) {
  constexpr double two_pi = 2 * std::numbers::pi;
  double r = std::remainder(a, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

bool near_zero_mod(double a, double period) { return std::abs(std::remainder(a, period)) < 1e-12; }

namespace {

void collect_sensitive_calls(const Region &region, bool sensitive, std::set<std::string> &out,
                             std::vector<std::string> &work) {
  for (const auto &op : region.ops) {
    if (op->erased) continue;
    bool inner = sensitive || is_modifier_region(*op) || !segment_of(*op).empty();
    if (op->name == op::kCall && inner) {
      auto callee = op->str_attr("callee");
      if (callee && out.insert(*callee).second) work.push_back(*callee);
    }
    for (const auto &r : op->regions) collect_sensitive_calls(*r, inner, out, work);
  }
}

}  // namespace

void for_each_function(Module &module, const std::function<void(Function &)> &fn, bool rewriting) {
  std::set<std::string> sensitive;
  if (rewriting) {
    std::vector<std::string> work;
    for (const auto &f : module.functions)
      if (!f->is_declaration) collect_sensitive_calls(f->body, false, sensitive, work);
    while (!work.empty()) {
      std::string name = work.back();
      work.pop_back();
      if (const Function *f = module.find(name); f && !f->is_declaration)
        collect_sensitive_calls(f->body, true, sensitive, work);
    }
  }
  for (auto &f : module.functions) {
    if (f->is_declaration || sensitive.count(f->name)) continue;
    fn(*f);
  }
}

std::vector<Region *> regions_of(Function &fn) {
  std::vector<Region *> out{&fn.body};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (auto &op : out[i]->ops)
      if (!op->erased)
        for (auto &r : op->regions) out.push_back(r.get());
  return out;
}

}  // namespace qforge::passes::detail
