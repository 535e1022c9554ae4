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

#include "qforge/ir/ir.hpp"

#include <algorithm>

#include "qforge/support/gates.hpp"

namespace qforge::ir {

// ---- Operation -------------------------------------------------------------

namespace {

template <typename T>
const T *attr_as(const Attributes &attrs, const std::string &key) {
  auto it = attrs.find(key);
  if (it == attrs.end()) return nullptr;
  return std::get_if<T>(&it->second);
}

}  // namespace

std::optional<std::int64_t> Operation::int_attr(const std::string &key) const {
  if (auto *v = attr_as<std::int64_t>(attrs, key)) return *v;
  return std::nullopt;
}
std::optional<double> Operation::float_attr(const std::string &key) const {
  if (auto *v = attr_as<double>(attrs, key)) return *v;
  return std::nullopt;
}
std::optional<bool> Operation::bool_attr(const std::string &key) const {
  if (auto *v = attr_as<bool>(attrs, key)) return *v;
  return std::nullopt;
}
std::optional<std::string> Operation::str_attr(const std::string &key) const {
  if (auto *v = attr_as<std::string>(attrs, key)) return *v;
  return std::nullopt;
}
const std::vector<double> *Operation::floats_attr(const std::string &key) const {
  return attr_as<std::vector<double>>(attrs, key);
}
const std::vector<std::string> *Operation::strs_attr(const std::string &key) const {
  return attr_as<std::vector<std::string>>(attrs, key);
}

// ---- Function ---------------------------------------------------------------

std::vector<Type> Function::param_types() const {
  if (is_declaration) return decl_param_types;
  std::vector<Type> out;
  for (ValueId v : body.args) out.push_back(type(v));
  return out;
}

ValueId Function::new_value(Type t, Operation *def) {
  ValueId id{static_cast<std::uint32_t>(values_.size())};
  values_.push_back(ValueInfo{t, def, nullptr, {}});
  return id;
}

ValueId Function::add_region_arg(Region &region, Type t) {
  ValueId v = new_value(t, nullptr);
  values_[v.raw].arg_of = &region;
  region.args.push_back(v);
  return v;
}

void Function::add_use(ValueId v, Operation *user) {
  if (!v.valid() || v.raw >= values_.size())
    throw InternalError("operand refers to unknown value in op '" + user->name + "'");
  values_[v.raw].users.push_back(user);
}

void Function::drop_use(ValueId v, Operation *user) {
  auto &users = values_.at(v.raw).users;
  auto it = std::find(users.begin(), users.end(), user);
  if (it != users.end()) users.erase(it);
}

std::unique_ptr<Operation> Function::make_op(std::string op_name, std::vector<ValueId> operands,
                                             const std::vector<Type> &result_types,
                                             Attributes attrs, SourceLocation loc) {
  auto op = std::make_unique<Operation>();
  op->name = std::move(op_name);
  op->attrs = std::move(attrs);
  op->loc = loc;
  op->operands_ = std::move(operands);
  for (ValueId v : op->operands_) add_use(v, op.get());
  for (const Type &t : result_types) op->results.push_back(new_value(t, op.get()));
  return op;
}

Operation *Function::append(Region &region, std::unique_ptr<Operation> op) {
  op->parent = &region;
  op->slot = region.ops.size();
  region.ops.push_back(std::move(op));
  return region.ops.back().get();
}

Region &Function::add_region(Operation &op) {
  op.regions.push_back(std::make_unique<Region>());
  op.regions.back()->parent_op = &op;
  return *op.regions.back();
}

void Function::set_operand(Operation &op, std::size_t index, ValueId v) {
  ValueId old = op.operands_.at(index);
  if (old == v) return;
  drop_use(old, &op);
  op.operands_[index] = v;
  add_use(v, &op);
}

void Function::set_operands(Operation &op, std::vector<ValueId> operands) {
  for (ValueId v : op.operands_) drop_use(v, &op);
  op.operands_ = std::move(operands);
  for (ValueId v : op.operands_) add_use(v, &op);
}

void Function::replace_all_uses(ValueId from, ValueId to) {
  if (from == to) return;
  std::vector<Operation *> users = std::move(values_.at(from.raw).users);
  values_[from.raw].users.clear();
  for (Operation *user : users) {
    for (ValueId &operand : user->operands_) {
      if (operand == from) {
        operand = to;
        values_.at(to.raw).users.push_back(user);
        break;  // one user entry per operand slot
      }
    }
  }
}

void Function::drop_uses_recursive(Operation &op) {
  for (ValueId v : op.operands_) drop_use(v, &op);
  op.operands_.clear();
  for (auto &region : op.regions)
    for (auto &inner : region->ops)
      if (inner && !inner->erased) {
        inner->erased = true;
        drop_uses_recursive(*inner);
      }
}

void Function::erase(Operation &op) {
  if (op.erased) return;
  op.erased = true;
  drop_uses_recursive(op);
}

Operation *Function::replace(Operation &old, std::unique_ptr<Operation> repl) {
  Region *region = old.parent;
  std::size_t slot = old.slot;
  if (!region || slot >= region->ops.size() || region->ops[slot].get() != &old)
    throw InternalError("replace: op '" + old.name + "' is not attached");
  erase(old);
  repl->parent = region;
  repl->slot = slot;
  region->ops[slot] = std::move(repl);  // destroys old
  return region->ops[slot].get();
}

void Function::renumber(Region &region) {
  for (std::size_t i = 0; i < region.ops.size(); ++i) {
    region.ops[i]->slot = i;
    region.ops[i]->parent = &region;
  }
}

void Function::replace_with_many(Operation &old, std::vector<std::unique_ptr<Operation>> ops) {
  Region *region = old.parent;
  std::size_t slot = old.slot;
  if (!region || region->ops[slot].get() != &old)
    throw InternalError("replace_with_many: op '" + old.name + "' is not attached");
  erase(old);
  std::vector<std::unique_ptr<Operation>> merged;
  merged.reserve(region->ops.size() + ops.size());
  for (std::size_t i = 0; i < region->ops.size(); ++i) {
    if (i == slot) {
      for (auto &o : ops) merged.push_back(std::move(o));
    } else {
      merged.push_back(std::move(region->ops[i]));
    }
  }
  region->ops = std::move(merged);
  renumber(*region);
}

Operation *Function::insert_before(Operation &pos, std::unique_ptr<Operation> op) {
  Region *region = pos.parent;
  std::size_t slot = pos.slot;
  Operation *raw = op.get();
  region->ops.insert(region->ops.begin() + static_cast<std::ptrdiff_t>(slot), std::move(op));
  renumber(*region);
  return raw;
}

std::vector<std::unique_ptr<Operation>> Function::take_all(Region &region) {
  std::vector<std::unique_ptr<Operation>> out = std::move(region.ops);
  region.ops.clear();
  for (auto &op : out) op->parent = nullptr;
  return out;
}

void Function::purge(Region &region) {
  auto &ops = region.ops;
  ops.erase(std::remove_if(ops.begin(), ops.end(),
                           [](const std::unique_ptr<Operation> &op) { return !op || op->erased; }),
            ops.end());
  renumber(region);
  for (auto &op : ops)
    for (auto &inner : op->regions) purge(*inner);
}

std::unique_ptr<Operation> Function::clone_from(const Function &src, const Operation &op,
                                                ValueMap &map) {
  std::vector<ValueId> operands;
  operands.reserve(op.operands_.size());
  for (ValueId v : op.operands_) {
    auto it = map.find(v);
    if (it != map.end()) {
      operands.push_back(it->second);
    } else if (&src == this) {
      operands.push_back(v);
    } else {
      throw InternalError("clone: unmapped operand in op '" + op.name + "'");
    }
  }
  std::vector<Type> types;
  for (ValueId r : op.results) types.push_back(src.type(r));
  auto copy = make_op(op.name, std::move(operands), types, op.attrs, op.loc);
  for (std::size_t i = 0; i < op.results.size(); ++i) map[op.results[i]] = copy->results[i];
  for (const auto &region : op.regions) {
    Region &dst = add_region(*copy);
    for (ValueId a : region->args) map[a] = add_region_arg(dst, src.type(a));
    for (const auto &inner : region->ops)
      if (!inner->erased) append(dst, clone_from(src, *inner, map));
  }
  return copy;
}

// ---- Module -----------------------------------------------------------------

Function *Module::find(std::string_view name) const {
  for (const auto &f : functions)
    if (f->name == name) return f.get();
  return nullptr;
}

const Global *Module::find_global(std::string_view name) const {
  for (const auto &g : globals)
    if (g.name == name) return &g;
  return nullptr;
}

Function &Module::add_function(std::string name) {
  functions.push_back(std::make_unique<Function>(std::move(name)));
  return *functions.back();
}

// ---- traversal ----------------------------------------------------------------

void walk(Region &region, const std::function<void(Operation &)> &fn) {
  // Index loop: fn may replace the current slot.
  for (std::size_t i = 0; i < region.ops.size(); ++i) {
    Operation *op = region.ops[i].get();
    if (!op || op->erased) continue;
    fn(*op);
    op = region.ops[i].get();
    if (!op || op->erased) continue;
    for (auto &inner : op->regions) walk(*inner, fn);
  }
}

void walk(const Region &region, const std::function<void(const Operation &)> &fn) {
  for (const auto &op : region.ops) {
    if (!op || op->erased) continue;
    fn(*op);
    for (const auto &inner : op->regions) walk(static_cast<const Region &>(*inner), fn);
  }
}

std::size_t count_ops(const Region &region) {
  std::size_t n = 0;
  walk(region, [&](const Operation &) { ++n; });
  return n;
}

// ---- op vocabulary ----------------------------------------------------------------

bool is_arith_binary(std::string_view name) {
  static constexpr std::string_view kOps[] = {
      "arith.add", "arith.sub", "arith.mul", "arith.div", "arith.rem", "arith.pow",
      "arith.and", "arith.or",  "arith.xor", "arith.shl", "arith.shr"};
  return std::find(std::begin(kOps), std::end(kOps), name) != std::end(kOps);
}

bool is_gate(const Operation &op) {
  if (op.name.rfind(op::kGatePrefix, 0) != 0) return false;
  return op.name != op::kMeasure && op.name != op::kReset;
}

bool is_broadcast(const Operation &op) { return is_gate(op) && op.results.empty(); }

std::string gate_name(const Operation &op) { return op.name.substr(op::kGatePrefix.size()); }

bool is_modifier_region(const Operation &op) {
  return op.name == op::kCtrlRegion || op.name == op::kAdjRegion || op.name == op::kPowRegion;
}

bool is_region_op(const Operation &op) { return !op.regions.empty(); }

std::string segment_of(const Operation &op) { return op.str_attr("segment").value_or(""); }

bool is_pure(const Operation &op) {
  const std::string &n = op.name;
  if (n == op::kConstant || n == op::kCast || n == op::kCmp || n == op::kMathCall ||
      n == op::kGlobalGet || n == op::kLoad || n == op::kExtract || n == op::kSlice ||
      n == op::kConcat || n == "arith.neg" || n == "arith.not" || is_arith_binary(n))
    return true;
  return false;
}

const std::vector<double> *gate_angles(const Operation &op) { return op.floats_attr("angles"); }

std::size_t gate_qubit_count(const Operation &op) {
  if (is_broadcast(op)) return 1;
  return op.results.size();
}

std::vector<ValueId> gate_param_operands(const Operation &op) {
  std::size_t nq = gate_qubit_count(op);
  return {op.operands().begin() + static_cast<std::ptrdiff_t>(nq), op.operands().end()};
}

}  // namespace qforge::ir
