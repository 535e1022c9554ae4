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

#include "qforge/symtab/symbol_table.hpp"

namespace qforge::symtab {

SymbolTable::SymbolTable() {
  scopes_.emplace_back();
  frames_.emplace_back();
}

void SymbolTable::enter_scope() { scopes_.emplace_back(); }

void SymbolTable::exit_scope() {
  if (scopes_.size() <= 1) throw InternalError("exit_scope called at global scope");
  scopes_.pop_back();
}

bool SymbolTable::declare(SymbolInfo info) {
  auto &scope = scopes_.back();
  info.scope_depth = scopes_.size();
  std::string key = info.name;
  return scope.emplace(std::move(key), std::move(info)).second;
}

const SymbolInfo *SymbolTable::lookup(const std::string &name) const {
  for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
    auto found = it->find(name);
    if (found != it->end()) return &found->second;
  }
  return nullptr;
}

const SymbolInfo *SymbolTable::lookup_local(const std::string &name) const {
  auto found = scopes_.back().find(name);
  return found == scopes_.back().end() ? nullptr : &found->second;
}

std::optional<ConstValue> SymbolTable::eval_const_expr(const frontend::AstNode &expr) const {
  return symtab::eval_const_expr(
      expr, [this](const std::string &name) -> std::optional<std::optional<ConstValue>> {
        const SymbolInfo *s = lookup(name);
        if (!s) return std::nullopt;
        if (s->is_const && s->const_value) return s->const_value;
        return std::optional<ConstValue>{};  // bound but not constant; shadows builtins
      });
}

void SymbolTable::register_alias(ir::ValueId alias, std::vector<QubitSlot> elements) {
  aliases_[alias] = std::move(elements);
}

void SymbolTable::register_opaque(ir::ValueId array) { opaque_.insert(array); }

std::optional<QubitSlot> SymbolTable::resolve(ir::ValueId array, std::int64_t index) const {
  if (opaque_.count(array)) return std::nullopt;
  auto it = aliases_.find(array);
  if (it == aliases_.end()) return QubitSlot{array, index};
  if (index < 0 || index >= static_cast<std::int64_t>(it->second.size())) return std::nullopt;
  return it->second[static_cast<std::size_t>(index)];
}

std::set<ir::ValueId> SymbolTable::roots_of(ir::ValueId array) const {
  auto it = aliases_.find(array);
  if (it == aliases_.end()) return {array};
  std::set<ir::ValueId> out;
  for (const auto &slot : it->second) out.insert(slot.root);
  return out;
}

void SymbolTable::push_tracking_frame() { frames_.emplace_back(); }

void SymbolTable::pop_tracking_frame() {
  if (frames_.size() <= 1) throw InternalError("tracking frame underflow");
  frames_.pop_back();
}

std::optional<ir::ValueId> SymbolTable::current(const QubitSlot &slot) const {
  const Frame &f = frames_.back();
  if (f.disabled.count(slot.root)) return std::nullopt;
  auto it = f.current.find(slot);
  if (it == f.current.end()) return std::nullopt;
  return it->second;
}

void SymbolTable::start_chain(const QubitSlot &slot, ir::ValueId value) {
  Frame &f = frames_.back();
  if (f.disabled.count(slot.root)) return;
  if (auto it = f.current.find(slot); it != f.current.end()) f.owner.erase(it->second);
  f.current[slot] = value;
  f.owner[value] = slot;
}

void SymbolTable::update_qubit_value(ir::ValueId prev, ir::ValueId next) {
  Frame &f = frames_.back();
  auto it = f.owner.find(prev);
  if (it == f.owner.end())
    throw InternalError("update_qubit_value: %" + std::to_string(prev.raw) + " is not tracked");
  QubitSlot slot = it->second;
  f.owner.erase(it);
  f.current[slot] = next;
  f.owner[next] = slot;
}

void SymbolTable::end_chain(ir::ValueId value) {
  Frame &f = frames_.back();
  auto it = f.owner.find(value);
  if (it == f.owner.end()) return;
  f.current.erase(it->second);
  f.owner.erase(it);
}

bool SymbolTable::is_tracked(ir::ValueId value) const { return frames_.back().owner.count(value) > 0; }

void SymbolTable::invalidate_all() {
  Frame &f = frames_.back();
  f.current.clear();
  f.owner.clear();
}

void SymbolTable::invalidate_root(ir::ValueId root) {
  Frame &f = frames_.back();
  for (auto it = f.current.begin(); it != f.current.end();) {
    if (it->first.root == root) {
      f.owner.erase(it->second);
      it = f.current.erase(it);
    } else {
      ++it;
    }
  }
}

void SymbolTable::disable_tracking(ir::ValueId root) {
  invalidate_root(root);
  frames_.back().disabled.insert(root);
}

bool SymbolTable::tracking_disabled(ir::ValueId root) const {
  return frames_.back().disabled.count(root) > 0;
}

}  // namespace qforge::symtab
