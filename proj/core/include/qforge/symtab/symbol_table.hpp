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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "qforge/ir/ir.hpp"
#include "qforge/symtab/const_value.hpp"

namespace qforge::symtab {

enum class SymbolKind {
  Value,       // immutable SSA value (subroutine parameter, loop variable)
  Cell,        // mutable classical storage (memref cell)
  QubitArray,  // register-like; aliases and qubit parameters too
  Global,      // module-level constant
  Function,    // subroutine or extern
};

struct SymbolInfo {
  std::string name;
  SymbolKind kind = SymbolKind::Value;
  ir::ValueId value;
  ir::Type declared_type;
  bool is_const = false;
  std::optional<ConstValue> const_value;
  /// `qubit c;` or `qubit:c`: a one-element array that names a single qubit.
  bool scalar_qubit = false;
  SourceLocation loc;
  std::size_t scope_depth = 0;  // filled in by declare()
};

/// A qubit identified by its root array and a constant index into it.
struct QubitSlot {
  ir::ValueId root;
  std::int64_t index = 0;
  friend auto operator<=>(const QubitSlot &, const QubitSlot &) = default;
};

/// Scope stack of name bindings plus per-region qubit use-define tracking.
class SymbolTable {
 public:
  SymbolTable();

  void enter_scope();
  /// Throws InternalError at global scope.
  void exit_scope();
  std::size_t depth() const { return scopes_.size(); }

  /// False (and no change) when `name` is already bound in the innermost scope.
  bool declare(SymbolInfo info);
  const SymbolInfo *lookup(const std::string &name) const;
  const SymbolInfo *lookup_local(const std::string &name) const;

  std::optional<ConstValue> eval_const_expr(const frontend::AstNode &expr) const;

  // ---- qubit arrays and aliases ------------------------------------------------

  /// Records the element map of an alias array (slice or concatenation with constant bounds).
  void register_alias(ir::ValueId alias, std::vector<QubitSlot> elements);
  /// Marks an array whose elements cannot be resolved statically.
  void register_opaque(ir::ValueId array);
  bool is_opaque(ir::ValueId array) const { return opaque_.count(array) > 0; }
  /// Maps element `index` of `array` onto its root slot; nullopt for opaque arrays or
  /// out-of-range alias indices.
  std::optional<QubitSlot> resolve(ir::ValueId array, std::int64_t index) const;
  /// Root arrays that `array` may touch.
  std::set<ir::ValueId> roots_of(ir::ValueId array) const;

  // ---- use-define tracking -------------------------------------------------

  void push_tracking_frame();
  void pop_tracking_frame();

  /// Current SSA value for a slot in the innermost frame, if one is live.
  std::optional<ir::ValueId> current(const QubitSlot &slot) const;
  /// Starts a chain for `slot` (after an extract).
  void start_chain(const QubitSlot &slot, ir::ValueId value);
  /// Hands `next` out for future lookups of the slot that `prev` belonged to. Throws
  /// InternalError if `prev` is not a live tracked value.
  void update_qubit_value(ir::ValueId prev, ir::ValueId next);
  /// Ends the chain that `value` belongs to (consumed by a non-threading op).
  void end_chain(ir::ValueId value);
  bool is_tracked(ir::ValueId value) const;

  void invalidate_all();
  void invalidate_root(ir::ValueId root);
  /// Turns tracking off for `root` until the frame is popped.
  void disable_tracking(ir::ValueId root);
  bool tracking_disabled(ir::ValueId root) const;

 private:
  struct Frame {
    std::map<QubitSlot, ir::ValueId> current;
    std::unordered_map<ir::ValueId, QubitSlot, ir::ValueIdHash> owner;
    std::set<ir::ValueId> disabled;
  };

  std::vector<std::unordered_map<std::string, SymbolInfo>> scopes_;
  std::unordered_map<ir::ValueId, std::vector<QubitSlot>, ir::ValueIdHash> aliases_;
  std::set<ir::ValueId> opaque_;
  std::vector<Frame> frames_;
};

}  // namespace qforge::symtab
