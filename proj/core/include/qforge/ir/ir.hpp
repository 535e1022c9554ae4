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

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "qforge/ir/type.hpp"
#include "qforge/support/diagnostic.hpp"

namespace qforge::ir {

struct ValueId {
  static constexpr std::uint32_t kInvalid = 0xffffffffu;
  std::uint32_t raw = kInvalid;

  bool valid() const { return raw != kInvalid; }
  friend auto operator<=>(const ValueId &, const ValueId &) = default;
};

struct ValueIdHash {
  std::size_t operator()(ValueId v) const noexcept { return std::hash<std::uint32_t>{}(v.raw); }
};
using ValueMap = std::unordered_map<ValueId, ValueId, ValueIdHash>;

using Attribute = std::variant<std::int64_t, double, bool, std::string, std::vector<double>,
                               std::vector<std::string>>;
using Attributes = std::map<std::string, Attribute>;

class Operation;
class Function;

/// Single-block region used by structured ops and function bodies.
struct Region {
  std::vector<ValueId> args;
  std::vector<std::unique_ptr<Operation>> ops;
  Operation *parent_op = nullptr;  // null for a function body
};

class Operation {
 public:
  std::string name;
  std::vector<ValueId> results;
  Attributes attrs;
  std::vector<std::unique_ptr<Region>> regions;
  Region *parent = nullptr;
  std::size_t slot = 0;  // index inside parent->ops
  SourceLocation loc;
  bool erased = false;

  const std::vector<ValueId> &operands() const { return operands_; }
  ValueId operand(std::size_t i) const { return operands_.at(i); }
  ValueId result(std::size_t i = 0) const { return results.at(i); }
  std::size_t num_operands() const { return operands_.size(); }
  Region &region(std::size_t i = 0) const { return *regions.at(i); }

  bool has_attr(const std::string &key) const { return attrs.count(key) > 0; }
  std::optional<std::int64_t> int_attr(const std::string &key) const;
  std::optional<double> float_attr(const std::string &key) const;
  std::optional<bool> bool_attr(const std::string &key) const;
  std::optional<std::string> str_attr(const std::string &key) const;
  const std::vector<double> *floats_attr(const std::string &key) const;
  const std::vector<std::string> *strs_attr(const std::string &key) const;

 private:
  friend class Function;
  std::vector<ValueId> operands_;
};

struct ValueInfo {
  Type type;
  Operation *def = nullptr;   // null for region arguments
  Region *arg_of = nullptr;   // owning region for block arguments
  std::vector<Operation *> users;  // one entry per operand slot
};

class Function {
 public:
  explicit Function(std::string fn_name) : name(std::move(fn_name)) {}
  Function(const Function &) = delete;
  Function &operator=(const Function &) = delete;

  std::string name;
  std::vector<Type> result_types;
  bool is_declaration = false;
  std::vector<Type> decl_param_types;  // declarations only; definitions use body.args
  Region body;

  std::vector<Type> param_types() const;

  ValueId add_param(Type t) { return add_region_arg(body, t); }
  ValueId add_region_arg(Region &region, Type t);

  const ValueInfo &info(ValueId v) const { return values_.at(v.raw); }
  Type type(ValueId v) const { return values_.at(v.raw).type; }
  Operation *def(ValueId v) const { return values_.at(v.raw).def; }
  const std::vector<Operation *> &users(ValueId v) const { return values_.at(v.raw).users; }
  bool has_users(ValueId v) const { return !users(v).empty(); }
  std::size_t num_values() const { return values_.size(); }

  /// Creates a detached op with fresh results; operand uses are registered immediately.
  std::unique_ptr<Operation> make_op(std::string op_name, std::vector<ValueId> operands,
                                     const std::vector<Type> &result_types, Attributes attrs = {},
                                     SourceLocation loc = {});
  Operation *append(Region &region, std::unique_ptr<Operation> op);
  Operation *build(Region &region, std::string op_name, std::vector<ValueId> operands,
                   const std::vector<Type> &result_types, Attributes attrs = {},
                   SourceLocation loc = {}) {
    return append(region, make_op(std::move(op_name), std::move(operands), result_types,
                                  std::move(attrs), loc));
  }
  Region &add_region(Operation &op);

  void set_operand(Operation &op, std::size_t index, ValueId v);
  void set_operands(Operation &op, std::vector<ValueId> operands);
  void replace_all_uses(ValueId from, ValueId to);

  /// Marks `op` (and everything nested) erased and drops its operand uses. Storage is reclaimed
  /// by `purge`.
  void erase(Operation &op);
  /// Puts `repl` into the slot of `old`, erasing `old`.
  Operation *replace(Operation &old, std::unique_ptr<Operation> repl);
  /// Replaces `old` by a sequence of ops at its position (slots are renumbered).
  void replace_with_many(Operation &old, std::vector<std::unique_ptr<Operation>> ops);
  Operation *insert_before(Operation &pos, std::unique_ptr<Operation> op);
  /// Moves every op out of `region`, leaving it empty. Uses stay registered.
  std::vector<std::unique_ptr<Operation>> take_all(Region &region);

  void purge(Region &region);
  void purge() { purge(body); }

  /// Deep copy of `op` from `src` (which may be this function). Operands found in `map` are
  /// substituted; others are kept verbatim, which is only valid when `src` is this function.
  std::unique_ptr<Operation> clone_from(const Function &src, const Operation &op, ValueMap &map);

 private:
  ValueId new_value(Type t, Operation *def);
  void add_use(ValueId v, Operation *user);
  void drop_use(ValueId v, Operation *user);
  void drop_uses_recursive(Operation &op);
  void renumber(Region &region);

  std::vector<ValueInfo> values_;
};

struct Global {
  std::string name;
  Type type;
  Attribute value;  // int64 or double
};

class Module {
 public:
  std::vector<Global> globals;
  std::vector<std::unique_ptr<Function>> functions;

  Function *find(std::string_view name) const;
  const Global *find_global(std::string_view name) const;
  Function &add_function(std::string name);
};

// ---- traversal -------------------------------------------------------------

/// Pre-order walk over live ops, including nested regions.
void walk(Region &region, const std::function<void(Operation &)> &fn);
void walk(const Region &region, const std::function<void(const Operation &)> &fn);
std::size_t count_ops(const Region &region);

// ---- op vocabulary ---------------------------------------------------------

namespace op {
inline constexpr std::string_view kConstant = "arith.constant";
inline constexpr std::string_view kCast = "arith.cast";
inline constexpr std::string_view kCmp = "arith.cmp";
inline constexpr std::string_view kMathCall = "math.call";
inline constexpr std::string_view kAlloca = "memref.alloca";
inline constexpr std::string_view kLoad = "memref.load";
inline constexpr std::string_view kStore = "memref.store";
inline constexpr std::string_view kGlobalGet = "global.get";
inline constexpr std::string_view kCall = "func.call";
inline constexpr std::string_view kReturn = "func.return";
inline constexpr std::string_view kIf = "scf.if";
inline constexpr std::string_view kFor = "affine.for";
inline constexpr std::string_view kWhile = "scf.while";
inline constexpr std::string_view kCondition = "scf.condition";
inline constexpr std::string_view kQalloc = "q.qalloc";
inline constexpr std::string_view kDealloc = "q.dealloc";
inline constexpr std::string_view kExtract = "q.extract";
inline constexpr std::string_view kSlice = "q.array_slice";
inline constexpr std::string_view kConcat = "q.array_concat";
inline constexpr std::string_view kCtrlRegion = "q.ctrl_region";
inline constexpr std::string_view kAdjRegion = "q.adj_region";
inline constexpr std::string_view kPowRegion = "q.pow_region";
inline constexpr std::string_view kMeasure = "qvs.mz";
inline constexpr std::string_view kReset = "qvs.reset";
inline constexpr std::string_view kPrint = "rt.print";
inline constexpr std::string_view kGatePrefix = "qvs.";
}  // namespace op

/// Binary arithmetic opcodes (`arith.add`, ...), not including cmp.
bool is_arith_binary(std::string_view name);
/// Value-semantics gate op (`qvs.<gate>`, excluding mz and reset).
bool is_gate(const Operation &op);
/// Gate applied to every element of a qubit array (no qubit results).
bool is_broadcast(const Operation &op);
std::string gate_name(const Operation &op);
bool is_modifier_region(const Operation &op);
bool is_region_op(const Operation &op);
/// Segment flag: "compute", "uncompute", or empty.
std::string segment_of(const Operation &op);
/// Ops with no observable effect apart from their results.
bool is_pure(const Operation &op);

/// Gate parameters as literals, if the op carries an `angles` attribute.
const std::vector<double> *gate_angles(const Operation &op);
/// Number of qubit operands of an element gate op.
std::size_t gate_qubit_count(const Operation &op);
/// Parameter operands of a gate op (empty when angles are literal).
std::vector<ValueId> gate_param_operands(const Operation &op);

}  // namespace qforge::ir
