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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qforge/ir/type.hpp"

namespace qforge::lowering {

using Reg = std::uint32_t;

/// Instruction argument: a register or an immediate.
struct Operand {
  enum class Kind { Reg, Int, Float, Str };
  Kind kind = Kind::Reg;
  Reg reg = 0;
  std::int64_t i = 0;
  double f = 0.0;
  std::string s;
  ir::Type type;

  static Operand of_reg(Reg r, ir::Type t) { return {Kind::Reg, r, 0, 0.0, {}, t}; }
  static Operand of_int(std::int64_t v, ir::Type t = ir::Type::int_(64)) { return {Kind::Int, 0, v, 0.0, {}, t}; }
  static Operand of_float(double v) { return {Kind::Float, 0, 0, v, {}, ir::Type::f64()}; }
  static Operand of_str(std::string v) { return {Kind::Str, 0, 0, 0.0, std::move(v), {}}; }
};

enum class Opcode { Const, Arith, Alloca, Load, Store, Call, Br, CondBr, Ret };

struct Inst {
  Opcode op = Opcode::Const;
  std::optional<Reg> dst;
  ir::Type type;       // result type; element type for Alloca
  std::string name;    // arith opcode or callee symbol
  std::string detail;  // comparison predicate or math function
  std::vector<Operand> args;
  std::int64_t count = 1;  // Alloca element count
  std::size_t target = 0, target_else = 0;
};

struct Block {
  std::string label;
  std::vector<Inst> insts;
};

struct LirFunction {
  std::string name;
  std::vector<Reg> params;
  std::vector<ir::Type> results;
  std::vector<Block> blocks;
  std::vector<ir::Type> reg_types;  // indexed by Reg

  Reg new_reg(ir::Type t) {
    reg_types.push_back(t);
    return static_cast<Reg>(reg_types.size() - 1);
  }
};

struct Declaration {
  std::string symbol;
  std::vector<ir::Type> params;
  std::optional<ir::Type> result;
  /// Trailing arguments vary (print).
  bool variadic = false;
};

struct LirModule {
  std::vector<Declaration> declarations;  // sorted by symbol
  std::vector<LirFunction> functions;

  const LirFunction *find(std::string_view name) const;
  const Declaration *find_declaration(std::string_view symbol) const;
};

/// Symbols the runtime implements.
bool is_runtime_symbol(std::string_view symbol);

inline constexpr std::string_view kQisPrefix = "__quantum__qis__";
inline constexpr std::string_view kRtPrefix = "__quantum__rt__";

std::string type_str(ir::Type t);

/// Declarations first, then one instruction per line.
std::string emit_text(const LirModule &module);

/// Static check that every start_*_region call meets its matching end call on every path.
/// Returns one message per violation.
std::vector<std::string> check_region_balance(const LirModule &module);

/// Structural checks on terminators and branch targets. Callees must be declared.
std::vector<std::string> check_module(const LirModule &module);

}  // namespace qforge::lowering
