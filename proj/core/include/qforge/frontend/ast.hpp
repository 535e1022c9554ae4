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
#include <memory>
#include <string>
#include <vector>

#include "qforge/support/diagnostic.hpp"

namespace qforge::frontend {

enum class AstKind {
  // statements
  Program,
  Include,
  ConstDecl,
  QubitDecl,
  BitDecl,
  ClassicalDecl,
  AliasDecl,
  SubroutineDef,
  ExternDecl,
  GateCall,
  Measure,
  Reset,
  Assignment,
  CompoundAssignment,
  If,
  ForRange,
  ForCStyle,
  While,
  ComputeAction,
  Return,
  Print,
  ExpressionStatement,
  Block,
  // expressions
  IntLiteral,
  FloatLiteral,
  BoolLiteral,
  StringLiteral,
  Identifier,
  Index,
  Range,
  Concat,
  Binary,
  Unary,
  Call,
  MeasureExpr,
  // subroutine/extern parameter
  Param,
};

const char *to_string(AstKind kind);

/// Scalar classical type after typedef desugaring (`int` is Int/32, `double` is Float/64, ...).
struct TypeSpec {
  enum class Base { None, Bit, Bool, Int, UInt, Float, Qubit };
  Base base = Base::None;
  int width = 0;

  bool is_none() const { return base == Base::None; }
  friend bool operator==(const TypeSpec &, const TypeSpec &) = default;
};

std::string to_string(const TypeSpec &type);

struct AstNode;
using AstPtr = std::unique_ptr<AstNode>;

struct Modifier {
  enum class Kind { Ctrl, NegCtrl, Inv, Pow };
  Kind kind = Kind::Inv;
  AstPtr arg;  // ctrl(n) count or pow(k) exponent; may be null
  SourceLocation loc;
};

/// One node type for the whole tree. Child layout by kind (null marks an absent optional):
///   Program            children = statements; text = version ("" if no header)
///   Include            text = path
///   ConstDecl          name, type (may be None), children = [init]
///   QubitDecl          name, children = [size|null]
///   BitDecl            name, children = [size|null, init|null]
///   ClassicalDecl      name, type, children = [init|null]
///   AliasDecl          name, children = [Index-with-Range | Concat | Identifier]
///   SubroutineDef      name, params = Param list, type = return type, children = [Block]
///   ExternDecl         name, params = Param list, type = return type
///   GateCall           name, params = classical args, children = qubit args, modifiers
///   Measure            children = [qubit operand, target|null]
///   Reset              children = [operand]
///   Assignment         children = [target, value]
///   CompoundAssignment op ("+=", ...), children = [target, value]
///   If                 children = [cond, then Block, else Block|null]
///   ForRange           name = loop var, type, children = [Range, body Block]
///   ForCStyle          children = [init|null, cond|null, step|null, body Block]
///   While              children = [cond, body Block]
///   ComputeAction      children = [compute Block, action Block]
///   Return             children = [value|null]
///   Print              children = arguments
///   ExpressionStatement children = [expr]
///   Block              children = statements
///   Index              children = [base, index-or-Range]
///   Range              children = [start|null, step|null, end|null]
///   Concat             children = operands
///   Binary / Unary     op, children = operands
///   Call               name, params = classical args, children = qubit args
///   MeasureExpr        children = [operand]
///   Param              name, type, is_qubit, children = [qubit array size|null]
struct AstNode {
  AstKind kind;
  SourceLocation loc;
  std::vector<AstPtr> children;
  std::vector<AstPtr> params;
  std::vector<Modifier> modifiers;
  std::string name;
  std::string op;
  std::string text;
  std::int64_t int_value = 0;
  double float_value = 0.0;
  bool bool_value = false;
  bool is_qubit = false;
  TypeSpec type;

  AstNode(AstKind k, SourceLocation l) : kind(k), loc(l) {}

  AstNode *child(std::size_t i) const { return i < children.size() ? children[i].get() : nullptr; }
  AstPtr clone() const;
};

AstPtr make_node(AstKind kind, SourceLocation loc);

/// Compares trees ignoring source locations.
bool structurally_equal(const AstNode &a, const AstNode &b);

/// Indented s-expression rendering used by `--emit=ast`.
std::string dump(const AstNode &node);

}  // namespace qforge::frontend
