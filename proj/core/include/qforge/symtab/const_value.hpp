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
#include <functional>
#include <optional>
#include <string>

#include "qforge/frontend/ast.hpp"

namespace qforge::symtab {

/// Compile-time number. Integers are 64-bit signed; bools promote to integers in arithmetic.
struct ConstValue {
  enum class Kind { Int, Float, Bool };
  Kind kind = Kind::Int;
  std::int64_t i = 0;
  double f = 0.0;
  bool b = false;

  static ConstValue of_int(std::int64_t v) { return {Kind::Int, v, 0.0, false}; }
  static ConstValue of_float(double v) { return {Kind::Float, 0, v, false}; }
  static ConstValue of_bool(bool v) { return {Kind::Bool, 0, 0.0, v}; }

  bool is_int() const { return kind == Kind::Int; }
  bool is_float() const { return kind == Kind::Float; }
  bool is_bool() const { return kind == Kind::Bool; }

  double as_double() const;
  /// Integer view of Int/Bool values; floats only when integral.
  std::optional<std::int64_t> as_int() const;
  bool truthy() const;
  std::string str() const;

  friend bool operator==(const ConstValue &, const ConstValue &) = default;
};

/// Outer nullopt: name unknown (builtin constants apply). Inner nullopt: bound but not constant.
using ConstLookup =
    std::function<std::optional<std::optional<ConstValue>>(const std::string &)>;

/// Folds an expression built from literals, `pi`/`tau`/`euler`, symbols known to `lookup`, C
/// operators, `**`, casts, and the usual math functions. Returns nullopt when some leaf is not a
/// compile-time constant. Division by zero and signed overflow throw CompileError.
std::optional<ConstValue> eval_const_expr(const frontend::AstNode &expr, const ConstLookup &lookup);

/// Binary operator on two constants with the same rules as eval_const_expr.
ConstValue apply_binary(const std::string &op, const ConstValue &a, const ConstValue &b,
                        SourceLocation loc);
ConstValue apply_unary(const std::string &op, const ConstValue &a, SourceLocation loc);
/// Elementary functions shared by the folder and the runtime (`sin`, `sqrt`, `ln`, ...).
std::optional<double> apply_math(const std::string &fn, double x);

}  // namespace qforge::symtab
