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

#include "qforge/symtab/const_value.hpp"

#include <cmath>
#include <numbers>

#include "qforge/ir/printer.hpp"

namespace qforge::symtab {

using frontend::AstKind;
using frontend::AstNode;

double ConstValue::as_double() const {
  switch (kind) {
    case Kind::Int: return static_cast<double>(i);
    case Kind::Float: return f;
    case Kind::Bool: return b ? 1.0 : 0.0;
  }
  return 0.0;
}

std::optional<std::int64_t> ConstValue::as_int() const {
  switch (kind) {
    case Kind::Int: return i;
    case Kind::Bool: return b ? 1 : 0;
    case Kind::Float:
      if (std::isfinite(f) && std::trunc(f) == f && std::fabs(f) < 9.2e18)
        return static_cast<std::int64_t>(f);
      return std::nullopt;
  }
  return std::nullopt;
}

bool ConstValue::truthy() const {
  switch (kind) {
    case Kind::Int: return i != 0;
    case Kind::Float: return f != 0.0;
    case Kind::Bool: return b;
  }
  return false;
}

std::string ConstValue::str() const {
  switch (kind) {
    case Kind::Int: return std::to_string(i);
    case Kind::Float: return ir::format_double(f);
    case Kind::Bool: return b ? "true" : "false";
  }
  return "?";
}

namespace {

[[noreturn]] void overflow(SourceLocation loc) {
  throw CompileError("integer overflow in constant expression", loc);
}

std::int64_t int_pow(std::int64_t base, std::int64_t exp, SourceLocation loc) {
  std::int64_t result = 1;
  while (exp > 0) {
    if (exp & 1) {
      if (__builtin_mul_overflow(result, base, &result)) overflow(loc);
    }
    exp >>= 1;
    if (exp > 0 && __builtin_mul_overflow(base, base, &base)) overflow(loc);
  }
  return result;
}

ConstValue promote_bool(const ConstValue &v) {
  return v.is_bool() ? ConstValue::of_int(v.b ? 1 : 0) : v;
}

}  // namespace

ConstValue apply_binary(const std::string &op, const ConstValue &lhs, const ConstValue &rhs,
                        SourceLocation loc) {
  if (op == "&&") return ConstValue::of_bool(lhs.truthy() && rhs.truthy());
  if (op == "||") return ConstValue::of_bool(lhs.truthy() || rhs.truthy());
  if ((op == "==" || op == "!=") && lhs.is_bool() && rhs.is_bool())
    return ConstValue::of_bool((lhs.b == rhs.b) == (op == "=="));

  ConstValue a = promote_bool(lhs), b = promote_bool(rhs);
  bool both_int = a.is_int() && b.is_int();

  if (op == "==" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=") {
    auto compare = [&](auto x, auto y) {
      return op == "==" ? x == y : op == "!=" ? x != y : op == "<" ? x < y : op == "<=" ? x <= y : op == ">" ? x > y : x >= y;
    };
    // Direct comparisons keep IEEE semantics: everything but != is false against NaN.
    bool r = both_int ? compare(a.i, b.i) : compare(a.as_double(), b.as_double());
    return ConstValue::of_bool(r);
  }

  if (op == "&" || op == "|" || op == "^" || op == "<<" || op == ">>") {
    if (!both_int) throw CompileError("bitwise operator '" + op + "' on a non-integer", loc);
    if (op == "&") return ConstValue::of_int(a.i & b.i);
    if (op == "|") return ConstValue::of_int(a.i | b.i);
    if (op == "^") return ConstValue::of_int(a.i ^ b.i);
    if (b.i < 0 || b.i >= 64) throw CompileError("shift amount out of range", loc);
    if (op == ">>") return ConstValue::of_int(a.i >> b.i);
    if (a.i < 0 || (b.i > 0 && (a.i >> (63 - b.i)) != 0)) overflow(loc);
    return ConstValue::of_int(a.i << b.i);
  }

  if (both_int) {
    std::int64_t r = 0;
    if (op == "+") {
      if (__builtin_add_overflow(a.i, b.i, &r)) overflow(loc);
      return ConstValue::of_int(r);
    }
    if (op == "-") {
      if (__builtin_sub_overflow(a.i, b.i, &r)) overflow(loc);
      return ConstValue::of_int(r);
    }
    if (op == "*") {
      if (__builtin_mul_overflow(a.i, b.i, &r)) overflow(loc);
      return ConstValue::of_int(r);
    }
    if (op == "/" || op == "%") {
      if (b.i == 0) throw CompileError("division by zero in constant expression", loc);
      if (a.i == INT64_MIN && b.i == -1) overflow(loc);
      return ConstValue::of_int(op == "/" ? a.i / b.i : a.i % b.i);
    }
    if (op == "**") {
      if (b.i >= 0) return ConstValue::of_int(int_pow(a.i, b.i, loc));
      return ConstValue::of_float(std::pow(static_cast<double>(a.i), static_cast<double>(b.i)));
    }
  } else {
    double x = a.as_double(), y = b.as_double();
    if (op == "+") return ConstValue::of_float(x + y);
    if (op == "-") return ConstValue::of_float(x - y);
    if (op == "*") return ConstValue::of_float(x * y);
    if (op == "/" || op == "%") {
      if (y == 0.0) throw CompileError("division by zero in constant expression", loc);
      return ConstValue::of_float(op == "/" ? x / y : std::fmod(x, y));
    }
    if (op == "**") return ConstValue::of_float(std::pow(x, y));
  }
  throw CompileError("unsupported operator '" + op + "' in constant expression", loc);
}

ConstValue apply_unary(const std::string &op, const ConstValue &v, SourceLocation loc) {
  if (op == "!") return ConstValue::of_bool(!v.truthy());
  ConstValue a = promote_bool(v);
  if (op == "-") {
    if (a.is_int()) {
      if (a.i == INT64_MIN) overflow(loc);
      return ConstValue::of_int(-a.i);
    }
    return ConstValue::of_float(-a.f);
  }
  if (op == "~") {
    if (!a.is_int()) throw CompileError("bitwise operator '~' on a non-integer", loc);
    return ConstValue::of_int(~a.i);
  }
  throw CompileError("unsupported unary operator '" + op + "'", loc);
}

std::optional<double> apply_math(const std::string &fn, double x) {
  if (fn == "sin") return std::sin(x);
  if (fn == "cos") return std::cos(x);
  if (fn == "tan") return std::tan(x);
  if (fn == "arcsin" || fn == "asin") return std::asin(x);
  if (fn == "arccos" || fn == "acos") return std::acos(x);
  if (fn == "arctan" || fn == "atan") return std::atan(x);
  if (fn == "exp") return std::exp(x);
  if (fn == "ln" || fn == "log") return std::log(x);
  if (fn == "sqrt") return std::sqrt(x);
  if (fn == "abs" || fn == "fabs") return std::fabs(x);
  if (fn == "floor") return std::floor(x);
  if (fn == "ceil") return std::ceil(x);
  return std::nullopt;
}

std::optional<ConstValue> eval_const_expr(const AstNode &e, const ConstLookup &lookup) {
  switch (e.kind) {
    case AstKind::IntLiteral: return ConstValue::of_int(e.int_value);
    case AstKind::FloatLiteral: return ConstValue::of_float(e.float_value);
    case AstKind::BoolLiteral: return ConstValue::of_bool(e.bool_value);
    case AstKind::Identifier: {
      if (lookup) {
        if (auto bound = lookup(e.name)) return *bound;
      }
      if (e.name == "pi") return ConstValue::of_float(std::numbers::pi);
      if (e.name == "tau") return ConstValue::of_float(2.0 * std::numbers::pi);
      if (e.name == "euler") return ConstValue::of_float(std::numbers::e);
      return std::nullopt;
    }
    case AstKind::Unary: {
      auto v = eval_const_expr(*e.children.at(0), lookup);
      if (!v) return std::nullopt;
      return apply_unary(e.op, *v, e.loc);
    }
    case AstKind::Binary: {
      auto a = eval_const_expr(*e.children.at(0), lookup);
      if (!a) return std::nullopt;
      auto b = eval_const_expr(*e.children.at(1), lookup);
      if (!b) return std::nullopt;
      return apply_binary(e.op, *a, *b, e.loc);
    }
    case AstKind::Call: {
      if (!e.children.empty() || e.params.size() != 1) return std::nullopt;
      auto arg = eval_const_expr(*e.params[0], lookup);
      if (!arg) return std::nullopt;
      if (e.name == "cast") {
        using B = frontend::TypeSpec::Base;
        switch (e.type.base) {
          case B::Float: return ConstValue::of_float(arg->as_double());
          case B::Bool:
          case B::Bit: return ConstValue::of_bool(arg->truthy());
          case B::Int:
          case B::UInt: {
            double d = arg->as_double();
            if (arg->is_int()) return *arg;
            if (!std::isfinite(d) || std::fabs(d) >= 9.2e18) overflow(e.loc);
            return ConstValue::of_int(static_cast<std::int64_t>(d));
          }
          default: return std::nullopt;
        }
      }
      if (auto r = apply_math(e.name, arg->as_double())) return ConstValue::of_float(*r);
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

}  // namespace qforge::symtab
