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

#include "qforge/ir/fold.hpp"

#include <cmath>
#include <map>

namespace qforge::ir {

using symtab::ConstValue;

std::optional<ConstValue> coerce(const ConstValue &v, Type t) {
  if (t.is_float()) {
    double d = v.as_double();
    if (t.width == 32) d = static_cast<float>(d);
    else if (t.width == 16) d = static_cast<double>(static_cast<float>(d));
    return ConstValue::of_float(d);
  }
  if (t.is_bool()) return ConstValue::of_bool(v.truthy());
  if (t.is_int() || t.is_index()) {
    std::int64_t i;
    if (v.is_float()) {
      if (!std::isfinite(v.f) || std::fabs(v.f) >= 9.2e18) return std::nullopt;
      i = static_cast<std::int64_t>(v.f);
    } else {
      i = v.is_bool() ? (v.b ? 1 : 0) : v.i;
    }
    if (t.is_int() && t.width < 64) {
      auto bits = static_cast<unsigned>(t.width);
      std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
      std::uint64_t u = static_cast<std::uint64_t>(i) & mask;
      if (u >> (bits - 1)) u |= ~mask;
      i = static_cast<std::int64_t>(u);
    }
    return ConstValue::of_int(i);
  }
  return std::nullopt;
}

ConstValue constant_value(const Operation &constant, Type t) {
  const Attribute &a = constant.attrs.at("value");
  ConstValue raw;
  if (const auto *i = std::get_if<std::int64_t>(&a)) raw = ConstValue::of_int(*i);
  else if (const auto *d = std::get_if<double>(&a)) raw = ConstValue::of_float(*d);
  else if (const auto *b = std::get_if<bool>(&a)) raw = ConstValue::of_bool(*b);
  else throw InternalError("constant with a non-numeric value");
  auto v = coerce(raw, t);
  if (!v) throw InternalError("constant does not fit its type");
  return *v;
}

Attribute constant_attr(const ConstValue &v, Type t) {
  if (t.is_float()) return v.as_double();
  if (t.is_bool()) return v.truthy();
  return v.is_bool() ? std::int64_t{v.b ? 1 : 0} : v.i;
}

std::optional<ConstValue> evaluate(const Operation &op, std::span<const ConstValue> in, Type result) {
  std::string detail;
  if (op.name == op::kCmp) detail = op.str_attr("pred").value_or("eq");
  else if (op.name == op::kMathCall) detail = op.str_attr("fn").value_or("");
  return evaluate(op.name, detail, in, result, op.loc);
}

std::optional<ConstValue> evaluate(std::string_view name, std::string_view detail,
                                   std::span<const ConstValue> in, Type result, SourceLocation loc) {
  static const std::map<std::string, std::string, std::less<>> binary = {
      {"arith.add", "+"}, {"arith.sub", "-"},  {"arith.mul", "*"},  {"arith.div", "/"},
      {"arith.rem", "%"}, {"arith.pow", "**"}, {"arith.and", "&"},  {"arith.or", "|"},
      {"arith.xor", "^"}, {"arith.shl", "<<"}, {"arith.shr", ">>"}};
  static const std::map<std::string, std::string, std::less<>> preds = {{"eq", "=="}, {"ne", "!="}, {"lt", "<"},
                                                           {"le", "<="}, {"gt", ">"},  {"ge", ">="}};
  std::optional<ConstValue> r;
  if (auto it = binary.find(name); it != binary.end() && in.size() == 2) {
    if (result.is_bool() && (it->second == "&" || it->second == "|" || it->second == "^")) {
      bool a = in[0].truthy(), b = in[1].truthy();
      r = ConstValue::of_bool(it->second == "&" ? (a && b) : it->second == "|" ? (a || b) : (a != b));
    } else {
      r = symtab::apply_binary(it->second, in[0], in[1], loc);
    }
  } else if (name == op::kCmp && in.size() == 2) {
    auto p = preds.find(detail);
    if (p == preds.end()) return std::nullopt;
    r = symtab::apply_binary(p->second, in[0], in[1], loc);
  } else if (name == "arith.neg" && in.size() == 1) {
    r = symtab::apply_unary("-", in[0], loc);
  } else if (name == "arith.not" && in.size() == 1) {
    r = symtab::apply_unary(result.is_bool() ? "!" : "~", in[0], loc);
  } else if (name == op::kCast && in.size() == 1) {
    r = in[0];
  } else if (name == op::kMathCall && in.size() == 1) {
    if (auto m = symtab::apply_math(std::string(detail), in[0].as_double()))
      r = ConstValue::of_float(*m);
  }
  if (!r) return std::nullopt;
  return coerce(*r, result);
}

}  // namespace qforge::ir
