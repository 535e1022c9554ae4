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

namespace qforge::ir {

/// Semantic type of an IR value.
struct Type {
  enum class Kind { None, Qubit, QubitArray, Bool, Int, Float, Index, Cell, Result };

  Kind kind = Kind::None;
  int width = 0;           // Int/Float width; Cell element width
  std::int64_t size = -1;  // QubitArray length (-1 unknown); Cell element count
  Kind elem = Kind::None;  // Cell element kind (Bool, Int, Float, Index)

  static Type qubit() { return {Kind::Qubit}; }
  static Type qarray(std::int64_t n = -1) { return {Kind::QubitArray, 0, n}; }
  static Type i1() { return {Kind::Bool, 1}; }
  static Type int_(int w = 64) { return {Kind::Int, w}; }
  static Type f64() { return {Kind::Float, 64}; }
  static Type float_(int w) { return {Kind::Float, w}; }
  static Type index() { return {Kind::Index, 64}; }
  static Type result() { return {Kind::Result}; }
  static Type cell(const Type &element, std::int64_t count = 1) {
    return {Kind::Cell, element.width, count, element.kind};
  }

  bool is_qubit() const { return kind == Kind::Qubit; }
  bool is_qarray() const { return kind == Kind::QubitArray; }
  bool is_quantum() const { return is_qubit() || is_qarray(); }
  bool is_bool() const { return kind == Kind::Bool; }
  bool is_int() const { return kind == Kind::Int; }
  bool is_float() const { return kind == Kind::Float; }
  bool is_index() const { return kind == Kind::Index; }
  bool is_integer_like() const { return is_int() || is_index() || is_bool(); }
  bool is_numeric() const { return is_integer_like() || is_float(); }
  bool is_cell() const { return kind == Kind::Cell; }

  /// Element type of a Cell.
  Type element() const { return {elem, width}; }

  std::string str() const;
  friend bool operator==(const Type &, const Type &) = default;
};

/// Parses the printed form (`!qubit`, `!qarray<4>`, `i64`, `f64`, `index`, `!cell<i1 x 20>`, ...).
std::optional<Type> parse_type(std::string_view text);

}  // namespace qforge::ir
