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

#include "qforge/ir/type.hpp"

#include <charconv>

namespace qforge::ir {

namespace {

std::string scalar_str(Type::Kind kind, int width) {
  switch (kind) {
    case Type::Kind::Bool: return "i1";
    case Type::Kind::Int: return "i" + std::to_string(width);
    case Type::Kind::Float: return "f" + std::to_string(width);
    case Type::Kind::Index: return "index";
    default: return "?";
  }
}

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<Type> parse_scalar(std::string_view s) {
  if (s == "index") return Type::index();
  if (s == "i1") return Type::i1();
  if (s.size() < 2) return std::nullopt;
  auto w = parse_int(s.substr(1));
  if (!w) return std::nullopt;
  if (s[0] == 'i' && (*w == 8 || *w == 16 || *w == 32 || *w == 64)) return Type::int_(*w);
  if (s[0] == 'f' && (*w == 16 || *w == 32 || *w == 64)) return Type::float_(*w);
  return std::nullopt;
}

}  // namespace

std::string Type::str() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::Qubit: return "!qubit";
    case Kind::QubitArray:
      return size < 0 ? "!qarray<?>" : "!qarray<" + std::to_string(size) + ">";
    case Kind::Result: return "!result";
    case Kind::Cell: {
      std::string s = "!cell<" + scalar_str(elem, width);
      if (size != 1) s += " x " + std::to_string(size);
      return s + ">";
    }
    default: return scalar_str(kind, width);
  }
}

std::optional<Type> parse_type(std::string_view t) {
  if (t == "!qubit") return Type::qubit();
  if (t == "!result") return Type::result();
  if (t == "none") return Type{};
  if (t.rfind("!qarray<", 0) == 0 && t.back() == '>') {
    std::string_view inner = t.substr(8, t.size() - 9);
    if (inner == "?") return Type::qarray();
    auto n = parse_int(inner);
    if (!n || *n < 1) return std::nullopt;
    return Type::qarray(*n);
  }
  if (t.rfind("!cell<", 0) == 0 && t.back() == '>') {
    std::string_view inner = t.substr(6, t.size() - 7);
    std::int64_t count = 1;
    if (auto x = inner.find(" x "); x != std::string_view::npos) {
      auto n = parse_int(inner.substr(x + 3));
      if (!n || *n < 1) return std::nullopt;
      count = *n;
      inner = inner.substr(0, x);
    }
    auto elem = parse_scalar(inner);
    if (!elem) return std::nullopt;
    return Type::cell(*elem, count);
  }
  return parse_scalar(t);
}

}  // namespace qforge::ir
