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

#include "qforge/ir/text_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

namespace qforge::ir {

namespace {

struct ParseFailure {};

class TextParser {
 public:
  explicit TextParser(std::string_view text) : src_(text) {}

  IrParseResult run() {
    IrParseResult result;
    auto module = std::make_unique<Module>();
    try {
      skip_ws();
      while (!at_end()) {
        if (try_word("global")) {
          parse_global(*module);
        } else if (try_word("func")) {
          parse_function(*module);
        } else {
          fail("expected 'global' or 'func'");
        }
        skip_ws();
      }
      result.module = std::move(module);
    } catch (const ParseFailure &) {
      result.diagnostics = std::move(diags_);
    }
    return result;
  }

 private:
  // ---- character level ------------------------------------------------------

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  SourceLocation location() const {
    SourceLocation loc;
    loc.byte_offset = pos_;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++loc.line;
        loc.column = 0;
      } else {
        ++loc.column;
      }
    }
    return loc;
  }

  [[noreturn]] void fail(const std::string &msg) {
    diags_.push_back(Diagnostic{Severity::Error, msg, location()});
    throw ParseFailure{};
  }

  void skip_ws() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool try_char(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_char(char c) {
    if (!try_char(c)) fail(std::string("expected '") + c + "'");
  }

  bool try_str(std::string_view s) {
    skip_ws();
    if (src_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$';
  }

  bool try_word(std::string_view w) {
    skip_ws();
    if (src_.substr(pos_, w.size()) == w &&
        (pos_ + w.size() >= src_.size() || !ident_char(src_[pos_ + w.size()]))) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_ws();
    std::size_t begin = pos_;
    while (!at_end() && ident_char(peek())) ++pos_;
    if (begin == pos_) fail("expected identifier");
    return std::string(src_.substr(begin, pos_ - begin));
  }

  std::string symbol_name(char sigil) {
    expect_char(sigil);
    std::size_t begin = pos_;
    while (!at_end() && ident_char(peek())) ++pos_;
    if (begin == pos_) fail(std::string("expected name after '") + sigil + "'");
    return std::string(src_.substr(begin, pos_ - begin));
  }

  Type type() {
    skip_ws();
    std::size_t begin = pos_;
    if (peek() == '!') {
      ++pos_;
      while (!at_end() && ident_char(peek())) ++pos_;
      if (peek() == '<') {
        while (!at_end() && peek() != '>') ++pos_;
        if (at_end()) fail("unterminated type");
        ++pos_;
      }
    } else {
      while (!at_end() && ident_char(peek())) ++pos_;
    }
    std::string_view text = src_.substr(begin, pos_ - begin);
    auto t = parse_type(text);
    if (!t) {
      pos_ = begin;
      fail("unknown type '" + std::string(text) + "'");
    }
    return *t;
  }

  std::vector<Type> type_list() {
    std::vector<Type> out;
    expect_char('(');
    if (try_char(')')) return out;
    do out.push_back(type());
    while (try_char(','));
    expect_char(')');
    return out;
  }

  std::string string_literal() {
    expect_char('"');
    std::string out;
    while (!at_end() && peek() != '"') {
      char c = src_[pos_++];
      if (c == '\\' && !at_end()) {
        char e = src_[pos_++];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += c;
      }
    }
    if (at_end()) fail("unterminated string");
    ++pos_;
    return out;
  }

  /// Reads a number; `is_float` tells whether it was written in floating form.
  double number(bool &is_float, std::int64_t &as_int) {
    skip_ws();
    std::size_t begin = pos_;
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      ++pos_;
    }
    if (src_.substr(pos_, 3) == "inf") {
      pos_ += 3;
      is_float = true;
      return neg ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    }
    if (src_.substr(pos_, 3) == "nan") {
      pos_ += 3;
      is_float = true;
      return std::numeric_limits<double>::quiet_NaN();
    }
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' ||
                         ((peek() == '-' || peek() == '+') &&
                          (src_[pos_ - 1] == 'e' || src_[pos_ - 1] == 'E'))))
      ++pos_;
    std::string_view text = src_.substr(begin, pos_ - begin);
    is_float = text.find_first_of(".eE") != std::string_view::npos;
    if (is_float) {
      double v = 0;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || p != text.data() + text.size()) fail("bad number");
      return v;
    }
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), as_int);
    if (ec != std::errc() || p != text.data() + text.size()) fail("bad integer");
    return static_cast<double>(as_int);
  }

  Attribute attribute_value() {
    skip_ws();
    if (try_word("true")) return true;
    if (try_word("false")) return false;
    if (peek() == '"') return string_literal();
    if (try_char('[')) {
      skip_ws();
      if (peek() == '"') {
        std::vector<std::string> out;
        do out.push_back(string_literal());
        while (try_char(','));
        expect_char(']');
        return out;
      }
      std::vector<double> out;
      if (try_char(']')) return out;
      do {
        bool f = false;
        std::int64_t i = 0;
        out.push_back(number(f, i));
      } while (try_char(','));
      expect_char(']');
      return out;
    }
    bool is_float = false;
    std::int64_t as_int = 0;
    double v = number(is_float, as_int);
    if (is_float) return v;
    return as_int;
  }

  // ---- structure ------------------------------------------------------------------

  void parse_global(Module &module) {
    Global g;
    g.name = symbol_name('@');
    expect_char(':');
    g.type = type();
    expect_char('=');
    g.value = attribute_value();
    module.globals.push_back(std::move(g));
  }

  ValueId define(Function &fn, const std::string &name, ValueId v) {
    if (!names_.emplace(name, v).second) fail("value '%" + name + "' defined twice");
    return v;
  }

  ValueId lookup(const std::string &name) {
    auto it = names_.find(name);
    if (it == names_.end()) fail("use of undefined value '%" + name + "'");
    return it->second;
  }

  void parse_function(Module &module) {
    bool is_private = try_word("private");
    std::string name = symbol_name('@');
    if (module.find(name)) fail("function '@" + name + "' defined twice");
    Function &fn = module.add_function(name);
    names_.clear();
    expect_char('(');
    if (is_private) {
      fn.is_declaration = true;
      if (!try_char(')')) {
        do fn.decl_param_types.push_back(type());
        while (try_char(','));
        expect_char(')');
      }
    } else if (!try_char(')')) {
      do {
        std::string v = symbol_name('%');
        expect_char(':');
        define(fn, v, fn.add_param(type()));
      } while (try_char(','));
      expect_char(')');
    }
    if (try_str("->")) fn.result_types = type_list();
    if (is_private) return;
    expect_char('{');
    parse_ops(fn, fn.body);
    expect_char('}');
  }

  void parse_ops(Function &fn, Region &region) {
    while (true) {
      skip_ws();
      if (peek() == '}' || at_end()) return;
      parse_op(fn, region);
    }
  }

  void parse_op(Function &fn, Region &region) {
    skip_ws();
    SourceLocation loc = location();
    std::vector<std::string> result_names;
    if (peek() == '%') {
      do result_names.push_back(symbol_name('%'));
      while (try_char(','));
      expect_char('=');
    }
    std::string name = identifier();
    if (name == "return") {
      if (!result_names.empty()) fail("return has no results");
      std::vector<ValueId> operands;
      skip_ws();
      if (peek() == '%') {
        do operands.push_back(lookup(symbol_name('%')));
        while (try_char(','));
        expect_char(':');
        std::size_t i = 0;
        do {
          Type t = type();
          if (i >= operands.size() || !(fn.type(operands[i]) == t))
            fail("return operand type mismatch");
          ++i;
        } while (try_char(','));
      }
      fn.build(region, std::string(op::kReturn), std::move(operands), {}, {}, loc);
      return;
    }
    std::vector<ValueId> operands;
    expect_char('(');
    if (!try_char(')')) {
      do operands.push_back(lookup(symbol_name('%')));
      while (try_char(','));
      expect_char(')');
    }
    Attributes attrs;
    skip_ws();
    if (peek() == '{') {  // attributes precede the signature, regions follow it
      expect_char('{');
      if (!try_char('}')) {
        do {
          std::string key = identifier();
          expect_char('=');
          attrs[key] = attribute_value();
        } while (try_char(','));
        expect_char('}');
      }
    }
    std::vector<Type> in_types, out_types;
    if (try_char(':')) {
      in_types = type_list();
      if (!try_str("->")) fail("expected '->'");
      out_types = type_list();
    } else if (name != op::kReturn) {
      fail("expected ':' and a type signature for '" + name + "'");
    }
    if (in_types.size() != operands.size()) fail("operand count does not match signature");
    for (std::size_t i = 0; i < operands.size(); ++i)
      if (!(fn.type(operands[i]) == in_types[i]))
        fail("operand " + std::to_string(i) + " of '" + name + "' has type " +
             fn.type(operands[i]).str() + ", signature says " + in_types[i].str());
    if (out_types.size() != result_names.size()) fail("result count does not match signature");
    Operation *op =
        fn.build(region, std::move(name), std::move(operands), out_types, std::move(attrs), loc);
    for (std::size_t i = 0; i < result_names.size(); ++i) define(fn, result_names[i], op->results[i]);
    while (true) {
      skip_ws();
      if (peek() != '{') break;
      ++pos_;
      Region &inner = fn.add_region(*op);
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        identifier();
        expect_char('(');
        if (!try_char(')')) {
          do {
            std::string v = symbol_name('%');
            expect_char(':');
            define(fn, v, fn.add_region_arg(inner, type()));
          } while (try_char(','));
          expect_char(')');
        }
        expect_char(':');
      }
      parse_ops(fn, inner);
      expect_char('}');
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  DiagnosticList diags_;
  std::unordered_map<std::string, ValueId> names_;
};

}  // namespace

IrParseResult parse_ir(std::string_view text) { return TextParser(text).run(); }

}  // namespace qforge::ir
