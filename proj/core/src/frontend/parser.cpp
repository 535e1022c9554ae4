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

#include "qforge/frontend/parser.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <set>

#include "qforge/frontend/lexer.hpp"

namespace qforge::frontend {

namespace {

struct SyntaxError {};

bool is_symbol(const Token &t, std::string_view s) {
  return (t.kind == TokenKind::Operator || t.kind == TokenKind::Punctuation) && t.text == s;
}

bool is_compound_op(const Token &t) {
  static const std::set<std::string, std::less<>> ops = {"+=", "-=", "*=", "/=", "%=",
                                                         "&=", "|=", "^=", "<<=", ">>=", "**="};
  return t.kind == TokenKind::Operator && ops.count(t.text) > 0;
}

bool is_type_keyword(const Token &t) {
  if (t.kind != TokenKind::Keyword) return false;
  static const std::set<std::string, std::less<>> kws = {"int",   "uint", "float", "double",
                                                         "int64_t", "bool", "angle"};
  return kws.count(t.text) > 0;
}

bool valid_width(int w) { return w == 1 || w == 8 || w == 16 || w == 32 || w == 64; }

class Parser {
 public:
  explicit Parser(const std::vector<Token> &tokens) : toks_(tokens) {
    if (toks_.empty() || toks_.back().kind != TokenKind::EndOfFile) {
      eof_.kind = TokenKind::EndOfFile;
      if (!toks_.empty()) eof_.loc = toks_.back().loc;
    }
  }

  ParseResult run() {
    ParseResult result;
    auto program = make_node(AstKind::Program, peek().loc);
    scopes_.emplace_back();
    if (peek().is_keyword("OPENQASM")) {
      try {
        advance();
        const Token &v = peek();
        if (v.kind != TokenKind::IntegerLiteral && v.kind != TokenKind::FloatLiteral)
          fail(v, "expected version number after OPENQASM");
        program->text = v.text;
        advance();
        expect(";");
      } catch (const SyntaxError &) {
        synchronize();
      }
    }
    while (!at_end()) statement_into(program->children, /*top_level=*/true);
    result.program = std::move(program);
    result.diagnostics = std::move(diags_);
    return result;
  }

 private:
  // ---- token helpers -------------------------------------------------------

  const Token &peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    if (i < toks_.size()) return toks_[i];
    return toks_.empty() || toks_.back().kind != TokenKind::EndOfFile ? eof_ : toks_.back();
  }
  bool at_end() const { return peek().kind == TokenKind::EndOfFile; }
  const Token &advance() {
    const Token &t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  bool accept(std::string_view sym) {
    if (is_symbol(peek(), sym)) {
      advance();
      return true;
    }
    return false;
  }
  const Token &expect(std::string_view sym) {
    if (!is_symbol(peek(), sym)) fail(peek(), "expected '" + std::string(sym) + "'" + found());
    return advance();
  }
  const Token &expect_identifier(const char *what) {
    if (peek().kind != TokenKind::Identifier)
      fail(peek(), std::string("expected ") + what + found());
    return advance();
  }
  std::string found() const {
    const Token &t = peek();
    if (t.kind == TokenKind::EndOfFile) return " but reached end of input";
    return " before '" + t.text + "'";
  }

  [[noreturn]] void fail(const Token &at, std::string message) {
    diags_.push_back(Diagnostic{Severity::Error, std::move(message), at.loc});
    throw SyntaxError{};
  }
  void error(SourceLocation loc, std::string message) {
    diags_.push_back(Diagnostic{Severity::Error, std::move(message), loc});
  }

  void synchronize() {
    std::size_t start = pos_;
    while (!at_end()) {
      if (is_symbol(peek(), ";")) {
        advance();
        return;
      }
      if (is_symbol(peek(), "}")) break;
      advance();
    }
    if (pos_ == start && !at_end()) advance();
  }

  // ---- scopes --------------------------------------------------------------

  void declare(const std::string &name, SourceLocation loc) {
    if (!scopes_.back().insert(name).second)
      error(loc, "redeclaration of '" + name + "' in the same scope");
  }
  struct ScopeGuard {
    Parser &p;
    explicit ScopeGuard(Parser &parser) : p(parser) { p.scopes_.emplace_back(); }
    ~ScopeGuard() { p.scopes_.pop_back(); }
  };

  // ---- statements ----------------------------------------------------------

  void statement_into(std::vector<AstPtr> &out, bool top_level) {
    try {
      statement(out, top_level);
    } catch (const SyntaxError &) {
      synchronize();
    }
  }

  AstPtr block(bool new_scope = true) {
    auto node = make_node(AstKind::Block, peek().loc);
    std::optional<ScopeGuard> guard;
    if (new_scope) guard.emplace(*this);
    expect("{");
    while (!at_end() && !is_symbol(peek(), "}")) statement_into(node->children, false);
    expect("}");
    return node;
  }

  /// A braced block or a single statement wrapped into a Block.
  AstPtr body() {
    if (is_symbol(peek(), "{")) return block();
    auto node = make_node(AstKind::Block, peek().loc);
    ScopeGuard guard(*this);
    statement(node->children, false);
    return node;
  }

  void statement(std::vector<AstPtr> &out, bool top_level) {
    const Token &t = peek();
    if (t.kind == TokenKind::Keyword) {
      const std::string &kw = t.text;
      if (kw == "include") return out.push_back(include_stmt());
      if (kw == "const") return out.push_back(const_decl());
      if (kw == "qubit" || kw == "qreg") return qubit_decl(out);
      if (kw == "bit" || kw == "creg") return bit_decl(out);
      if (is_type_keyword(t)) {
        classical_decl(out);
        expect(";");
        return;
      }
      if (kw == "let") return out.push_back(alias_decl());
      if (kw == "def") return out.push_back(subroutine_def());
      if (kw == "extern") return out.push_back(extern_decl());
      if (kw == "measure") return out.push_back(measure_stmt());
      if (kw == "reset") return out.push_back(reset_stmt());
      if (kw == "if") return out.push_back(if_stmt());
      if (kw == "for") return out.push_back(for_stmt());
      if (kw == "while") return out.push_back(while_stmt());
      if (kw == "return") return out.push_back(return_stmt());
      if (kw == "ctrl" || kw == "negctrl" || kw == "inv" || kw == "pow")
        return out.push_back(gate_call());
      if (kw == "barrier") {
        // Scheduling hint only; operands are parsed and dropped.
        advance();
        if (!is_symbol(peek(), ";")) operand_list();
        expect(";");
        return;
      }
      if (kw == "gate") fail(t, "'gate' bodies are not supported; use 'def'");
      if (kw == "OPENQASM") fail(t, "OPENQASM header must be the first statement");
      fail(t, "unexpected keyword '" + kw + "'");
    }
    if (t.kind == TokenKind::Identifier) {
      if (t.text == "compute" && is_symbol(peek(1), "{")) return out.push_back(compute_action());
      if (t.text == "print" && is_symbol(peek(1), "(")) return out.push_back(print_stmt());
      return out.push_back(identifier_stmt());
    }
    if (is_symbol(t, "{")) fail(t, "unexpected '{'; bare blocks are not supported");
    fail(t, "expected statement" + found());
  }

  AstPtr include_stmt() {
    auto node = make_node(AstKind::Include, advance().loc);
    if (peek().kind != TokenKind::StringLiteral) fail(peek(), "expected file name string");
    node->text = advance().text;
    expect(";");
    return node;
  }

  std::optional<TypeSpec> scalar_type() {
    const Token &t = peek();
    if (!is_type_keyword(t)) return std::nullopt;
    advance();
    TypeSpec spec;
    using B = TypeSpec::Base;
    if (t.text == "int" || t.text == "uint") {
      spec = {t.text == "int" ? B::Int : B::UInt, 32};
    } else if (t.text == "int64_t") {
      return TypeSpec{B::Int, 64};
    } else if (t.text == "float" || t.text == "angle") {
      spec = {B::Float, t.text == "angle" ? 64 : 32};
    } else if (t.text == "double") {
      return TypeSpec{B::Float, 64};
    } else {
      return TypeSpec{B::Bool, 1};
    }
    if (accept("[")) {
      const Token &w = peek();
      if (w.kind != TokenKind::IntegerLiteral) fail(w, "type width must be an integer literal");
      advance();
      spec.width = std::atoi(w.text.c_str());
      bool ok = spec.base == B::Float ? (spec.width == 16 || spec.width == 32 || spec.width == 64)
                                      : valid_width(spec.width);
      if (!ok) error(w.loc, "unsupported width " + w.text + " for " + t.text);
      expect("]");
    }
    return spec;
  }

  AstPtr const_decl() {
    SourceLocation loc = advance().loc;
    auto node = make_node(AstKind::ConstDecl, loc);
    if (auto ty = scalar_type()) node->type = *ty;
    const Token &name = expect_identifier("constant name");
    node->name = name.text;
    expect("=");
    node->children.push_back(expression());
    expect(";");
    declare(node->name, name.loc);
    return node;
  }

  void qubit_decl(std::vector<AstPtr> &out) {
    const Token &kw = advance();
    AstPtr prefix_size;
    if (kw.text == "qubit" && accept("[")) {
      prefix_size = expression();
      expect("]");
    }
    do {
      const Token &name = expect_identifier("qubit register name");
      auto node = make_node(AstKind::QubitDecl, name.loc);
      node->name = name.text;
      if (accept("[")) {
        node->children.push_back(expression());
        expect("]");
      } else {
        node->children.push_back(prefix_size ? prefix_size->clone() : nullptr);
      }
      declare(node->name, name.loc);
      out.push_back(std::move(node));
    } while (accept(","));
    expect(";");
  }

  void bit_decl(std::vector<AstPtr> &out) {
    const Token &kw = advance();
    AstPtr prefix_size;
    if (kw.text == "bit" && accept("[")) {
      prefix_size = expression();
      expect("]");
    }
    do {
      const Token &name = expect_identifier("bit name");
      auto node = make_node(AstKind::BitDecl, name.loc);
      node->name = name.text;
      AstPtr size = prefix_size ? prefix_size->clone() : nullptr;
      if (accept("[")) {
        size = expression();
        expect("]");
      }
      node->children.push_back(std::move(size));
      node->children.push_back(accept("=") ? initializer() : nullptr);
      declare(node->name, name.loc);
      out.push_back(std::move(node));
    } while (accept(","));
    expect(";");
  }

  AstPtr initializer() {
    if (peek().is_keyword("measure")) {
      auto node = make_node(AstKind::MeasureExpr, advance().loc);
      node->children.push_back(postfix());
      return node;
    }
    return expression();
  }

  /// `<type> name [= init] (, name [= init])*` without the trailing `;`.
  void classical_decl(std::vector<AstPtr> &out) {
    TypeSpec ty = *scalar_type();
    do {
      const Token &name = expect_identifier("variable name");
      auto node = make_node(AstKind::ClassicalDecl, name.loc);
      node->name = name.text;
      node->type = ty;
      node->children.push_back(accept("=") ? initializer() : nullptr);
      declare(node->name, name.loc);
      out.push_back(std::move(node));
    } while (accept(","));
  }

  AstPtr alias_decl() {
    SourceLocation loc = advance().loc;
    const Token &name = expect_identifier("alias name");
    auto node = make_node(AstKind::AliasDecl, loc);
    node->name = name.text;
    expect("=");
    AstPtr first = postfix();
    if (is_symbol(peek(), "++")) {
      auto cat = make_node(AstKind::Concat, first->loc);
      cat->children.push_back(std::move(first));
      while (accept("++")) cat->children.push_back(postfix());
      first = std::move(cat);
    }
    node->children.push_back(std::move(first));
    expect(";");
    declare(node->name, name.loc);
    return node;
  }

  /// `type:name`, `type name`, `qubit[n]:name`, or (for externs) a bare type.
  AstPtr param(bool allow_anonymous) {
    auto node = make_node(AstKind::Param, peek().loc);
    if (peek().is_keyword("qubit")) {
      advance();
      node->is_qubit = true;
      node->type = {TypeSpec::Base::Qubit, 0};
      if (accept("[")) {
        node->children.push_back(expression());
        expect("]");
      } else {
        node->children.push_back(nullptr);
      }
    } else if (peek().is_keyword("bit")) {
      advance();
      node->type = {TypeSpec::Base::Bit, 1};
    } else if (auto ty = scalar_type()) {
      node->type = *ty;
    } else {
      fail(peek(), "expected parameter type" + found());
    }
    accept(":");
    if (peek().kind == TokenKind::Identifier) {
      node->name = advance().text;
    } else if (!allow_anonymous) {
      fail(peek(), "expected parameter name" + found());
    }
    return node;
  }

  std::optional<TypeSpec> return_type() {
    if (!accept("->")) return std::nullopt;
    if (peek().is_keyword("bit")) {
      advance();
      return TypeSpec{TypeSpec::Base::Bit, 1};
    }
    auto ty = scalar_type();
    if (!ty) fail(peek(), "expected return type" + found());
    return ty;
  }

  AstPtr subroutine_def() {
    SourceLocation loc = advance().loc;
    const Token &name = expect_identifier("subroutine name");
    declare(name.text, name.loc);
    auto node = make_node(AstKind::SubroutineDef, loc);
    node->name = name.text;
    ScopeGuard guard(*this);
    if (accept("(")) {
      if (!is_symbol(peek(), ")")) {
        do node->params.push_back(param(false));
        while (accept(","));
      }
      expect(")");
    }
    while (peek().is_keyword("qubit")) {
      node->params.push_back(param(false));
      if (!accept(",")) break;
    }
    if (auto ty = return_type()) node->type = *ty;
    for (const auto &p : node->params) declare(p->name, p->loc);
    node->children.push_back(block(/*new_scope=*/false));
    return node;
  }

  AstPtr extern_decl() {
    SourceLocation loc = advance().loc;
    const Token &name = expect_identifier("extern name");
    auto node = make_node(AstKind::ExternDecl, loc);
    node->name = name.text;
    expect("(");
    if (!is_symbol(peek(), ")")) {
      do node->params.push_back(param(true));
      while (accept(","));
    }
    expect(")");
    if (auto ty = return_type()) node->type = *ty;
    expect(";");
    declare(node->name, name.loc);
    return node;
  }

  AstPtr measure_stmt() {
    auto node = make_node(AstKind::Measure, advance().loc);
    node->children.push_back(postfix());
    node->children.push_back(accept("->") ? postfix() : nullptr);
    expect(";");
    return node;
  }

  AstPtr reset_stmt() {
    auto node = make_node(AstKind::Reset, advance().loc);
    node->children.push_back(postfix());
    expect(";");
    return node;
  }

  AstPtr if_stmt() {
    auto node = make_node(AstKind::If, advance().loc);
    expect("(");
    node->children.push_back(expression());
    expect(")");
    node->children.push_back(body());
    node->children.push_back(peek().is_keyword("else") ? (advance(), body()) : nullptr);
    return node;
  }

  AstPtr for_stmt() {
    SourceLocation loc = advance().loc;
    if (is_symbol(peek(), "(")) return for_cstyle(loc);
    auto node = make_node(AstKind::ForRange, loc);
    ScopeGuard guard(*this);
    if (auto ty = scalar_type()) node->type = *ty;
    const Token &var = expect_identifier("loop variable");
    node->name = var.text;
    declare(var.text, var.loc);
    if (!peek().is_keyword("in")) fail(peek(), "expected 'in'" + found());
    advance();
    expect("[");
    node->children.push_back(range(peek().loc));
    expect("]");
    node->children.push_back(body());
    return node;
  }

  AstPtr for_cstyle(SourceLocation loc) {
    auto node = make_node(AstKind::ForCStyle, loc);
    ScopeGuard guard(*this);
    expect("(");
    if (is_symbol(peek(), ";")) {
      node->children.push_back(nullptr);
    } else if (is_type_keyword(peek())) {
      std::vector<AstPtr> decls;
      classical_decl(decls);
      if (decls.size() != 1) error(loc, "for-loop initializer must declare one variable");
      node->children.push_back(std::move(decls.front()));
    } else {
      node->children.push_back(simple_assignment());
    }
    expect(";");
    node->children.push_back(is_symbol(peek(), ";") ? nullptr : expression());
    expect(";");
    node->children.push_back(is_symbol(peek(), ")") ? nullptr : simple_assignment());
    expect(")");
    node->children.push_back(body());
    return node;
  }

  AstPtr while_stmt() {
    auto node = make_node(AstKind::While, advance().loc);
    expect("(");
    node->children.push_back(expression());
    expect(")");
    node->children.push_back(body());
    return node;
  }

  AstPtr return_stmt() {
    auto node = make_node(AstKind::Return, advance().loc);
    node->children.push_back(is_symbol(peek(), ";") ? nullptr : initializer());
    expect(";");
    return node;
  }

  AstPtr compute_action() {
    auto node = make_node(AstKind::ComputeAction, advance().loc);
    node->children.push_back(block());
    if (!(peek().kind == TokenKind::Identifier && peek().text == "action"))
      fail(peek(), "expected 'action' after compute block" + found());
    advance();
    node->children.push_back(block());
    return node;
  }

  AstPtr print_stmt() {
    auto node = make_node(AstKind::Print, advance().loc);
    expect("(");
    if (!is_symbol(peek(), ")")) {
      do node->children.push_back(expression());
      while (accept(","));
    }
    expect(")");
    expect(";");
    return node;
  }

  void operand_list(std::vector<AstPtr> *out = nullptr) {
    do {
      auto operand = postfix();
      if (out) out->push_back(std::move(operand));
    } while (accept(","));
  }

  std::vector<AstPtr> call_args() {
    std::vector<AstPtr> args;
    expect("(");
    if (!is_symbol(peek(), ")")) {
      do args.push_back(expression());
      while (accept(","));
    }
    expect(")");
    return args;
  }

  AstPtr gate_call() {
    SourceLocation loc = peek().loc;
    std::vector<Modifier> mods;
    while (peek().kind == TokenKind::Keyword &&
           (peek().text == "ctrl" || peek().text == "negctrl" || peek().text == "inv" ||
            peek().text == "pow")) {
      const Token &m = advance();
      Modifier mod;
      mod.loc = m.loc;
      mod.kind = m.text == "ctrl"      ? Modifier::Kind::Ctrl
                 : m.text == "negctrl" ? Modifier::Kind::NegCtrl
                 : m.text == "inv"     ? Modifier::Kind::Inv
                                       : Modifier::Kind::Pow;
      if (accept("(")) {
        mod.arg = expression();
        expect(")");
      } else if (mod.kind == Modifier::Kind::Pow) {
        fail(peek(), "pow modifier requires an exponent");
      }
      expect("@");
      mods.push_back(std::move(mod));
    }
    const Token &name = expect_identifier("gate name");
    auto node = make_node(AstKind::GateCall, loc);
    node->name = name.text;
    node->modifiers = std::move(mods);
    if (is_symbol(peek(), "(")) node->params = call_args();
    if (is_symbol(peek(), ";")) fail(peek(), "expected qubit operand for '" + name.text + "'");
    operand_list(&node->children);
    expect(";");
    return node;
  }

  AstPtr identifier_stmt() {
    const Token &t1 = peek(1);
    if (is_symbol(t1, "(")) {
      // Either `f(args);` or a gate/subroutine call with qubit operands.
      std::size_t save = pos_;
      const Token &name = advance();
      auto args = call_args();
      if (accept(";")) {
        auto call = make_node(AstKind::Call, name.loc);
        call->name = name.text;
        call->params = std::move(args);
        auto stmt = make_node(AstKind::ExpressionStatement, name.loc);
        stmt->children.push_back(std::move(call));
        return stmt;
      }
      pos_ = save;
      return gate_call();
    }
    if (t1.kind == TokenKind::Identifier) return gate_call();
    auto node = simple_assignment();
    expect(";");
    return node;
  }

  /// Any assignment form including `x++`, without the trailing `;`.
  AstPtr simple_assignment() {
    AstPtr target = postfix();
    if (target->kind != AstKind::Identifier && target->kind != AstKind::Index)
      fail(peek(), "invalid assignment target");
    const Token &op = peek();
    if (is_symbol(op, "=")) {
      advance();
      if (peek().is_keyword("measure")) {
        auto node = make_node(AstKind::Measure, op.loc);
        advance();
        node->children.push_back(postfix());
        node->children.push_back(std::move(target));
        return node;
      }
      auto node = make_node(AstKind::Assignment, op.loc);
      node->children.push_back(std::move(target));
      node->children.push_back(expression());
      return node;
    }
    if (is_compound_op(op)) {
      advance();
      auto node = make_node(AstKind::CompoundAssignment, op.loc);
      node->op = op.text;
      node->children.push_back(std::move(target));
      node->children.push_back(expression());
      return node;
    }
    if (is_symbol(op, "++") || is_symbol(op, "--")) {
      advance();
      auto node = make_node(AstKind::CompoundAssignment, op.loc);
      node->op = op.text == "++" ? "+=" : "-=";
      node->children.push_back(std::move(target));
      auto one = make_node(AstKind::IntLiteral, op.loc);
      one->int_value = 1;
      node->children.push_back(std::move(one));
      return node;
    }
    fail(op, "expected assignment" + found());
  }

  // ---- expressions ---------------------------------------------------------

  AstPtr range(SourceLocation loc) {
    auto node = make_node(AstKind::Range, loc);
    AstPtr first = is_symbol(peek(), ":") ? nullptr : expression();
    expect(":");
    AstPtr second = (is_symbol(peek(), "]") || is_symbol(peek(), ":")) ? nullptr : expression();
    if (accept(":")) {
      AstPtr third = is_symbol(peek(), "]") ? nullptr : expression();
      node->children.push_back(std::move(first));
      node->children.push_back(std::move(second));
      node->children.push_back(std::move(third));
    } else {
      node->children.push_back(std::move(first));
      node->children.push_back(nullptr);
      node->children.push_back(std::move(second));
    }
    return node;
  }

  AstPtr expression() { return binary(0); }

  static int precedence(const Token &t) {
    if (t.kind != TokenKind::Operator && t.kind != TokenKind::Punctuation) return -1;
    const std::string &s = t.text;
    if (s == "||") return 1;
    if (s == "&&") return 2;
    if (s == "|") return 3;
    if (s == "^") return 4;
    if (s == "&") return 5;
    if (s == "==" || s == "!=") return 6;
    if (s == "<" || s == ">" || s == "<=" || s == ">=") return 7;
    if (s == "<<" || s == ">>") return 8;
    if (s == "+" || s == "-") return 9;
    if (s == "*" || s == "/" || s == "%") return 10;
    return -1;
  }

  AstPtr binary(int min_prec) {
    AstPtr lhs = unary();
    while (true) {
      int prec = precedence(peek());
      if (prec < 0 || prec < min_prec) break;
      const Token &op = advance();
      AstPtr rhs = binary(prec + 1);
      auto node = make_node(AstKind::Binary, op.loc);
      node->op = op.text;
      node->children.push_back(std::move(lhs));
      node->children.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  AstPtr unary() {
    const Token &t = peek();
    if (is_symbol(t, "-") || is_symbol(t, "!") || is_symbol(t, "~") || is_symbol(t, "+")) {
      advance();
      AstPtr operand = unary();
      if (t.text == "+") return operand;
      auto node = make_node(AstKind::Unary, t.loc);
      node->op = t.text;
      node->children.push_back(std::move(operand));
      return node;
    }
    return power();
  }

  AstPtr power() {
    AstPtr base = postfix();
    if (is_symbol(peek(), "**")) {
      const Token &op = advance();
      auto node = make_node(AstKind::Binary, op.loc);
      node->op = "**";
      node->children.push_back(std::move(base));
      node->children.push_back(unary());  // right associative, allows 2 ** -1
      return node;
    }
    return base;
  }

  AstPtr postfix() {
    AstPtr expr = primary();
    while (is_symbol(peek(), "[")) {
      SourceLocation loc = advance().loc;
      auto node = make_node(AstKind::Index, loc);
      node->children.push_back(std::move(expr));
      // Lookahead for a ':' at this bracket depth decides between index and range.
      if (bracket_has_colon()) {
        node->children.push_back(range(peek().loc));
      } else {
        node->children.push_back(expression());
      }
      expect("]");
      expr = std::move(node);
    }
    return expr;
  }

  bool bracket_has_colon() const {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const Token &t = toks_[i];
      if (is_symbol(t, "[") || is_symbol(t, "(")) ++depth;
      if (is_symbol(t, ")")) --depth;
      if (is_symbol(t, "]")) {
        if (depth == 0) return false;
        --depth;
      }
      if (depth == 0 && is_symbol(t, ":")) return true;
      if (is_symbol(t, ";") || t.kind == TokenKind::EndOfFile) return false;
    }
    return false;
  }

  AstPtr primary() {
    const Token &t = peek();
    switch (t.kind) {
      case TokenKind::IntegerLiteral: {
        advance();
        auto node = make_node(AstKind::IntLiteral, t.loc);
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(),
                                         node->int_value);
        if (ec != std::errc()) error(t.loc, "integer literal '" + t.text + "' out of range");
        return node;
      }
      case TokenKind::FloatLiteral: {
        advance();
        auto node = make_node(AstKind::FloatLiteral, t.loc);
        node->float_value = std::strtod(t.text.c_str(), nullptr);
        return node;
      }
      case TokenKind::StringLiteral: {
        advance();
        auto node = make_node(AstKind::StringLiteral, t.loc);
        node->text = t.text;
        return node;
      }
      case TokenKind::Identifier: {
        advance();
        if (is_symbol(peek(), "(")) {
          auto node = make_node(AstKind::Call, t.loc);
          node->name = t.text;
          node->params = call_args();
          // `f(args) q, r` in expression position passes qubit operands.
          if (peek().kind == TokenKind::Identifier) operand_list(&node->children);
          return node;
        }
        auto node = make_node(AstKind::Identifier, t.loc);
        node->name = t.text;
        return node;
      }
      case TokenKind::Keyword: {
        if (t.text == "true" || t.text == "false") {
          advance();
          auto node = make_node(AstKind::BoolLiteral, t.loc);
          node->bool_value = t.text == "true";
          return node;
        }
        if (t.text == "measure") {
          advance();
          auto node = make_node(AstKind::MeasureExpr, t.loc);
          node->children.push_back(postfix());
          return node;
        }
        if (is_type_keyword(t)) {
          // Cast: `float[64](x)`.
          auto node = make_node(AstKind::Call, t.loc);
          node->type = *scalar_type();
          node->name = "cast";
          node->params = call_args();
          if (node->params.size() != 1) error(t.loc, "cast takes exactly one argument");
          return node;
        }
        break;
      }
      default:
        break;
    }
    if (accept("(")) {
      AstPtr inner = expression();
      expect(")");
      return inner;
    }
    fail(t, "expected expression" + found());
  }

  const std::vector<Token> &toks_;
  Token eof_;
  std::size_t pos_ = 0;
  DiagnosticList diags_;
  std::vector<std::set<std::string>> scopes_;
};

}  // namespace

ParseResult parse(const std::vector<Token> &tokens) { return Parser(tokens).run(); }

ParseResult parse_source(std::string_view source) {
  LexResult lex = tokenize(source);
  if (!lex.ok()) {
    ParseResult result;
    result.program = make_node(AstKind::Program, SourceLocation{});
    result.diagnostics.push_back(*lex.error);
    return result;
  }
  return parse(lex.tokens);
}

}  // namespace qforge::frontend
