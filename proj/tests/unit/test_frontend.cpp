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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "qforge/driver/fixtures.hpp"
#include "qforge/frontend/lexer.hpp"
#include "qforge/frontend/parser.hpp"

using namespace qforge;
using namespace qforge::frontend;

namespace {

const AstNode &only_statement(const ParseResult &r) {
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.program->children.size(), 1u);
  return *r.program->children.at(0);
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

// ---- lexer ---------------------------------------------------------------------------

TEST(Lexer, ClassifiesDeclaration) {
  auto r = tokenize("qubit q[2];");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.tokens.size(), 7u);  // six lexemes plus end of file
  EXPECT_TRUE(r.tokens[0].is_keyword("qubit"));
  EXPECT_EQ(r.tokens[1].kind, TokenKind::Identifier);
  EXPECT_EQ(r.tokens[1].text, "q");
  EXPECT_TRUE(r.tokens[2].is_punct("["));
  EXPECT_EQ(r.tokens[3].kind, TokenKind::IntegerLiteral);
  EXPECT_EQ(r.tokens[3].text, "2");
  EXPECT_TRUE(r.tokens[4].is_punct("]"));
  EXPECT_TRUE(r.tokens[5].is_punct(";"));
  EXPECT_EQ(r.tokens[6].kind, TokenKind::EndOfFile);
}

TEST(Lexer, SkipsCommentsAndTracksLines) {
  auto r = tokenize("// c\nx q;");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.tokens.size(), 4u);
  EXPECT_EQ(r.tokens[0].kind, TokenKind::Identifier);
  EXPECT_EQ(r.tokens[0].text, "x");
  EXPECT_EQ(r.tokens[1].text, "q");
  EXPECT_TRUE(r.tokens[2].is_punct(";"));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(r.tokens[static_cast<std::size_t>(i)].loc.line, 2);
}

TEST(Lexer, BlockComments) {
  auto r = tokenize("x /* a\n b */ q;");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.tokens[1].text, "q");
  EXPECT_EQ(r.tokens[1].loc.line, 2);
}

TEST(Lexer, MalformedDeclarationIsNotALexError) {
  auto r = tokenize("qubit q[;");
  EXPECT_TRUE(r.ok());
}

TEST(Lexer, IllegalCharacter) {
  auto r = tokenize("qubit q$;");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->loc.line, 1);
  EXPECT_EQ(r.error->loc.column, 7);
}

TEST(Lexer, UnterminatedString) {
  auto r = tokenize("include \"stdgates.inc;\n");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->loc.column, 8);
}

TEST(Lexer, Literals) {
  auto r = tokenize("1.5 2e3 .25 42 \"a\\\"b\"");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.tokens[0].kind, TokenKind::FloatLiteral);
  EXPECT_EQ(r.tokens[1].kind, TokenKind::FloatLiteral);
  EXPECT_EQ(r.tokens[2].kind, TokenKind::FloatLiteral);
  EXPECT_EQ(r.tokens[3].kind, TokenKind::IntegerLiteral);
  EXPECT_EQ(r.tokens[4].kind, TokenKind::StringLiteral);
  EXPECT_EQ(r.tokens[4].text, "a\"b");
}

TEST(Lexer, MultiCharOperators) {
  auto r = tokenize("a <<= b ** c && d != e");
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.tokens[1].is_op("<<="));
  EXPECT_TRUE(r.tokens[3].is_op("**"));
  EXPECT_TRUE(r.tokens[5].is_op("&&"));
  EXPECT_TRUE(r.tokens[7].is_op("!="));
}

// ---- parser --------------------------------------------------------------------------

TEST(Parser, IntTypedefDesugars) {
  auto a = parse_source("int x = 5;");
  auto b = parse_source("int[32] x = 5;");
  ASSERT_TRUE(a.ok());
  ASSERT_TRUE(b.ok());
  EXPECT_TRUE(structurally_equal(*a.program, *b.program));
  const auto &decl = *a.program->children.at(0);
  EXPECT_EQ(decl.type.base, TypeSpec::Base::Int);
  EXPECT_EQ(decl.type.width, 32);
}

TEST(Parser, OtherTypedefs) {
  struct Case {
    const char *source;
    TypeSpec::Base base;
    int width;
  };
  for (auto c : {Case{"int64_t x = 5;", TypeSpec::Base::Int, 64}, Case{"float x = 1.0;", TypeSpec::Base::Float, 32},
                 Case{"double x = 1.0;", TypeSpec::Base::Float, 64}}) {
    auto r = parse_source(c.source);
    const auto &decl = only_statement(r);
    EXPECT_EQ(decl.type.base, c.base) << c.source;
    EXPECT_EQ(decl.type.width, c.width) << c.source;
  }
  auto a = parse_source("double x = 1.0;");
  auto b = parse_source("float[64] x = 1.0;");
  EXPECT_TRUE(structurally_equal(*a.program, *b.program));
}

TEST(Parser, ComputeActionBlocks) {
  auto r = parse_source(driver::compute_action_source());
  ASSERT_TRUE(r.ok());
  const AstNode *ca = nullptr;
  for (const auto &s : r.program->children)
    if (s->kind == AstKind::ComputeAction) ca = s.get();
  ASSERT_NE(ca, nullptr);
  const auto &compute = *ca->children.at(0);
  const auto &action = *ca->children.at(1);
  ASSERT_EQ(compute.children.size(), 3u);
  EXPECT_EQ(compute.children[0]->kind, AstKind::GateCall);
  EXPECT_EQ(compute.children[0]->name, "rx");
  EXPECT_EQ(compute.children[1]->kind, AstKind::GateCall);
  EXPECT_EQ(compute.children[1]->name, "h");
  EXPECT_EQ(compute.children[2]->kind, AstKind::ForRange);
  ASSERT_EQ(action.children.size(), 1u);
  EXPECT_EQ(action.children[0]->name, "rz");
}

TEST(Parser, HeaderAndInclude) {
  auto r = parse_source("OPENQASM 3; include \"stdgates.inc\";");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.program->text, "3");
  ASSERT_EQ(r.program->children.size(), 1u);
  EXPECT_EQ(r.program->children[0]->kind, AstKind::Include);
  EXPECT_EQ(r.program->children[0]->text, "stdgates.inc");
}

TEST(Parser, MalformedDeclarationReportsAtSemicolon) {
  auto r = parse_source("qubit q[;");
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].severity, Severity::Error);
  EXPECT_EQ(r.diagnostics[0].loc.line, 1);
  EXPECT_EQ(r.diagnostics[0].loc.column, 8);
}

TEST(Parser, RecoversAndReportsSeveralErrors) {
  auto r = parse_source("qubit q[;\nx q;\nh );\n");
  EXPECT_EQ(r.diagnostics.size(), 2u);
  EXPECT_EQ(r.diagnostics[1].loc.line, 3);
}

TEST(Parser, DuplicateDeclarationInSameScope) {
  auto r = parse_source("qubit q;\nint q = 3;");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.diagnostics[0].loc.line, 2);
  auto ok = parse_source("int x = 1;\ndef f() { int x = 2; }");
  EXPECT_TRUE(ok.ok());
}

TEST(Parser, BroadcastIsGateCallOnRegister) {
  auto r = parse_source("qubit q[3];\nh q;");
  ASSERT_TRUE(r.ok());
  const auto &call = *r.program->children.at(1);
  EXPECT_EQ(call.kind, AstKind::GateCall);
  ASSERT_EQ(call.children.size(), 1u);
  EXPECT_EQ(call.children[0]->kind, AstKind::Identifier);
}

TEST(Parser, RangeAndCStyleLoops) {
  auto a = parse_source("for i in [0:2:10] { }");
  const auto &f = only_statement(a);
  EXPECT_EQ(f.kind, AstKind::ForRange);
  const auto &range = *f.children.at(0);
  EXPECT_EQ(range.kind, AstKind::Range);
  EXPECT_EQ(range.children.at(1)->int_value, 2);

  auto b = parse_source("for (int i = 0; i < 4; i += 1) { }");
  EXPECT_EQ(only_statement(b).kind, AstKind::ForCStyle);
}

TEST(Parser, CPrecedence) {
  auto r = parse_source("const x = 1 + 2 * 3 << 1 == 14;");
  const auto &c = only_statement(r);
  const auto &eq = *c.children.at(0);
  ASSERT_EQ(eq.op, "==");
  const auto &shift = *eq.children.at(0);
  ASSERT_EQ(shift.op, "<<");
  EXPECT_EQ(shift.children.at(0)->op, "+");
  EXPECT_EQ(shift.children.at(0)->children.at(1)->op, "*");
}

TEST(Parser, PowerIsRightAssociative) {
  auto r = parse_source("const x = 2 ** 3 ** 2;");
  const auto &p = *only_statement(r).children.at(0);
  ASSERT_EQ(p.op, "**");
  EXPECT_EQ(p.children.at(0)->kind, AstKind::IntLiteral);
  EXPECT_EQ(p.children.at(1)->op, "**");
}

TEST(Parser, Modifiers) {
  auto r = parse_source("qubit a;\nqubit b;\nctrl @ inv @ pow(2) @ x a, b;");
  ASSERT_TRUE(r.ok());
  const auto &call = *r.program->children.at(2);
  ASSERT_EQ(call.modifiers.size(), 3u);
  EXPECT_EQ(call.modifiers[0].kind, Modifier::Kind::Ctrl);
  EXPECT_EQ(call.modifiers[1].kind, Modifier::Kind::Inv);
  EXPECT_EQ(call.modifiers[2].kind, Modifier::Kind::Pow);
  EXPECT_EQ(call.modifiers[2].arg->int_value, 2);
}

// Each statement form of the language maps onto one node kind.
TEST(Parser, StatementFormsMapToOneNodeKind) {
  struct Case {
    const char *source;
    AstKind kind;
  };
  const Case cases[] = {
      {"qubit q[4];", AstKind::QubitDecl},
      {"bit[2] c;", AstKind::BitDecl},
      {"int[32] i = 1;", AstKind::ClassicalDecl},
      {"float[64] f = 1.5;", AstKind::ClassicalDecl},
      {"const n = 4;", AstKind::ConstDecl},
      {"x q;", AstKind::GateCall},
      {"c = measure q;", AstKind::Measure},
      {"measure q;", AstKind::Measure},
      {"reset q;", AstKind::Reset},
      {"if (c) { x q; } else { h q; }", AstKind::If},
      {"for i in [0:4] { x q[i]; }", AstKind::ForRange},
      {"while (i < 3) { i += 1; }", AstKind::While},
      {"def f(qubit a) { x a; }", AstKind::SubroutineDef},
      {"extern g(int[32]) -> int[32];", AstKind::ExternDecl},
      {"ctrl @ x a, b;", AstKind::GateCall},
      {"let s = q[0:2];", AstKind::AliasDecl},
      {"compute { h q; } action { x q; }", AstKind::ComputeAction},
      {"i = 3;", AstKind::Assignment},
      {"i += 3;", AstKind::CompoundAssignment},
      {"print(\"v\", i);", AstKind::Print},
      {"f(q);", AstKind::ExpressionStatement},
  };
  for (const auto &c : cases) {
    auto r = parse_source(c.source);
    ASSERT_TRUE(r.ok()) << c.source << ": " << r.diagnostics.at(0).message;
    ASSERT_EQ(r.program->children.size(), 1u) << c.source;
    EXPECT_EQ(r.program->children[0]->kind, c.kind) << c.source;
  }
}

TEST(Parser, Deterministic) {
  for (const auto &name : driver::fixture_names()) {
    auto src = *driver::fixture_source(name);
    auto a = parse_source(src);
    auto b = parse_source(src);
    ASSERT_TRUE(a.ok()) << name;
    EXPECT_TRUE(structurally_equal(*a.program, *b.program)) << name;
    EXPECT_EQ(dump(*a.program), dump(*b.program)) << name;
  }
}

TEST(Parser, FixtureFilesMatchBuiltins) {
  const std::pair<const char *, const char *> files[] = {
      {"ghz", "ghz.qasm"}, {"deuteron", "deuteron.qasm"}, {"cancel", "cancel.qasm"},
      {"compute-action", "compute_action.qasm"}, {"heisenberg", "heisenberg.qasm"}, {"trotter", "trotter.qasm"}};
  for (auto [name, file] : files) {
    auto on_disk = parse_source(read_file(std::string(QFORGE_FIXTURE_DIR) + "/" + file));
    auto builtin = parse_source(*driver::fixture_source(name));
    ASSERT_TRUE(on_disk.ok()) << file;
    EXPECT_TRUE(structurally_equal(*on_disk.program, *builtin.program)) << file;
  }
}

// Corrupting a well-formed program must yield a diagnostic inside the corrupted span.
TEST(Parser, DiagnosticsPointAtMutation) {
  int checked = 0;
  for (const auto &name : driver::fixture_names()) {
    std::string src = *driver::fixture_source(name);
    for (std::size_t pos = 0; pos < src.size(); ++pos) {
      if (src[pos] != ';') continue;
      // stray closing paren right after a statement
      std::string mutated = src.substr(0, pos + 1) + " ) " + src.substr(pos + 1);
      auto r = parse_source(mutated);
      ASSERT_FALSE(r.ok()) << name << " at " << pos;
      const auto &loc = r.diagnostics.front().loc;
      EXPECT_GE(loc.byte_offset, pos + 1) << name << " at " << pos;
      EXPECT_LE(loc.byte_offset, pos + 3) << name << " at " << pos;
      // illegal character
      std::string lexbad = src.substr(0, pos) + "$" + src.substr(pos);
      auto l = parse_source(lexbad);
      ASSERT_FALSE(l.ok());
      EXPECT_EQ(l.diagnostics.front().loc.byte_offset, pos);
      ++checked;
    }
  }
  EXPECT_GT(checked, 30);
}
