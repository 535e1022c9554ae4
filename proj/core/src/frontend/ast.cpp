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

#include "qforge/frontend/ast.hpp"

#include <iomanip>
#include <sstream>

namespace qforge::frontend {

const char *to_string(AstKind kind) {
  switch (kind) {
    case AstKind::Program: return "Program";
    case AstKind::Include: return "Include";
    case AstKind::ConstDecl: return "ConstDecl";
    case AstKind::QubitDecl: return "QubitDecl";
    case AstKind::BitDecl: return "BitDecl";
    case AstKind::ClassicalDecl: return "ClassicalDecl";
    case AstKind::AliasDecl: return "AliasDecl";
    case AstKind::SubroutineDef: return "SubroutineDef";
    case AstKind::ExternDecl: return "ExternDecl";
    case AstKind::GateCall: return "GateCall";
    case AstKind::Measure: return "Measure";
    case AstKind::Reset: return "Reset";
    case AstKind::Assignment: return "Assignment";
    case AstKind::CompoundAssignment: return "CompoundAssignment";
    case AstKind::If: return "If";
    case AstKind::ForRange: return "ForRange";
    case AstKind::ForCStyle: return "ForCStyle";
    case AstKind::While: return "While";
    case AstKind::ComputeAction: return "ComputeAction";
    case AstKind::Return: return "Return";
    case AstKind::Print: return "Print";
    case AstKind::ExpressionStatement: return "ExpressionStatement";
    case AstKind::Block: return "Block";
    case AstKind::IntLiteral: return "IntLiteral";
    case AstKind::FloatLiteral: return "FloatLiteral";
    case AstKind::BoolLiteral: return "BoolLiteral";
    case AstKind::StringLiteral: return "StringLiteral";
    case AstKind::Identifier: return "Identifier";
    case AstKind::Index: return "Index";
    case AstKind::Range: return "Range";
    case AstKind::Concat: return "Concat";
    case AstKind::Binary: return "Binary";
    case AstKind::Unary: return "Unary";
    case AstKind::Call: return "Call";
    case AstKind::MeasureExpr: return "MeasureExpr";
    case AstKind::Param: return "Param";
  }
  return "?";
}

std::string to_string(const TypeSpec &type) {
  using B = TypeSpec::Base;
  std::string base;
  switch (type.base) {
    case B::None: return "none";
    case B::Bit: base = "bit"; break;
    case B::Bool: return "bool";
    case B::Int: base = "int"; break;
    case B::UInt: base = "uint"; break;
    case B::Float: base = "float"; break;
    case B::Qubit: base = "qubit"; break;
  }
  if (type.width > 0 && type.base != B::Bit && type.base != B::Qubit)
    base += "[" + std::to_string(type.width) + "]";
  return base;
}

AstPtr make_node(AstKind kind, SourceLocation loc) { return std::make_unique<AstNode>(kind, loc); }

namespace {

std::vector<AstPtr> clone_all(const std::vector<AstPtr> &nodes) {
  std::vector<AstPtr> out;
  out.reserve(nodes.size());
  for (const auto &n : nodes) out.push_back(n ? n->clone() : nullptr);
  return out;
}

bool equal_ptr(const AstPtr &a, const AstPtr &b) {
  if (!a || !b) return !a && !b;
  return structurally_equal(*a, *b);
}

bool equal_all(const std::vector<AstPtr> &a, const std::vector<AstPtr> &b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal_ptr(a[i], b[i])) return false;
  return true;
}

const char *modifier_name(Modifier::Kind k) {
  switch (k) {
    case Modifier::Kind::Ctrl: return "ctrl";
    case Modifier::Kind::NegCtrl: return "negctrl";
    case Modifier::Kind::Inv: return "inv";
    case Modifier::Kind::Pow: return "pow";
  }
  return "?";
}

void dump_into(std::ostringstream &os, const AstNode &node, int depth) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  os << pad << '(' << to_string(node.kind);
  if (!node.name.empty()) os << " name=" << node.name;
  if (!node.op.empty()) os << " op=" << node.op;
  switch (node.kind) {
    case AstKind::IntLiteral: os << ' ' << node.int_value; break;
    case AstKind::FloatLiteral: os << ' ' << std::setprecision(17) << node.float_value; break;
    case AstKind::BoolLiteral: os << ' ' << (node.bool_value ? "true" : "false"); break;
    case AstKind::StringLiteral:
    case AstKind::Include: os << " \"" << node.text << '"'; break;
    case AstKind::Program:
      if (!node.text.empty()) os << " version=" << node.text;
      break;
    default: break;
  }
  if (!node.type.is_none()) os << " type=" << to_string(node.type);
  if (node.is_qubit) os << " qubit";
  os << " @" << node.loc.line << ':' << node.loc.column;
  for (const auto &m : node.modifiers) {
    os << '\n' << pad << "  [" << modifier_name(m.kind) << ']';
    if (m.arg) {
      os << '\n';
      dump_into(os, *m.arg, depth + 2);
    }
  }
  if (!node.params.empty()) {
    os << '\n' << pad << "  params:";
    for (const auto &p : node.params) {
      os << '\n';
      if (p) dump_into(os, *p, depth + 2);
      else os << pad << "    (null)";
    }
  }
  for (const auto &c : node.children) {
    os << '\n';
    if (c) dump_into(os, *c, depth + 1);
    else os << pad << "  (null)";
  }
  os << ')';
}

}  // namespace

AstPtr AstNode::clone() const {
  auto out = std::make_unique<AstNode>(kind, loc);
  out->children = clone_all(children);
  out->params = clone_all(params);
  for (const auto &m : modifiers)
    out->modifiers.push_back(Modifier{m.kind, m.arg ? m.arg->clone() : nullptr, m.loc});
  out->name = name;
  out->op = op;
  out->text = text;
  out->int_value = int_value;
  out->float_value = float_value;
  out->bool_value = bool_value;
  out->is_qubit = is_qubit;
  out->type = type;
  return out;
}

bool structurally_equal(const AstNode &a, const AstNode &b) {
  if (a.kind != b.kind || a.name != b.name || a.op != b.op || a.text != b.text ||
      a.int_value != b.int_value || a.bool_value != b.bool_value || a.is_qubit != b.is_qubit ||
      !(a.type == b.type))
    return false;
  // NaN never appears in literals, so plain comparison is fine.
  if (a.float_value != b.float_value) return false;
  if (a.modifiers.size() != b.modifiers.size()) return false;
  for (std::size_t i = 0; i < a.modifiers.size(); ++i) {
    if (a.modifiers[i].kind != b.modifiers[i].kind) return false;
    if (!equal_ptr(a.modifiers[i].arg, b.modifiers[i].arg)) return false;
  }
  return equal_all(a.children, b.children) && equal_all(a.params, b.params);
}

std::string dump(const AstNode &node) {
  std::ostringstream os;
  dump_into(os, node, 0);
  os << '\n';
  return os.str();
}

}  // namespace qforge::frontend
