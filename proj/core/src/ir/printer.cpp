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

#include "qforge/ir/printer.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qforge::ir {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

namespace {

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + '"';
}

struct AttrPrinter {
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_double(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const std::string &v) const { return quote(v); }
  std::string operator()(const std::vector<double> &v) const {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
    return s + "]";
  }
  std::string operator()(const std::vector<std::string> &v) const {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + quote(v[i]);
    return s + "]";
  }
};

class FunctionPrinter {
 public:
  FunctionPrinter(const Function &fn, std::ostringstream &os) : fn_(fn), os_(os) {}

  void print() {
    if (fn_.is_declaration) {
      os_ << "func private @" << fn_.name << '(';
      auto params = fn_.decl_param_types;
      for (std::size_t i = 0; i < params.size(); ++i) os_ << (i ? ", " : "") << params[i].str();
      os_ << ')';
      print_result_types();
      os_ << '\n';
      return;
    }
    os_ << "func @" << fn_.name << '(';
    for (std::size_t i = 0; i < fn_.body.args.size(); ++i) {
      ValueId a = fn_.body.args[i];
      os_ << (i ? ", " : "") << name(a) << ": " << fn_.type(a).str();
    }
    os_ << ')';
    print_result_types();
    os_ << " {\n";
    print_ops(fn_.body, 1);
    os_ << "}\n";
  }

 private:
  void print_result_types() {
    if (fn_.result_types.empty()) return;
    os_ << " -> (";
    for (std::size_t i = 0; i < fn_.result_types.size(); ++i)
      os_ << (i ? ", " : "") << fn_.result_types[i].str();
    os_ << ')';
  }

  std::string name(ValueId v) {
    auto it = numbers_.find(v);
    if (it == numbers_.end()) it = numbers_.emplace(v, next_++).first;
    return "%" + std::to_string(it->second);
  }

  std::string use(ValueId v) {
    auto it = numbers_.find(v);
    // Undefined operands only show up in broken IR; keep them visible.
    if (it == numbers_.end()) return "%<undef" + std::to_string(v.raw) + ">";
    return "%" + std::to_string(it->second);
  }

  void print_ops(const Region &region, int depth) {
    for (const auto &op : region.ops)
      if (op && !op->erased) print_op(*op, depth);
  }

  void print_op(const Operation &op, int depth) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    os_ << pad;
    if (op.name == op::kReturn) {
      os_ << "return";
      if (op.num_operands() > 0) {
        os_ << ' ';
        for (std::size_t i = 0; i < op.num_operands(); ++i)
          os_ << (i ? ", " : "") << use(op.operand(i));
        os_ << " : ";
        for (std::size_t i = 0; i < op.num_operands(); ++i)
          os_ << (i ? ", " : "") << fn_.type(op.operand(i)).str();
      }
      os_ << '\n';
      return;
    }
    // Operands are named before results so `%N` numbering follows definition order.
    std::string operands;
    for (std::size_t i = 0; i < op.num_operands(); ++i)
      operands += (i ? ", " : "") + use(op.operand(i));
    if (!op.results.empty()) {
      for (std::size_t i = 0; i < op.results.size(); ++i)
        os_ << (i ? ", " : "") << name(op.results[i]);
      os_ << " = ";
    }
    os_ << op.name << '(' << operands << ')';
    if (!op.attrs.empty()) {
      os_ << " {";
      bool first = true;
      for (const auto &[key, value] : op.attrs) {
        os_ << (first ? "" : ", ") << key << " = " << std::visit(AttrPrinter{}, value);
        first = false;
      }
      os_ << '}';
    }
    os_ << " : (";
    for (std::size_t i = 0; i < op.num_operands(); ++i)
      os_ << (i ? ", " : "") << fn_.type(op.operand(i)).str();
    os_ << ") -> (";
    for (std::size_t i = 0; i < op.results.size(); ++i)
      os_ << (i ? ", " : "") << fn_.type(op.results[i]).str();
    os_ << ')';
    for (const auto &region : op.regions) {
      os_ << " {\n";
      if (!region->args.empty()) {
        os_ << pad << "^bb(";
        for (std::size_t i = 0; i < region->args.size(); ++i) {
          ValueId a = region->args[i];
          os_ << (i ? ", " : "") << name(a) << ": " << fn_.type(a).str();
        }
        os_ << "):\n";
      }
      print_ops(*region, depth + 1);
      os_ << pad << '}';
    }
    os_ << '\n';
  }

  const Function &fn_;
  std::ostringstream &os_;
  std::unordered_map<ValueId, int, ValueIdHash> numbers_;
  int next_ = 0;
};

}  // namespace

std::string format_attribute(const Attribute &attr) { return std::visit(AttrPrinter{}, attr); }

std::string print_function(const Function &fn) {
  std::ostringstream os;
  FunctionPrinter(fn, os).print();
  return os.str();
}

std::string print_module(const Module &module) {
  std::ostringstream os;
  for (const auto &g : module.globals)
    os << "global @" << g.name << " : " << g.type.str() << " = " << format_attribute(g.value)
       << '\n';
  if (!module.globals.empty()) os << '\n';
  bool first = true;
  for (const auto &fn : module.functions) {
    if (!first) os << '\n';
    first = false;
    FunctionPrinter(*fn, os).print();
  }
  return os.str();
}

bool structurally_equal(const Module &a, const Module &b) { return print_module(a) == print_module(b); }

}  // namespace qforge::ir
