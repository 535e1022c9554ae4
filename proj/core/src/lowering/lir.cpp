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

#include "qforge/lowering/lir.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "qforge/support/gates.hpp"

namespace qforge::lowering {

namespace {

constexpr std::string_view kRuntimeSymbols[] = {
    "qubit_allocate_array", "array_get_element_ptr_1d", "qubit_release_array", "finalize",
    "array_slice", "array_concatenate", "array_get_size_1d",
    "start_ctrl_u_region", "end_ctrl_u_region", "start_adj_u_region", "end_adj_u_region",
    "start_pow_u_region", "end_pow_u_region", "print", "result_get_one", "result_equal",
    "mark_compute", "unmark_compute", "mark_uncompute", "unmark_uncompute",
};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\', out += c;
    else if (c == '\n') out += "\\n";
    else out += c;
  }
  return out + "\"";
}

std::string operand_str(const Operand &a) {
  switch (a.kind) {
    case Operand::Kind::Reg: return type_str(a.type) + " %" + std::to_string(a.reg);
    case Operand::Kind::Int: return type_str(a.type) + " " + std::to_string(a.i);
    case Operand::Kind::Float: return "double " + fmt_double(a.f);
    case Operand::Kind::Str: return "str " + quote(a.s);
  }
  return "?";
}

std::string args_str(const std::vector<Operand> &args, std::size_t from = 0) {
  std::string out;
  for (std::size_t i = from; i < args.size(); ++i) {
    if (i > from) out += ", ";
    out += operand_str(args[i]);
  }
  return out;
}

std::string region_kind(std::string_view symbol, bool &is_start) {
  auto rt = symbol.substr(kRtPrefix.size());
  for (std::string_view prefix : {"start_", "end_"}) {
    if (rt.substr(0, prefix.size()) == prefix && rt.size() > prefix.size() + 9 &&
        rt.substr(rt.size() - 9) == "_u_region") {
      is_start = prefix == "start_";
      return std::string(rt.substr(prefix.size(), rt.size() - prefix.size() - 9));
    }
  }
  return {};
}

}  // namespace

const LirFunction *LirModule::find(std::string_view name) const {
  for (const auto &f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

const Declaration *LirModule::find_declaration(std::string_view symbol) const {
  for (const auto &d : declarations)
    if (d.symbol == symbol) return &d;
  return nullptr;
}

bool is_runtime_symbol(std::string_view symbol) {
  if (symbol.substr(0, kQisPrefix.size()) == kQisPrefix) {
    auto g = symbol.substr(kQisPrefix.size());
    return g == "mz" || g == "reset" || gates::lookup(g) != nullptr;
  }
  if (symbol.substr(0, kRtPrefix.size()) != kRtPrefix) return false;
  auto rt = symbol.substr(kRtPrefix.size());
  return std::find(std::begin(kRuntimeSymbols), std::end(kRuntimeSymbols), rt) !=
         std::end(kRuntimeSymbols);
}

std::string type_str(ir::Type t) {
  using K = ir::Type::Kind;
  switch (t.kind) {
    case K::None: return "void";
    case K::Qubit: return "%Qubit*";
    case K::QubitArray: return "%Array*";
    case K::Result: return "%Result*";
    case K::Bool: return "i1";
    case K::Int: return "i" + std::to_string(t.width);
    case K::Index: return "i64";
    case K::Float: return t.width == 64 ? "double" : t.width == 32 ? "float" : "half";
    case K::Cell: return "ptr";
  }
  return "?";
}

std::string emit_text(const LirModule &module) {
  std::ostringstream os;
  os << "; qasm-forge lowered module\n";
  for (const auto &d : module.declarations) {
    os << "declare " << (d.result ? type_str(*d.result) : "void") << " @" << d.symbol << "(";
    for (std::size_t i = 0; i < d.params.size(); ++i) os << (i ? ", " : "") << type_str(d.params[i]);
    if (d.variadic) os << (d.params.empty() ? "..." : ", ...");
    os << ")\n";
  }
  for (const auto &f : module.functions) {
    os << "\ndefine " << (f.results.empty() ? "void" : type_str(f.results[0])) << " @" << f.name << "(";
    for (std::size_t i = 0; i < f.params.size(); ++i)
      os << (i ? ", " : "") << type_str(f.reg_types[f.params[i]]) << " %" << f.params[i];
    os << ") {\n";
    for (const auto &b : f.blocks) {
      os << b.label << ":\n";
      for (const auto &in : b.insts) {
        os << "  ";
        if (in.dst) os << "%" << *in.dst << " = ";
        switch (in.op) {
          case Opcode::Const: os << "const " << operand_str(in.args.at(0)); break;
          case Opcode::Arith:
            os << in.name;
            if (!in.detail.empty()) os << "." << in.detail;
            os << " " << type_str(in.type) << " " << args_str(in.args);
            break;
          case Opcode::Alloca: os << "alloca " << type_str(in.type) << ", " << in.count; break;
          case Opcode::Load: os << "load " << type_str(in.type) << ", " << args_str(in.args); break;
          case Opcode::Store: os << "store " << args_str(in.args); break;
          case Opcode::Call:
            os << "call " << (in.dst ? type_str(in.type) : "void") << " @" << in.name << "("
               << args_str(in.args) << ")";
            break;
          case Opcode::Br: os << "br ^" << f.blocks.at(in.target).label; break;
          case Opcode::CondBr:
            os << "cond_br " << operand_str(in.args.at(0)) << ", ^" << f.blocks.at(in.target).label
               << ", ^" << f.blocks.at(in.target_else).label;
            break;
          case Opcode::Ret: os << "ret " << (in.args.empty() ? "void" : args_str(in.args)); break;
        }
        os << "\n";
      }
    }
    os << "}\n";
  }
  return os.str();
}

std::vector<std::string> check_region_balance(const LirModule &module) {
  std::vector<std::string> errors;
  for (const auto &f : module.functions) {
    if (f.blocks.empty()) continue;
    std::vector<std::optional<std::vector<std::string>>> entry_state(f.blocks.size());
    std::vector<std::size_t> work{0};
    entry_state[0] = std::vector<std::string>{};
    auto reach = [&](std::size_t target, const std::vector<std::string> &state) {
      if (!entry_state[target]) {
        entry_state[target] = state;
        work.push_back(target);
      } else if (*entry_state[target] != state) {
        errors.push_back("@" + f.name + ": block " + f.blocks[target].label +
                         " is reached with different open regions");
      }
    };
    while (!work.empty()) {
      std::size_t bi = work.back();
      work.pop_back();
      auto state = *entry_state[bi];
      for (const auto &in : f.blocks[bi].insts) {
        if (in.op == Opcode::Call && in.name.substr(0, kRtPrefix.size()) == kRtPrefix) {
          bool is_start = false;
          auto kind = region_kind(in.name, is_start);
          if (kind.empty()) continue;
          if (is_start) {
            state.push_back(kind);
          } else if (state.empty() || state.back() != kind) {
            errors.push_back("@" + f.name + ": end_" + kind + "_u_region in block " +
                             f.blocks[bi].label + " without a matching start");
          } else {
            state.pop_back();
          }
        } else if (in.op == Opcode::Br) {
          reach(in.target, state);
        } else if (in.op == Opcode::CondBr) {
          reach(in.target, state);
          reach(in.target_else, state);
        } else if (in.op == Opcode::Ret && !state.empty()) {
          errors.push_back("@" + f.name + ": returns with an open " + state.back() + " region");
        }
      }
    }
  }
  return errors;
}

std::vector<std::string> check_module(const LirModule &module) {
  std::vector<std::string> errors;
  auto is_term = [](Opcode op) { return op == Opcode::Br || op == Opcode::CondBr || op == Opcode::Ret; };
  for (const auto &f : module.functions) {
    if (f.blocks.empty()) errors.push_back("@" + f.name + " has no blocks");
    for (const auto &b : f.blocks) {
      if (b.insts.empty() || !is_term(b.insts.back().op))
        errors.push_back("@" + f.name + ": block " + b.label + " lacks a terminator");
      for (std::size_t i = 0; i < b.insts.size(); ++i) {
        const auto &in = b.insts[i];
        if (is_term(in.op) && i + 1 != b.insts.size())
          errors.push_back("@" + f.name + ": terminator in the middle of block " + b.label);
        if ((in.op == Opcode::Br || in.op == Opcode::CondBr) &&
            (in.target >= f.blocks.size() || in.target_else >= f.blocks.size()))
          errors.push_back("@" + f.name + ": branch to a missing block");
        for (const auto &a : in.args)
          if (a.kind == Operand::Kind::Reg && a.reg >= f.reg_types.size())
            errors.push_back("@" + f.name + ": use of undefined register %" + std::to_string(a.reg));
        if (in.op == Opcode::Call) {
          if (const auto *callee = module.find(in.name)) {
            if (callee->params.size() != in.args.size())
              errors.push_back("@" + f.name + ": wrong argument count for @" + in.name);
          } else if (!module.find_declaration(in.name)) {
            errors.push_back("@" + f.name + ": call to undeclared @" + in.name);
          }
        }
      }
    }
  }
  return errors;
}

}  // namespace qforge::lowering
