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

#include "qforge/runtime/interpreter.hpp"

#include <cstdio>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "qforge/ir/fold.hpp"
#include "qforge/runtime/estimator.hpp"
#include "qforge/runtime/statevector.hpp"
#include "qforge/support/diagnostic.hpp"

namespace qforge::runtime {

namespace {

using lowering::Inst;
using lowering::LirFunction;
using lowering::LirModule;
using lowering::Opcode;
using lowering::Operand;
using symtab::ConstValue;

/// Scalars live in `i` (ints, bools, handles, cell slots) or `f` (floats).
struct Val {
  std::int64_t i = 0;
  double f = 0.0;
};

enum class Builtin {
  None, Gate, Mz, Reset, Allocate, Element, Release, Finalize, Slice, Concat, Size,
  StartCtrl, EndCtrl, StartAdj, EndAdj, StartPow, EndPow, Print, ResultOne, ResultEqual,
  MarkCompute, UnmarkCompute, MarkUncompute, UnmarkUncompute,
};

Builtin classify(const std::string &symbol) {
  static const std::unordered_map<std::string, Builtin> table = {
      {"qubit_allocate_array", Builtin::Allocate}, {"array_get_element_ptr_1d", Builtin::Element},
      {"qubit_release_array", Builtin::Release},   {"finalize", Builtin::Finalize},
      {"array_slice", Builtin::Slice},             {"array_concatenate", Builtin::Concat},
      {"array_get_size_1d", Builtin::Size},        {"start_ctrl_u_region", Builtin::StartCtrl},
      {"end_ctrl_u_region", Builtin::EndCtrl},     {"start_adj_u_region", Builtin::StartAdj},
      {"end_adj_u_region", Builtin::EndAdj},       {"start_pow_u_region", Builtin::StartPow},
      {"end_pow_u_region", Builtin::EndPow},       {"print", Builtin::Print},
      {"result_get_one", Builtin::ResultOne},      {"result_equal", Builtin::ResultEqual},
      {"mark_compute", Builtin::MarkCompute},      {"unmark_compute", Builtin::UnmarkCompute},
      {"mark_uncompute", Builtin::MarkUncompute},  {"unmark_uncompute", Builtin::UnmarkUncompute},
  };
  auto qis = lowering::kQisPrefix, rt = lowering::kRtPrefix;
  if (symbol.compare(0, qis.size(), qis) == 0) {
    auto g = symbol.substr(qis.size());
    if (g == "mz") return Builtin::Mz;
    if (g == "reset") return Builtin::Reset;
    return Builtin::Gate;
  }
  if (symbol.compare(0, rt.size(), rt) == 0) {
    auto it = table.find(symbol.substr(rt.size()));
    if (it != table.end()) return it->second;
  }
  return Builtin::None;
}

// Result handles: measurement outcomes are stored directly, 0 or 1.
constexpr std::int64_t kResultOne = 1;

std::string format_value(const Val &v, ir::Type t) {
  if (t.is_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v.f);
    return buf;
  }
  if (t.is_bool()) return v.i ? "true" : "false";
  return std::to_string(v.i);
}

class Interpreter {
 public:
  Interpreter(const LirModule &module, Runtime &rt) : module_(module), rt_(rt) {
    for (std::size_t i = 0; i < module.functions.size(); ++i) fn_index_[module.functions[i].name] = i;
  }

  void run_main() {
    auto it = fn_index_.find("main");
    if (it == fn_index_.end()) throw RuntimeError("program has no @main");
    call_function(module_.functions[it->second], {}, 0);
  }

 private:
  struct Frame {
    std::vector<Val> regs;
    std::vector<std::vector<Val>> cells;
  };

  Val read(const Frame &fr, const Operand &o) const {
    switch (o.kind) {
      case Operand::Kind::Reg: return fr.regs.at(o.reg);
      case Operand::Kind::Int: return {o.i, 0.0};
      case Operand::Kind::Float: return {0, o.f};
      case Operand::Kind::Str: break;
    }
    throw RuntimeError("string used as a value");
  }

  static ConstValue to_const(const Val &v, ir::Type t) {
    if (t.is_float()) return ConstValue::of_float(v.f);
    if (t.is_bool()) return ConstValue::of_bool(v.i != 0);
    return ConstValue::of_int(v.i);
  }

  static Val from_const(const ConstValue &c, ir::Type t) {
    if (t.is_float()) return {0, c.as_double()};
    if (c.is_bool()) return {c.b ? 1 : 0, 0.0};
    return {c.i, 0.0};
  }

  std::vector<Val> &cell(Frame &fr, const Operand &o) {
    Val v = read(fr, o);
    if (v.i < 0 || static_cast<std::size_t>(v.i) >= fr.cells.size()) throw RuntimeError("invalid cell");
    return fr.cells[static_cast<std::size_t>(v.i)];
  }

  std::size_t slot(Frame &fr, const Inst &in, std::size_t arg, std::size_t size) {
    if (in.args.size() <= arg) return 0;
    std::int64_t k = read(fr, in.args[arg]).i;
    if (k < 0 || static_cast<std::size_t>(k) >= size)
      throw RuntimeError("index " + std::to_string(k) + " out of range for a register of size " + std::to_string(size));
    return static_cast<std::size_t>(k);
  }

  std::vector<Val> call_function(const LirFunction &f, const std::vector<Val> &args, int depth) {
    if (depth > 256) throw RuntimeError("call depth limit exceeded");
    Frame fr;
    fr.regs.resize(f.reg_types.size());
    for (std::size_t i = 0; i < f.params.size() && i < args.size(); ++i) fr.regs[f.params[i]] = args[i];
    std::size_t b = 0;
    while (true) {
      const auto &block = f.blocks.at(b);
      bool jumped = false;
      for (const Inst &in : block.insts) {
        switch (in.op) {
          case Opcode::Const: fr.regs[*in.dst] = read(fr, in.args.at(0)); break;
          case Opcode::Arith: arith(fr, in); break;
          case Opcode::Alloca:
            fr.cells.emplace_back(static_cast<std::size_t>(std::max<std::int64_t>(in.count, 1)));
            fr.regs[*in.dst] = {static_cast<std::int64_t>(fr.cells.size() - 1), 0.0};
            break;
          case Opcode::Load: {
            auto &c = cell(fr, in.args.at(0));
            fr.regs[*in.dst] = c[slot(fr, in, 1, c.size())];
            break;
          }
          case Opcode::Store: {
            auto &c = cell(fr, in.args.at(1));
            c[slot(fr, in, 2, c.size())] = read(fr, in.args.at(0));
            break;
          }
          case Opcode::Call: call(fr, in, depth); break;
          case Opcode::Br:
            b = in.target;
            jumped = true;
            break;
          case Opcode::CondBr:
            b = read(fr, in.args.at(0)).i ? in.target : in.target_else;
            jumped = true;
            break;
          case Opcode::Ret: {
            std::vector<Val> out;
            for (const auto &a : in.args) out.push_back(read(fr, a));
            return out;
          }
        }
        if (jumped) break;
      }
      if (!jumped) throw RuntimeError("fell off the end of block " + block.label);
    }
  }

  void arith(Frame &fr, const Inst &in) {
    ConstValue ops[2];
    std::size_t n = std::min<std::size_t>(in.args.size(), 2);
    for (std::size_t i = 0; i < n; ++i) ops[i] = to_const(read(fr, in.args[i]), in.args[i].type);
    std::optional<ConstValue> r;
    try {
      r = ir::evaluate(in.name, in.detail, std::span<const ConstValue>(ops, n), in.type);
    } catch (const CompileError &e) {
      throw RuntimeError(e.diagnostic().message);
    }
    if (!r) throw RuntimeError("cannot evaluate " + in.name);
    fr.regs[*in.dst] = from_const(*r, in.type);
  }

  void call(Frame &fr, const Inst &in, int depth) {
    auto arg = [&](std::size_t i) { return read(fr, in.args.at(i)); };
    auto set = [&](Val v) {
      if (in.dst) fr.regs[*in.dst] = v;
    };
    auto h = [](std::int64_t v) { return static_cast<std::uint64_t>(v); };
    Builtin kind = classify(in.name);
    switch (kind) {
      case Builtin::None: {
        auto it = fn_index_.find(in.name);
        if (it == fn_index_.end()) throw RuntimeError("call to unresolved external function @" + in.name);
        std::vector<Val> args;
        for (const auto &a : in.args) args.push_back(read(fr, a));
        auto out = call_function(module_.functions[it->second], args, depth + 1);
        if (in.dst && !out.empty()) set(out[0]);
        return;
      }
      case Builtin::Gate: {
        std::vector<QubitId> qubits;
        std::vector<double> params;
        for (const auto &a : in.args) {
          if (a.type.is_qubit()) qubits.push_back(h(read(fr, a).i));
          else params.push_back(a.type.is_float() ? read(fr, a).f : static_cast<double>(read(fr, a).i));
        }
        rt_.gate(std::string_view(in.name).substr(lowering::kQisPrefix.size()), std::move(qubits), std::move(params));
        return;
      }
      case Builtin::Mz: return set({rt_.measure(h(arg(0).i)) ? kResultOne : 0, 0.0});
      case Builtin::Reset: return rt_.reset(h(arg(0).i));
      case Builtin::Allocate: return set({static_cast<std::int64_t>(rt_.allocate_array(arg(0).i)), 0.0});
      case Builtin::Element: return set({static_cast<std::int64_t>(rt_.element(h(arg(0).i), arg(1).i)), 0.0});
      case Builtin::Release: return rt_.release_array(h(arg(0).i));
      case Builtin::Finalize: return rt_.finalize();
      case Builtin::Slice:
        return set({static_cast<std::int64_t>(rt_.slice(h(arg(0).i), arg(1).i, arg(2).i, arg(3).i)), 0.0});
      case Builtin::Concat: return set({static_cast<std::int64_t>(rt_.concat(h(arg(0).i), h(arg(1).i))), 0.0});
      case Builtin::Size: return set({rt_.size(h(arg(0).i)), 0.0});
      case Builtin::StartCtrl: return rt_.start_region(RegionKind::Ctrl);
      case Builtin::EndCtrl: return rt_.end_ctrl_region(h(arg(0).i));
      case Builtin::StartAdj: return rt_.start_region(RegionKind::Adj);
      case Builtin::EndAdj: return rt_.end_adj_region();
      case Builtin::StartPow: return rt_.start_region(RegionKind::Pow);
      case Builtin::EndPow: return rt_.end_pow_region(arg(0).i);
      case Builtin::Print: {
        std::string line;
        for (const auto &a : in.args)
          line += a.kind == Operand::Kind::Str ? a.s : format_value(read(fr, a), a.type);
        return rt_.print(line);
      }
      case Builtin::ResultOne: return set({kResultOne, 0.0});
      case Builtin::ResultEqual: return set({arg(0).i == arg(1).i ? 1 : 0, 0.0});
      case Builtin::MarkCompute: return rt_.mark(Segment::Compute);
      case Builtin::UnmarkCompute: return rt_.unmark(Segment::Compute);
      case Builtin::MarkUncompute: return rt_.mark(Segment::Uncompute);
      case Builtin::UnmarkUncompute: return rt_.unmark(Segment::Uncompute);
    }
  }

  const LirModule &module_;
  Runtime &rt_;
  std::unordered_map<std::string, std::size_t> fn_index_;
};

}  // namespace

void run_main(const LirModule &module, Runtime &runtime) { Interpreter(module, runtime).run_main(); }

ExecutionResult execute(const LirModule &module, const ExecutionConfig &config) {
  if (config.shots < 1) throw RuntimeError("shots must be at least 1");
  std::unique_ptr<Backend> backend;
  if (config.backend == BackendKind::Statevector)
    backend = std::make_unique<StatevectorBackend>(config.seed, config.qubit_cap);
  else
    backend = std::make_unique<EstimatorBackend>();
  Runtime rt(*backend, RuntimeOptions{config.ccx_cost});
  std::ostringstream out;
  rt.set_output(&out);
  Interpreter interp(module, rt);
  for (std::uint64_t s = 0; s < config.shots; ++s) {
    rt.begin_shot();
    interp.run_main();
  }
  return {rt.stats(), out.str()};
}

}  // namespace qforge::runtime
