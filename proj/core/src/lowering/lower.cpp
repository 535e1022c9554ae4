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

#include "qforge/lowering/lower.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "qforge/ir/fold.hpp"

namespace qforge::lowering {

namespace {

using ir::Operation;
using ir::Region;
using ir::Type;
using ir::ValueId;

std::string rt(std::string_view name) { return std::string(kRtPrefix) + std::string(name); }
std::string qis(std::string_view name) { return std::string(kQisPrefix) + std::string(name); }

using DeclTable = std::map<std::string, Declaration>;

class FunctionLowerer {
 public:
  FunctionLowerer(const ir::Module &module, const ir::Function &fn, LirFunction &out, DeclTable &decls)
      : module_(module), fn_(fn), out_(out), decls_(decls) {}

  void run() {
    out_.name = fn_.name;
    out_.results = fn_.result_types;
    for (ValueId p : fn_.body.args) {
      Reg r = out_.new_reg(fn_.type(p));
      out_.params.push_back(r);
      vals_[p.raw] = r;
    }
    cur_ = new_block("entry");
    lower_region(fn_.body);
  }

 private:
  // ---- emission ------------------------------------------------------------

  std::size_t new_block(std::string label = {}) {
    if (label.empty()) label = "bb" + std::to_string(out_.blocks.size());
    out_.blocks.push_back({std::move(label), {}});
    return out_.blocks.size() - 1;
  }

  bool terminated() const {
    const auto &insts = out_.blocks[cur_].insts;
    if (insts.empty()) return false;
    auto op = insts.back().op;
    return op == Opcode::Br || op == Opcode::CondBr || op == Opcode::Ret;
  }

  Inst &emit(Inst in) {
    out_.blocks[cur_].insts.push_back(std::move(in));
    return out_.blocks[cur_].insts.back();
  }

  void br(std::size_t target) {
    Inst in;
    in.op = Opcode::Br;
    in.target = target;
    emit(std::move(in));
  }

  void cond_br(Operand cond, std::size_t then_b, std::size_t else_b) {
    Inst in;
    in.op = Opcode::CondBr;
    in.args = {std::move(cond)};
    in.target = then_b;
    in.target_else = else_b;
    emit(std::move(in));
  }

  std::optional<Reg> call(const std::string &symbol, std::vector<Operand> args,
                          std::optional<Type> result = std::nullopt, bool variadic = false) {
    if (!module_.find(symbol) || module_.find(symbol)->is_declaration) {
      auto it = decls_.find(symbol);
      if (it == decls_.end()) {
        Declaration d{symbol, {}, result, variadic};
        if (const auto *ext = module_.find(symbol)) {
          d.params = ext->decl_param_types;
        } else if (!variadic) {
          for (const auto &a : args) d.params.push_back(a.type);
        }
        decls_.emplace(symbol, std::move(d));
      }
    }
    Inst in;
    in.op = Opcode::Call;
    in.name = symbol;
    in.args = std::move(args);
    std::optional<Reg> dst;
    if (result) {
      dst = out_.new_reg(*result);
      in.dst = dst;
      in.type = *result;
    }
    emit(std::move(in));
    return dst;
  }

  Reg arith(std::string name, std::string detail, Type type, std::vector<Operand> args) {
    Inst in;
    in.op = Opcode::Arith;
    in.name = std::move(name);
    in.detail = std::move(detail);
    in.type = type;
    in.args = std::move(args);
    Reg r = out_.new_reg(type);
    in.dst = r;
    emit(std::move(in));
    return r;
  }

  Reg alloca_cell(Type element, std::int64_t count) {
    Inst in;
    in.op = Opcode::Alloca;
    in.type = element;
    in.count = count;
    Reg r = out_.new_reg(Type::cell(element, count));
    in.dst = r;
    emit(std::move(in));
    return r;
  }

  Reg load(Reg cell, Type element, std::optional<Operand> index = std::nullopt) {
    Inst in;
    in.op = Opcode::Load;
    in.type = element;
    in.args = {Operand::of_reg(cell, out_.reg_types[cell])};
    if (index) in.args.push_back(*index);
    Reg r = out_.new_reg(element);
    in.dst = r;
    emit(std::move(in));
    return r;
  }

  void store(Operand value, Reg cell, std::optional<Operand> index = std::nullopt) {
    Inst in;
    in.op = Opcode::Store;
    in.args = {std::move(value), Operand::of_reg(cell, out_.reg_types[cell])};
    if (index) in.args.push_back(*index);
    emit(std::move(in));
  }

  // ---- values --------------------------------------------------------------

  static Operand immediate(const symtab::ConstValue &v, Type t) {
    if (t.is_float()) {
      Operand o = Operand::of_float(v.as_double());
      o.type = t;
      return o;
    }
    return Operand::of_int(v.is_bool() ? (v.b ? 1 : 0) : v.i, t);
  }

  /// Register or, for constants, an immediate.
  Operand arg(ValueId v) {
    Type t = fn_.type(v);
    if (const Operation *d = fn_.def(v); d && d->name == ir::op::kConstant)
      return immediate(ir::constant_value(*d, t), t);
    auto it = vals_.find(v.raw);
    if (it == vals_.end()) throw InternalError("lowering: value used before definition in @" + fn_.name);
    return Operand::of_reg(it->second, out_.reg_types[it->second]);
  }

  Reg reg(ValueId v) {
    Operand o = arg(v);
    if (o.kind == Operand::Kind::Reg) return o.reg;
    // Constant where a register is required (handles never are; this covers cells and arrays).
    throw InternalError("lowering: expected a register operand in @" + fn_.name);
  }

  void bind(ValueId v, Reg r) { vals_[v.raw] = r; }

  static std::optional<std::int64_t> const_of(const ir::Function &fn, ValueId v) {
    const Operation *d = fn.def(v);
    if (!d || d->name != ir::op::kConstant) return std::nullopt;
    return ir::constant_value(*d, fn.type(v)).as_int();
  }

  // ---- segments --------------------------------------------------------------

  void set_segment(const std::string &s) {
    if (s == seg_) return;
    if (!seg_.empty()) call(rt("unmark_" + seg_), {});
    if (!s.empty()) call(rt("mark_" + s), {});
    seg_ = s;
  }

  static bool has_effect(const Operation &op) {
    const auto &n = op.name;
    return ir::is_gate(op) || n == ir::op::kMeasure || n == ir::op::kReset || n == ir::op::kCall ||
           ir::is_region_op(op);
  }

  // ---- regions ---------------------------------------------------------------

  void lower_region(const Region &region) {
    std::string entry = seg_;
    for (const auto &op : region.ops) {
      if (op->erased) continue;
      if (terminated()) break;
      if (has_effect(*op)) set_segment(ir::segment_of(*op));
      lower_op(*op);
    }
    if (!terminated()) set_segment(entry);
  }

  /// Emits `body(index)` for every element of `array`, in descending order when `reverse`.
  template <typename Body>
  void for_each_element(Reg array, std::int64_t size, bool reverse, Body body) {
    if (size >= 0) {
      for (std::int64_t k = 0; k < size; ++k) body(Operand::of_int(reverse ? size - 1 - k : k));
      return;
    }
    Reg n = *call(rt("array_get_size_1d"), {Operand::of_reg(array, Type::qarray())}, Type::int_(64));
    Operand start = Operand::of_int(0), limit = Operand::of_reg(n, Type::int_(64));
    if (reverse) {
      start = Operand::of_reg(arith("arith.sub", "", Type::int_(64), {limit, Operand::of_int(1)}), Type::int_(64));
      limit = Operand::of_int(-1);
    }
    counted_loop(start, limit, reverse ? -1 : 1, std::nullopt, [&](Operand idx) { body(idx); });
  }

  /// Header/body/exit loop over an induction cell. `step` is a literal unless `dyn_step` is set.
  template <typename Body>
  void counted_loop(Operand lb, Operand ub, std::int64_t step, std::optional<Operand> dyn_step, Body body) {
    const Type idx = Type::index();
    Reg cell = alloca_cell(idx, 1);
    store(lb, cell);
    std::size_t header = new_block(), body_b = new_block(), exit_b = new_block();
    br(header);
    cur_ = header;
    Reg i = load(cell, idx);
    Operand iv = Operand::of_reg(i, idx);
    Operand cond;
    if (!dyn_step) {
      cond = Operand::of_reg(arith(std::string(ir::op::kCmp), step > 0 ? "lt" : "gt", Type::i1(), {iv, ub}),
                             Type::i1());
    } else {
      // (step > 0 && i < ub) || (step < 0 && i > ub)
      auto b = [&](Reg r) { return Operand::of_reg(r, Type::i1()); };
      Operand zero = Operand::of_int(0, idx);
      Reg up = arith(std::string(ir::op::kCmp), "gt", Type::i1(), {*dyn_step, zero});
      Reg down = arith(std::string(ir::op::kCmp), "lt", Type::i1(), {*dyn_step, zero});
      Reg lt = arith(std::string(ir::op::kCmp), "lt", Type::i1(), {iv, ub});
      Reg gt = arith(std::string(ir::op::kCmp), "gt", Type::i1(), {iv, ub});
      Reg a = arith("arith.and", "", Type::i1(), {b(up), b(lt)});
      Reg c = arith("arith.and", "", Type::i1(), {b(down), b(gt)});
      cond = b(arith("arith.or", "", Type::i1(), {b(a), b(c)}));
    }
    cond_br(cond, body_b, exit_b);
    cur_ = body_b;
    body(iv);
    if (!terminated()) {
      Reg cur = load(cell, idx);
      Operand inc = dyn_step ? *dyn_step : Operand::of_int(step, idx);
      Reg next = arith("arith.add", "", idx, {Operand::of_reg(cur, idx), inc});
      store(Operand::of_reg(next, idx), cell);
      br(header);
    }
    cur_ = exit_b;
  }

  // ---- ops -------------------------------------------------------------------

  void lower_gate(const Operation &op) {
    std::string g = ir::gate_name(op);
    std::vector<Operand> params;
    if (const auto *angles = ir::gate_angles(op)) {
      for (double a : *angles) params.push_back(Operand::of_float(a));
    } else {
      for (ValueId p : ir::gate_param_operands(op)) params.push_back(arg(p));
    }
    if (ir::is_broadcast(op)) {
      Reg array = reg(op.operand(0));
      bool reverse = op.bool_attr("reverse").value_or(false);
      for_each_element(array, fn_.type(op.operand(0)).size, reverse, [&](Operand idx) {
        Reg q = element(array, idx);
        auto args = params;
        args.push_back(Operand::of_reg(q, Type::qubit()));
        call(qis(g), std::move(args));
      });
      return;
    }
    std::size_t nq = ir::gate_qubit_count(op);
    auto args = params;
    for (std::size_t i = 0; i < nq; ++i) {
      Reg h = reg(op.operand(i));
      args.push_back(Operand::of_reg(h, Type::qubit()));
      bind(op.results.at(i), h);
    }
    call(qis(g), std::move(args));
  }

  Reg element(Reg array, Operand idx) {
    if (idx.kind == Operand::Kind::Reg || idx.type.is_index()) idx.type = Type::int_(64);
    return *call(rt("array_get_element_ptr_1d"), {Operand::of_reg(array, Type::qarray()), idx}, Type::qubit());
  }

  void lower_measure(const Operation &op) {
    Reg q = reg(op.operand(0));
    Reg r = *call(qis("mz"), {Operand::of_reg(q, Type::qubit())}, Type::result());
    Reg one = *call(rt("result_get_one"), {}, Type::result());
    Reg b = *call(rt("result_equal"), {Operand::of_reg(r, Type::result()), Operand::of_reg(one, Type::result())},
                  Type::i1());
    bind(op.results.at(0), b);
    bind(op.results.at(1), q);
  }

  void lower_reset(const Operation &op) {
    ValueId target = op.operand(0);
    if (fn_.type(target).is_qubit()) {
      Reg q = reg(target);
      call(qis("reset"), {Operand::of_reg(q, Type::qubit())});
      bind(op.result(), q);
      return;
    }
    Reg array = reg(target);
    for_each_element(array, fn_.type(target).size, false, [&](Operand idx) {
      call(qis("reset"), {Operand::of_reg(element(array, idx), Type::qubit())});
    });
  }

  static Operand as_i64(Operand o) {
    if (o.kind == Operand::Kind::Int && (o.type.is_index() || o.type.is_int())) o.type = Type::int_(64);
    return o;
  }

  Operand to_i64(ValueId v) {
    Operand o = arg(v);
    Type t = fn_.type(v);
    if (o.kind != Operand::Kind::Reg) return as_i64(o);
    if (t.is_index() || (t.is_int() && t.width == 64)) {
      o.type = Type::int_(64);
      return o;
    }
    return Operand::of_reg(arith(std::string(ir::op::kCast), "", Type::int_(64), {o}), Type::int_(64));
  }

  void lower_for(const Operation &op) {
    Operand lb = arg(op.operand(0)), ub = arg(op.operand(1));
    auto step = const_of(fn_, op.operand(2));
    std::optional<Operand> dyn;
    if (!step) dyn = arg(op.operand(2));
    const Region &body = op.region(0);
    counted_loop(lb, ub, step.value_or(1), dyn, [&](Operand iv) {
      bind(body.args.at(0), iv.reg);
      lower_region(body);
    });
  }

  void lower_while(const Operation &op) {
    std::size_t cond_b = new_block(), body_b = new_block(), exit_b = new_block();
    br(cond_b);
    cur_ = cond_b;
    const Region &cond = op.region(0);
    std::string entry = seg_;
    const Operation *condition = nullptr;
    for (const auto &c : cond.ops) {
      if (c->erased) continue;
      if (c->name == ir::op::kCondition) {
        condition = c.get();
        break;
      }
      if (has_effect(*c)) set_segment(ir::segment_of(*c));
      lower_op(*c);
    }
    if (!condition) throw InternalError("lowering: while condition region lacks scf.condition");
    set_segment(entry);
    cond_br(arg(condition->operand(0)), body_b, exit_b);
    cur_ = body_b;
    lower_region(op.region(1));
    if (!terminated()) br(cond_b);
    cur_ = exit_b;
  }

  void lower_if(const Operation &op) {
    Operand cond = arg(op.operand(0));
    std::size_t then_b = new_block(), else_b = new_block(), merge = new_block();
    cond_br(cond, then_b, else_b);
    cur_ = then_b;
    lower_region(op.region(0));
    if (!terminated()) br(merge);
    cur_ = else_b;
    lower_region(op.region(1));
    if (!terminated()) br(merge);
    cur_ = merge;
  }

  void lower_modifier(const Operation &op) {
    const auto &n = op.name;
    std::string kind = n == ir::op::kCtrlRegion ? "ctrl" : n == ir::op::kAdjRegion ? "adj" : "pow";
    call(rt("start_" + kind + "_u_region"), {});
    lower_region(op.region(0));
    std::vector<Operand> end_args;
    if (kind == "ctrl") end_args.push_back(Operand::of_reg(reg(op.operand(0)), Type::qubit()));
    if (kind == "pow") end_args.push_back(to_i64(op.operand(0)));
    call(rt("end_" + kind + "_u_region"), std::move(end_args));
  }

  void lower_print(const Operation &op) {
    std::vector<Operand> args;
    std::size_t next = 0;
    if (const auto *pieces = op.strs_attr("pieces")) {
      for (const auto &p : *pieces) {
        if (p == "v") args.push_back(arg(op.operand(next++)));
        else args.push_back(Operand::of_str(p.substr(2)));
      }
    }
    for (; next < op.num_operands(); ++next) args.push_back(arg(op.operand(next)));
    call(rt("print"), std::move(args), std::nullopt, true);
  }

  void lower_op(const Operation &op) {
    namespace O = ir::op;
    const auto &n = op.name;
    if (ir::is_gate(op)) return lower_gate(op);
    if (n == O::kConstant) return;  // materialized as immediates at each use
    if (ir::is_arith_binary(n) || n == O::kCmp || n == "arith.neg" || n == "arith.not" || n == O::kCast ||
        n == O::kMathCall) {
      std::vector<Operand> args;
      for (ValueId v : op.operands()) args.push_back(arg(v));
      std::string detail;
      if (n == O::kCmp) detail = op.str_attr("pred").value_or("eq");
      if (n == O::kMathCall) detail = op.str_attr("fn").value_or("");
      return bind(op.result(), arith(n, detail, fn_.type(op.result()), std::move(args)));
    }
    if (n == O::kAlloca) {
      Type t = fn_.type(op.result());
      return bind(op.result(), alloca_cell(t.element(), t.size));
    }
    if (n == O::kLoad) {
      std::optional<Operand> idx;
      if (op.num_operands() == 2) idx = arg(op.operand(1));
      return bind(op.result(), load(reg(op.operand(0)), fn_.type(op.result()), idx));
    }
    if (n == O::kStore) {
      std::optional<Operand> idx;
      if (op.num_operands() == 3) idx = arg(op.operand(2));
      return store(arg(op.operand(0)), reg(op.operand(1)), idx);
    }
    if (n == O::kGlobalGet) {
      const ir::Global *g = module_.find_global(op.str_attr("name").value_or(""));
      if (!g) throw InternalError("lowering: unknown global");
      Type t = fn_.type(op.result());
      symtab::ConstValue v = std::holds_alternative<double>(g->value)
                                 ? symtab::ConstValue::of_float(std::get<double>(g->value))
                                 : symtab::ConstValue::of_int(std::get<std::int64_t>(g->value));
      Inst in;
      in.op = Opcode::Const;
      in.type = t;
      in.args = {immediate(*ir::coerce(v, t), t)};
      Reg r = out_.new_reg(t);
      in.dst = r;
      emit(std::move(in));
      return bind(op.result(), r);
    }
    if (n == O::kCall) {
      std::vector<Operand> args;
      for (ValueId v : op.operands()) args.push_back(arg(v));
      std::optional<Type> result;
      if (!op.results.empty()) result = fn_.type(op.result());
      auto r = call(op.str_attr("callee").value_or(""), std::move(args), result);
      if (r) bind(op.result(), *r);
      return;
    }
    if (n == O::kReturn) {
      set_segment("");
      if (fn_.name == "main") call(rt("finalize"), {});
      Inst in;
      in.op = Opcode::Ret;
      for (ValueId v : op.operands()) in.args.push_back(arg(v));
      emit(std::move(in));
      return;
    }
    if (n == O::kIf) return lower_if(op);
    if (n == O::kFor) return lower_for(op);
    if (n == O::kWhile) return lower_while(op);
    if (ir::is_modifier_region(op)) return lower_modifier(op);
    if (n == O::kQalloc) {
      auto size = op.int_attr("size").value_or(0);
      return bind(op.result(), *call(rt("qubit_allocate_array"), {Operand::of_int(size)}, fn_.type(op.result())));
    }
    if (n == O::kDealloc) {
      call(rt("qubit_release_array"), {Operand::of_reg(reg(op.operand(0)), Type::qarray())});
      return;
    }
    if (n == O::kExtract) {
      Reg array = reg(op.operand(0));
      return bind(op.result(), element(array, to_i64(op.operand(1))));
    }
    if (n == O::kSlice) {
      std::vector<Operand> args{Operand::of_reg(reg(op.operand(0)), Type::qarray())};
      for (std::size_t i = 1; i < 4; ++i) args.push_back(to_i64(op.operand(i)));
      return bind(op.result(), *call(rt("array_slice"), std::move(args), Type::qarray()));
    }
    if (n == O::kConcat) {
      Reg acc = reg(op.operand(0));
      for (std::size_t i = 1; i < op.num_operands(); ++i)
        acc = *call(rt("array_concatenate"),
                    {Operand::of_reg(acc, Type::qarray()), Operand::of_reg(reg(op.operand(i)), Type::qarray())},
                    Type::qarray());
      return bind(op.result(), acc);
    }
    if (n == O::kMeasure) return lower_measure(op);
    if (n == O::kReset) return lower_reset(op);
    if (n == O::kPrint) return lower_print(op);
    throw InternalError("lowering: unlowered opcode '" + n + "'");
  }

  const ir::Module &module_;
  const ir::Function &fn_;
  LirFunction &out_;
  DeclTable &decls_;
  std::unordered_map<std::uint32_t, Reg> vals_;
  std::size_t cur_ = 0;
  std::string seg_;
};

}  // namespace

LirModule lower_to_cfg(const ir::Module &module) {
  LirModule out;
  DeclTable decls;
  for (const auto &fn : module.functions) {
    if (fn->is_declaration) continue;
    out.functions.emplace_back();
    FunctionLowerer(module, *fn, out.functions.back(), decls).run();
  }
  for (auto &[name, d] : decls) out.declarations.push_back(std::move(d));
  return out;
}

}  // namespace qforge::lowering
