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

#include "qforge/ir/builder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qforge/support/gates.hpp"

namespace qforge::ir {

namespace {

using frontend::AstKind;
using frontend::AstNode;
using frontend::Modifier;
using frontend::TypeSpec;
using symtab::ConstValue;
using symtab::QubitSlot;
using symtab::SymbolInfo;
using symtab::SymbolKind;
using symtab::SymbolTable;

[[noreturn]] void fail(const std::string &msg, SourceLocation loc) { throw CompileError(msg, loc); }

Type sem_type(const TypeSpec &spec, SourceLocation loc) {
  using B = TypeSpec::Base;
  switch (spec.base) {
    case B::Bool:
    case B::Bit: return Type::i1();
    case B::Int:
    case B::UInt: return spec.width == 1 ? Type::i1() : Type::int_(spec.width);
    case B::Float: return Type::float_(spec.width);
    default: fail("unsupported type " + frontend::to_string(spec), loc);
  }
}

/// An operand in qubit position, before any IR is emitted for it.
struct QOperand {
  ValueId array;
  bool whole = false;  // array-level operand such as a whole register or a slice
  std::optional<std::int64_t> index;
  ValueId dyn_index;  // valid for a runtime index
  SourceLocation loc;

  bool is_element() const { return !whole; }
};

class Builder {
 public:
  Builder(const AstNode &program, SymbolTable &symbols) : program_(program), st_(symbols) {}

  BuildResult run() {
    BuildResult result;
    module_ = std::make_unique<Module>();
    auto main = std::make_unique<Function>("main");
    fn_ = main.get();
    cur_ = &main->body;
    is_main_ = true;
    fn_scope_depth_ = st_.depth();

    const auto &stmts = program_.children;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
      allow_main_return_ = i + 1 == stmts.size();
      guarded([&] { statement(*stmts[i]); });
    }
    for (auto it = main_allocs_.rbegin(); it != main_allocs_.rend(); ++it)
      emit(op::kDealloc, {*it}, {}, {}, program_.loc);
    fn_->build(main->body, std::string(op::kReturn), {}, {}, {}, program_.loc);
    module_->functions.push_back(std::move(main));

    result.diagnostics = std::move(diags_);
    if (!has_errors(result.diagnostics)) result.module = std::move(module_);
    return result;
  }

 private:
  template <typename F>
  void guarded(F &&f) {
    try {
      f();
    } catch (const CompileError &e) {
      diags_.push_back(e.diagnostic());
    }
  }

  // ---- emission helpers -------------------------------------------------------

  Operation *emit(std::string_view name, std::vector<ValueId> operands, const std::vector<Type> &results,
                  Attributes attrs, SourceLocation loc) {
    if (!segment_.empty()) attrs["segment"] = segment_;
    return fn_->build(*cur_, std::string(name), std::move(operands), results, std::move(attrs), loc);
  }

  ValueId const_int(std::int64_t v, Type t, SourceLocation loc) {
    return emit(op::kConstant, {}, {t}, {{"value", v}}, loc)->result();
  }
  ValueId const_float(double v, SourceLocation loc) {
    return emit(op::kConstant, {}, {Type::f64()}, {{"value", v}}, loc)->result();
  }
  ValueId const_bool(bool v, SourceLocation loc) {
    return emit(op::kConstant, {}, {Type::i1()}, {{"value", v}}, loc)->result();
  }
  ValueId const_value(const ConstValue &c, SourceLocation loc) {
    if (c.is_float()) return const_float(c.f, loc);
    if (c.is_bool()) return const_bool(c.b, loc);
    return const_int(c.i, Type::int_(64), loc);
  }

  Type type_of(ValueId v) const { return fn_->type(v); }

  ValueId cast(ValueId v, Type to, SourceLocation loc) {
    Type from = type_of(v);
    if (from == to) return v;
    if (!from.is_numeric() || !to.is_numeric())
      fail("cannot convert " + from.str() + " to " + to.str(), loc);
    if (to.is_bool()) return to_bool(v, loc);
    return emit(op::kCast, {v}, {to}, {}, loc)->result();
  }

  ValueId to_bool(ValueId v, SourceLocation loc) {
    Type t = type_of(v);
    if (t.is_bool()) return v;
    if (!t.is_numeric()) fail("condition must be numeric", loc);
    ValueId zero = t.is_float() ? const_float(0.0, loc) : const_int(0, t, loc);
    return emit(op::kCmp, {v, zero}, {Type::i1()}, {{"pred", std::string("ne")}}, loc)->result();
  }

  static Type common_type(Type a, Type b) {
    if (a == b) return a;
    if (a.is_float() || b.is_float()) {
      if (a.is_float() && b.is_float()) return Type::float_(std::max(a.width, b.width));
      return Type::f64();
    }
    if (a.is_int() || b.is_int()) {
      if (a.is_index() || b.is_index()) return Type::int_(64);
      int w = std::max(a.is_int() ? a.width : 0, b.is_int() ? b.width : 0);
      return Type::int_(w);
    }
    if (a.is_index() || b.is_index()) return Type::index();
    return Type::i1();
  }

  // ---- symbols -------------------------------------------------------------------

  const SymbolInfo *find_symbol(const std::string &name, SourceLocation loc) {
    const SymbolInfo *s = st_.lookup(name);
    if (!s) return nullptr;
    bool local_kind = s->kind == SymbolKind::Value || s->kind == SymbolKind::Cell ||
                      s->kind == SymbolKind::QubitArray;
    if (local_kind && s->scope_depth < fn_scope_depth_)
      fail("'" + name + "' belongs to an enclosing function and is not visible here", loc);
    return s;
  }

  const SymbolInfo &qubit_symbol(const AstNode &id) {
    const SymbolInfo *s = find_symbol(id.name, id.loc);
    if (!s) fail("use of undeclared identifier '" + id.name + "'", id.loc);
    if (s->kind != SymbolKind::QubitArray)
      fail("'" + id.name + "' is not a qubit; expected a qubit argument", id.loc);
    return *s;
  }

  void declare(SymbolInfo info) {
    std::string name = info.name;
    SourceLocation loc = info.loc;
    if (!st_.declare(std::move(info))) fail("redeclaration of '" + name + "'", loc);
  }

  std::int64_t const_integer(const AstNode &e, const char *what) {
    auto c = st_.eval_const_expr(e);
    if (!c) fail(std::string(what) + " must be a compile-time constant", e.loc);
    auto i = c->as_int();
    if (!i || c->is_float()) fail(std::string(what) + " must be an integer", e.loc);
    return *i;
  }

  // ---- classical expressions ------------------------------------------------------

  ValueId expr(const AstNode &e) {
    switch (e.kind) {
      case AstKind::IntLiteral: return const_int(e.int_value, Type::int_(64), e.loc);
      case AstKind::FloatLiteral: return const_float(e.float_value, e.loc);
      case AstKind::BoolLiteral: return const_bool(e.bool_value, e.loc);
      case AstKind::Identifier: return identifier(e);
      case AstKind::Index: return indexed_load(e);
      case AstKind::Binary: return binary(e);
      case AstKind::Unary: return unary(e);
      case AstKind::Call: return call_expr(e);
      case AstKind::MeasureExpr: return measure_expr(e);
      case AstKind::StringLiteral: fail("string literals are only allowed in print", e.loc);
      default: fail(std::string("unexpected ") + frontend::to_string(e.kind) + " in expression", e.loc);
    }
  }

  ValueId identifier(const AstNode &e) {
    const SymbolInfo *s = find_symbol(e.name, e.loc);
    if (!s) {
      if (e.name == "pi") return const_float(std::numbers::pi, e.loc);
      if (e.name == "tau") return const_float(2 * std::numbers::pi, e.loc);
      if (e.name == "euler") return const_float(std::numbers::e, e.loc);
      fail("use of undeclared identifier '" + e.name + "'", e.loc);
    }
    switch (s->kind) {
      case SymbolKind::Global:
        return emit(op::kGlobalGet, {}, {s->declared_type}, {{"name", s->name}}, e.loc)->result();
      case SymbolKind::Value: return s->value;
      case SymbolKind::Cell: {
        Type t = type_of(s->value);
        if (t.size != 1) fail("register '" + e.name + "' used as a scalar", e.loc);
        return emit(op::kLoad, {s->value}, {t.element()}, {}, e.loc)->result();
      }
      case SymbolKind::QubitArray: fail("qubit '" + e.name + "' used in a classical expression", e.loc);
      case SymbolKind::Function: fail("subroutine '" + e.name + "' used as a value", e.loc);
    }
    fail("bad symbol", e.loc);
  }

  ValueId indexed_load(const AstNode &e) {
    const AstNode *base = e.child(0);
    if (base->kind != AstKind::Identifier) fail("unsupported indexing", e.loc);
    const SymbolInfo *s = find_symbol(base->name, base->loc);
    if (!s) fail("use of undeclared identifier '" + base->name + "'", base->loc);
    if (s->kind != SymbolKind::Cell) fail("'" + base->name + "' cannot be indexed here", e.loc);
    if (e.child(1)->kind == AstKind::Range) fail("register slices are not supported here", e.loc);
    ValueId idx = cell_index(*s, *e.child(1));
    return emit(op::kLoad, {s->value, idx}, {type_of(s->value).element()}, {}, e.loc)->result();
  }

  ValueId cell_index(const SymbolInfo &s, const AstNode &idx) {
    std::int64_t count = type_of(s.value).size;
    if (auto c = st_.eval_const_expr(idx)) {
      auto k = c->as_int();
      if (!k || c->is_float()) fail("index must be an integer", idx.loc);
      std::int64_t v = *k < 0 ? *k + count : *k;
      if (v < 0 || v >= count)
        fail("index " + std::to_string(*k) + " out of range for '" + s.name + "' of size " +
                 std::to_string(count), idx.loc);
      return const_int(v, Type::index(), idx.loc);
    }
    return cast(expr(idx), Type::index(), idx.loc);
  }

  ValueId binary(const AstNode &e) {
    const std::string &o = e.op;
    ValueId a = expr(*e.child(0));
    ValueId b = expr(*e.child(1));
    if (o == "&&" || o == "||") {
      a = to_bool(a, e.loc);
      b = to_bool(b, e.loc);
      return emit(o == "&&" ? "arith.and" : "arith.or", {a, b}, {Type::i1()}, {}, e.loc)->result();
    }
    Type ta = type_of(a), tb = type_of(b);
    if (!ta.is_numeric() || !tb.is_numeric()) fail("operator '" + o + "' needs numeric operands", e.loc);
    Type t = common_type(ta, tb);
    static const std::map<std::string, std::string> cmp = {{"==", "eq"}, {"!=", "ne"}, {"<", "lt"},
                                                           {"<=", "le"}, {">", "gt"},  {">=", "ge"}};
    if (auto it = cmp.find(o); it != cmp.end()) {
      a = cast(a, t, e.loc);
      b = cast(b, t, e.loc);
      return emit(op::kCmp, {a, b}, {Type::i1()}, {{"pred", it->second}}, e.loc)->result();
    }
    static const std::map<std::string, std::string> arith = {
        {"+", "arith.add"}, {"-", "arith.sub"}, {"*", "arith.mul"}, {"/", "arith.div"},
        {"%", "arith.rem"}, {"**", "arith.pow"}, {"&", "arith.and"}, {"|", "arith.or"},
        {"^", "arith.xor"}, {"<<", "arith.shl"}, {">>", "arith.shr"}};
    auto it = arith.find(o);
    if (it == arith.end()) fail("unsupported operator '" + o + "'", e.loc);
    bool bitwise = o == "&" || o == "|" || o == "^" || o == "<<" || o == ">>";
    if (bitwise && t.is_float()) fail("bitwise operator '" + o + "' on a float", e.loc);
    if (t.is_bool() && !bitwise) t = Type::int_(64);
    a = cast(a, t, e.loc);
    b = cast(b, t, e.loc);
    return emit(it->second, {a, b}, {t}, {}, e.loc)->result();
  }

  ValueId unary(const AstNode &e) {
    ValueId a = expr(*e.child(0));
    if (e.op == "!") {
      a = to_bool(a, e.loc);
      return emit("arith.not", {a}, {Type::i1()}, {}, e.loc)->result();
    }
    Type t = type_of(a);
    if (!t.is_numeric()) fail("operator '" + e.op + "' needs a numeric operand", e.loc);
    if (e.op == "~") {
      if (t.is_float()) fail("bitwise operator '~' on a float", e.loc);
      return emit("arith.not", {a}, {t}, {}, e.loc)->result();
    }
    if (t.is_bool()) {
      a = cast(a, Type::int_(64), e.loc);
      t = Type::int_(64);
    }
    return emit("arith.neg", {a}, {t}, {}, e.loc)->result();
  }

  ValueId call_expr(const AstNode &e) {
    if (e.name == "cast") {
      ValueId v = expr(*e.params.at(0));
      return cast(v, sem_type(e.type, e.loc), e.loc);
    }
    const SymbolInfo *s = find_symbol(e.name, e.loc);
    if (!s && symtab::apply_math(e.name, 0.0)) {
      if (e.params.size() != 1 || !e.children.empty())
        fail("'" + e.name + "' takes exactly one argument", e.loc);
      ValueId x = cast(expr(*e.params[0]), Type::f64(), e.loc);
      return emit(op::kMathCall, {x}, {Type::f64()}, {{"fn", e.name}}, e.loc)->result();
    }
    if (!s || s->kind != SymbolKind::Function) fail("call to unknown subroutine '" + e.name + "'", e.loc);
    std::vector<const AstNode *> qargs;
    for (const auto &c : e.children) qargs.push_back(c.get());
    Operation *call = emit_call(e.name, e.params, qargs, e.loc);
    if (call->results.size() != 1) fail("subroutine '" + e.name + "' does not return a value", e.loc);
    return call->result();
  }

  // ---- qubit operands ----------------------------------------------------------------

  QOperand qoperand(const AstNode &e) {
    QOperand q;
    q.loc = e.loc;
    if (e.kind == AstKind::Identifier) {
      const SymbolInfo &s = qubit_symbol(e);
      q.array = s.value;
      if (s.scalar_qubit) q.index = 0;
      else q.whole = true;
      return q;
    }
    if (e.kind == AstKind::Index && e.child(0)->kind == AstKind::Identifier) {
      const SymbolInfo &s = qubit_symbol(*e.child(0));
      const AstNode &idx = *e.child(1);
      if (idx.kind == AstKind::Range) {
        q.array = slice(s.value, idx, e.loc);
        q.whole = true;
        return q;
      }
      q.array = s.value;
      std::int64_t size = type_of(s.value).size;
      if (auto c = st_.eval_const_expr(idx)) {
        auto k = c->as_int();
        if (!k || c->is_float()) fail("qubit index must be an integer", idx.loc);
        std::int64_t v = (*k < 0 && size > 0) ? *k + size : *k;
        if (v < 0 || (size > 0 && v >= size))
          fail("qubit index " + std::to_string(*k) + " out of range for '" + s.name +
                   "' of size " + std::to_string(size), idx.loc);
        q.index = v;
      } else {
        q.dyn_index = cast(expr(idx), Type::index(), idx.loc);
      }
      return q;
    }
    fail("expected a qubit argument", e.loc);
  }

  /// `arr[a:b]` / `arr[a:s:b]`, inclusive of b.
  ValueId slice(ValueId array, const AstNode &range, SourceLocation loc) {
    std::int64_t size = type_of(array).size;
    const AstNode *start = range.child(0), *step = range.child(1), *stop = range.child(2);
    std::optional<std::int64_t> a = start ? std::optional(const_integer_or_none(*start)) : std::optional<std::int64_t>(0);
    std::optional<std::int64_t> s = step ? std::optional(const_integer_or_none(*step)) : std::optional<std::int64_t>(1);
    std::optional<std::int64_t> b;
    if (stop) b = const_integer_or_none(*stop);
    else if (size > 0) b = size - 1;
    bool all_const = a && *a != kNone && s && *s != kNone && b && *b != kNone;
    if (all_const) {
      if (*s == 0) fail("slice step cannot be zero", loc);
      std::vector<QubitSlot> elems;
      bool resolved = true;
      for (std::int64_t i = *a; *s > 0 ? i <= *b : i >= *b; i += *s) {
        if (i < 0 || (size > 0 && i >= size))
          fail("slice index " + std::to_string(i) + " out of range", loc);
        auto slot = st_.resolve(array, i);
        if (!slot) resolved = false;
        else elems.push_back(*slot);
      }
      if (resolved && elems.empty()) fail("empty qubit slice", loc);
      std::int64_t count = resolved ? static_cast<std::int64_t>(elems.size()) : -1;
      ValueId v = emit(op::kSlice,
                       {array, const_int(*a, Type::index(), loc), const_int(*s, Type::index(), loc),
                        const_int(*b, Type::index(), loc)},
                       {Type::qarray(count)}, {}, loc)
                      ->result();
      if (resolved) st_.register_alias(v, std::move(elems));
      else st_.register_opaque(v);
      return v;
    }
    ValueId va = start ? cast(expr(*start), Type::index(), loc) : const_int(0, Type::index(), loc);
    ValueId vs = step ? cast(expr(*step), Type::index(), loc) : const_int(1, Type::index(), loc);
    if (!stop && size < 0) fail("open-ended slice of an array with unknown size", loc);
    ValueId vb = stop ? cast(expr(*stop), Type::index(), loc) : const_int(size - 1, Type::index(), loc);
    ValueId v = emit(op::kSlice, {array, va, vs, vb}, {Type::qarray()}, {}, loc)->result();
    st_.register_opaque(v);
    return v;
  }

  static constexpr std::int64_t kNone = INT64_MIN;
  std::int64_t const_integer_or_none(const AstNode &e) {
    auto c = st_.eval_const_expr(e);
    if (!c) return kNone;
    auto i = c->as_int();
    if (!i || c->is_float()) fail("index must be an integer", e.loc);
    return *i;
  }

  /// A one-element array naming the operand's qubit, for passing elements to subroutines.
  ValueId single_slice(const QOperand &q) {
    ValueId idx = q.index ? const_int(*q.index, Type::index(), q.loc) : q.dyn_index;
    ValueId one = const_int(1, Type::index(), q.loc);
    ValueId v = emit(op::kSlice, {q.array, idx, one, idx}, {Type::qarray(1)}, {}, q.loc)->result();
    std::optional<QubitSlot> slot;
    if (q.index) slot = st_.resolve(q.array, *q.index);
    if (slot) st_.register_alias(v, {*slot});
    else st_.register_opaque(v);
    return v;
  }

  void invalidate_array(ValueId array) {
    if (st_.is_opaque(array)) {
      st_.invalidate_all();
      return;
    }
    for (ValueId root : st_.roots_of(array)) st_.invalidate_root(root);
  }

  /// Current SSA value for an element operand, extracting it if no chain is live.
  ValueId acquire(const QOperand &q) {
    if (q.index) {
      auto slot = st_.resolve(q.array, *q.index);
      if (slot && !st_.tracking_disabled(slot->root)) {
        if (auto cur = st_.current(*slot)) return *cur;
        ValueId idx = const_int(slot->index, Type::index(), q.loc);
        ValueId v = emit(op::kExtract, {slot->root, idx}, {Type::qubit()}, {}, q.loc)->result();
        st_.start_chain(*slot, v);
        return v;
      }
      if (slot) {
        ValueId idx = const_int(slot->index, Type::index(), q.loc);
        return emit(op::kExtract, {slot->root, idx}, {Type::qubit()}, {}, q.loc)->result();
      }
      st_.invalidate_all();
      ValueId idx = const_int(*q.index, Type::index(), q.loc);
      return emit(op::kExtract, {q.array, idx}, {Type::qubit()}, {}, q.loc)->result();
    }
    if (st_.is_opaque(q.array)) {
      st_.invalidate_all();
    } else {
      for (ValueId root : st_.roots_of(q.array)) st_.disable_tracking(root);
    }
    return emit(op::kExtract, {q.array, q.dyn_index}, {Type::qubit()}, {}, q.loc)->result();
  }

  void thread(ValueId prev, ValueId next) {
    if (st_.is_tracked(prev)) st_.update_qubit_value(prev, next);
  }

  void check_distinct(const std::vector<QOperand> &ops, SourceLocation loc) {
    std::set<QubitSlot> seen;
    for (const auto &q : ops) {
      if (!q.index) continue;
      auto slot = st_.resolve(q.array, *q.index);
      if (!slot) continue;
      if (!seen.insert(*slot).second) fail("the same qubit is used twice in one operation", q.loc);
    }
    (void)loc;
  }

  // ---- gates ----------------------------------------------------------------------------

  std::vector<ValueId> dagger_params(const std::string &gate, std::vector<ValueId> params,
                                     SourceLocation loc) {
    const gates::GateInfo *g = gates::lookup(gate);
    auto neg = [&](ValueId v) { return emit("arith.neg", {v}, {Type::f64()}, {}, loc)->result(); };
    if (g->dagger == gates::DaggerRule::NegateAngle) {
      for (auto &p : params) p = neg(p);
    } else if (g->dagger == gates::DaggerRule::UPermute) {
      params = {neg(params[0]), neg(params[2]), neg(params[1])};
    }
    return params;
  }

  void apply_gate(std::string gate, std::vector<ValueId> params, std::vector<QOperand> qs,
                  SourceLocation loc) {
    const gates::GateInfo *info = gates::lookup(gate);
    if (adjoint_) {
      params = dagger_params(gate, std::move(params), loc);
      gate = gates::dagger_name(gate);
    }
    std::string opname = std::string(op::kGatePrefix) + gate;
    bool any_whole = std::any_of(qs.begin(), qs.end(), [](const QOperand &q) { return q.whole; });
    if (!any_whole) {
      check_distinct(qs, loc);
      std::vector<ValueId> ins;
      for (const auto &q : qs) ins.push_back(acquire(q));
      std::vector<ValueId> operands = ins;
      operands.insert(operands.end(), params.begin(), params.end());
      Operation *op = emit(opname, std::move(operands),
                           std::vector<Type>(ins.size(), Type::qubit()), {}, loc);
      for (std::size_t i = 0; i < ins.size(); ++i) thread(ins[i], op->results[i]);
      return;
    }
    if (info->num_qubits == 1) {
      std::vector<ValueId> operands = {qs[0].array};
      operands.insert(operands.end(), params.begin(), params.end());
      Attributes attrs;
      if (adjoint_) attrs["reverse"] = true;
      emit(opname, std::move(operands), {}, std::move(attrs), loc);
      invalidate_array(qs[0].array);
      return;
    }
    // Multi-qubit gate over registers: pair elements up.
    std::int64_t n = -1;
    for (const auto &q : qs) {
      if (!q.whole) continue;
      std::int64_t size = type_of(q.array).size;
      if (size < 0) fail("register broadcast of '" + gate + "' needs registers of known size", q.loc);
      if (n >= 0 && size != n) fail("register operands of '" + gate + "' differ in size", q.loc);
      n = size;
    }
    bool saved = adjoint_;
    adjoint_ = false;  // params and name are already daggered
    for (std::int64_t step = 0; step < n; ++step) {
      std::int64_t k = saved ? n - 1 - step : step;
      std::vector<QOperand> elems;
      for (const auto &q : qs) {
        QOperand e = q;
        if (q.whole) {
          e.whole = false;
          e.index = k;
        }
        elems.push_back(e);
      }
      apply_gate(gate, params, elems, loc);
    }
    adjoint_ = saved;
  }

  Operation *emit_call(const std::string &name, const std::vector<frontend::AstPtr> &params,
                       const std::vector<const AstNode *> &qargs, SourceLocation loc) {
    Function *callee = module_->find(name);
    if (!callee) fail("call to unknown subroutine '" + name + "'", loc);
    std::vector<Type> ptypes = callee->param_types();
    std::size_t nclassical = 0, nquantum = 0;
    for (const Type &t : ptypes) (t.is_qarray() ? nquantum : nclassical)++;
    // Standard form `f(x, q)` passes qubits inside the parentheses; the older form is `f(x) q`.
    std::vector<const AstNode *> cargs, qv = qargs;
    bool inline_qubits = qargs.empty() && nquantum > 0 && params.size() == ptypes.size();
    for (std::size_t i = 0; i < params.size(); ++i)
      (inline_qubits && ptypes[i].is_qarray() ? qv : cargs).push_back(params[i].get());
    if (cargs.size() != nclassical)
      fail("subroutine '" + name + "' expects " + std::to_string(nclassical) +
               " classical arguments, got " + std::to_string(cargs.size()), loc);
    if (qv.size() != nquantum)
      fail("subroutine '" + name + "' expects " + std::to_string(nquantum) +
               " qubit arguments, got " + std::to_string(qv.size()), loc);
    std::vector<ValueId> args;
    std::vector<QOperand> qops;
    std::size_t ci = 0, qi = 0;
    for (const Type &t : ptypes) {
      if (t.is_qarray()) {
        QOperand q = qoperand(*qv[qi++]);
        ValueId arr = q.whole ? q.array : single_slice(q);
        std::int64_t size = type_of(arr).size;
        if (t.size > 0 && size > 0 && t.size != size)
          fail("subroutine '" + name + "' expects a register of size " + std::to_string(t.size) +
                   ", got " + std::to_string(size), q.loc);
        args.push_back(arr);
        qops.push_back(q);
      } else {
        const AstNode &p = *cargs[ci++];
        args.push_back(cast(expr(p), t, p.loc));
      }
    }
    check_distinct(qops, loc);
    Operation *call = emit(op::kCall, std::move(args), callee->result_types, {{"callee", name}}, loc);
    st_.invalidate_all();
    return call;
  }

  bool is_subroutine(const std::string &name, SourceLocation loc) {
    const SymbolInfo *s = find_symbol(name, loc);
    return s && s->kind == SymbolKind::Function;
  }

  void gate_call(const AstNode &n) {
    bool sub = is_subroutine(n.name, n.loc);
    if (adjoint_ && (sub || !n.modifiers.empty())) {
      // Reverse a call or a modified gate by letting the runtime take its adjoint.
      Operation *adj = emit(op::kAdjRegion, {}, {}, {}, n.loc);
      bool saved = adjoint_;
      adjoint_ = false;
      in_region(fn_->add_region(*adj), [&] { gate_call_forward(n); });
      adjoint_ = saved;
      return;
    }
    gate_call_forward(n);
  }

  void gate_call_forward(const AstNode &n) {
    std::vector<const AstNode *> operands;
    for (const auto &c : n.children) operands.push_back(c.get());
    // Catch control/target overlaps before emitting anything.
    std::vector<QOperand> probe;
    for (const AstNode *o : operands)
      if (o->kind == AstKind::Identifier || (o->kind == AstKind::Index && o->child(1)->kind != AstKind::Range &&
                                             st_.eval_const_expr(*o->child(1))))
        probe.push_back(probe_operand(*o));
    check_distinct(probe, n.loc);
    apply_modifiers(n, 0, operands);
  }

  /// Resolves an operand for overlap checks without emitting IR.
  QOperand probe_operand(const AstNode &o) {
    QOperand q;
    q.loc = o.loc;
    const AstNode &id = o.kind == AstKind::Identifier ? o : *o.child(0);
    const SymbolInfo &s = qubit_symbol(id);
    q.array = s.value;
    if (o.kind == AstKind::Identifier) {
      if (s.scalar_qubit) q.index = 0;
      else q.whole = true;
    } else {
      std::int64_t size = type_of(s.value).size;
      std::int64_t k = const_integer(*o.child(1), "qubit index");
      q.index = (k < 0 && size > 0) ? k + size : k;
    }
    return q;
  }

  void apply_modifiers(const AstNode &n, std::size_t mi, std::vector<const AstNode *> operands) {
    if (mi == n.modifiers.size()) return plain_call(n, operands);
    const Modifier &m = n.modifiers[mi];
    switch (m.kind) {
      case Modifier::Kind::Ctrl:
      case Modifier::Kind::NegCtrl: {
        std::int64_t count = m.arg ? const_integer(*m.arg, "control count") : 1;
        if (count < 1) fail("control count must be positive", m.loc);
        if (static_cast<std::int64_t>(operands.size()) <= count)
          fail("not enough qubit arguments for the control modifier", m.loc);
        std::vector<const AstNode *> ctrls(operands.begin(), operands.begin() + count);
        std::vector<const AstNode *> rest(operands.begin() + count, operands.end());
        return control_nest(n, mi, m, ctrls, 0, rest);
      }
      case Modifier::Kind::Inv: {
        Operation *adj = emit(op::kAdjRegion, {}, {}, {}, m.loc);
        in_region(fn_->add_region(*adj), [&] { apply_modifiers(n, mi + 1, operands); });
        return;
      }
      case Modifier::Kind::Pow: {
        ValueId k;
        if (auto c = st_.eval_const_expr(*m.arg)) {
          auto i = c->as_int();
          if (!i || c->is_float()) fail("pow exponent must be an integer", m.arg->loc);
          k = const_int(*i, Type::int_(64), m.arg->loc);
        } else {
          k = expr(*m.arg);
          if (!type_of(k).is_integer_like()) fail("pow exponent must be an integer", m.arg->loc);
          k = cast(k, Type::int_(64), m.arg->loc);
        }
        Operation *pw = emit(op::kPowRegion, {k}, {}, {}, m.loc);
        in_region(fn_->add_region(*pw), [&] { apply_modifiers(n, mi + 1, operands); });
        return;
      }
    }
  }

  void control_nest(const AstNode &n, std::size_t mi, const Modifier &m,
                    const std::vector<const AstNode *> &ctrls, std::size_t ci,
                    const std::vector<const AstNode *> &rest) {
    if (ci == ctrls.size()) return apply_modifiers(n, mi + 1, rest);
    QOperand c = qoperand(*ctrls[ci]);
    if (c.whole) {
      if (type_of(c.array).size != 1) fail("control operand must be a single qubit", c.loc);
      c.whole = false;
      c.index = 0;
    }
    bool neg = m.kind == Modifier::Kind::NegCtrl;
    if (neg) apply_gate("x", {}, {c}, m.loc);
    ValueId cv = acquire(c);
    st_.end_chain(cv);
    Operation *region_op = emit(op::kCtrlRegion, {cv}, {}, {}, m.loc);
    in_region(fn_->add_region(*region_op), [&] { control_nest(n, mi, m, ctrls, ci + 1, rest); });
    if (neg) apply_gate("x", {}, {c}, m.loc);
  }

  void plain_call(const AstNode &n, const std::vector<const AstNode *> &operands) {
    if (is_subroutine(n.name, n.loc)) {
      emit_call(n.name, n.params, operands, n.loc);
      return;
    }
    auto canon = gates::canonical_name(n.name);
    if (!canon) fail("unknown gate or subroutine '" + n.name + "'", n.loc);
    const gates::GateInfo *g = gates::lookup(*canon);
    if (static_cast<int>(n.params.size()) != g->num_params)
      fail("gate '" + n.name + "' takes " + std::to_string(g->num_params) + " parameter(s), got " +
               std::to_string(n.params.size()), n.loc);
    if (static_cast<int>(operands.size()) != g->num_qubits)
      fail("gate '" + n.name + "' acts on " + std::to_string(g->num_qubits) + " qubit(s), got " +
               std::to_string(operands.size()), n.loc);
    std::vector<ValueId> params;
    for (const auto &p : n.params) params.push_back(cast(expr(*p), Type::f64(), p->loc));
    std::vector<QOperand> qs;
    for (const AstNode *o : operands) qs.push_back(qoperand(*o));
    apply_gate(*canon, std::move(params), std::move(qs), n.loc);
  }

  // ---- measurement and storage ----------------------------------------------------------

  ValueId measure_element(const QOperand &q, SourceLocation loc) {
    ValueId v = acquire(q);
    Operation *m = emit(op::kMeasure, {v}, {Type::i1(), Type::qubit()}, {}, loc);
    thread(v, m->results[1]);
    return m->results[0];
  }

  ValueId measure_expr(const AstNode &e) {
    if (in_compute_) fail("measurement is not allowed inside a compute block", e.loc);
    QOperand q = qoperand(*e.child(0));
    if (q.whole) {
      if (type_of(q.array).size != 1) fail("cannot measure a register into a scalar", e.loc);
      q.whole = false;
      q.index = 0;
    }
    return measure_element(q, e.loc);
  }

  void store_value(const AstNode &target, ValueId value, SourceLocation loc) {
    const AstNode &id = target.kind == AstKind::Index ? *target.child(0) : target;
    if (id.kind != AstKind::Identifier) fail("invalid assignment target", target.loc);
    const SymbolInfo *s = find_symbol(id.name, id.loc);
    if (!s) fail("use of undeclared identifier '" + id.name + "'", id.loc);
    if (s->kind == SymbolKind::Global || s->is_const) fail("cannot assign to constant '" + id.name + "'", loc);
    if (s->kind != SymbolKind::Cell) fail("cannot assign to '" + id.name + "'", loc);
    Type cell = type_of(s->value);
    ValueId v = cast(value, cell.element(), loc);
    if (target.kind == AstKind::Index) {
      if (target.child(1)->kind == AstKind::Range) fail("register slices are not assignable", loc);
      ValueId idx = cell_index(*s, *target.child(1));
      emit(op::kStore, {v, s->value, idx}, {}, {}, loc);
    } else {
      if (cell.size != 1) fail("cannot assign a scalar to register '" + id.name + "'", loc);
      emit(op::kStore, {v, s->value}, {}, {}, loc);
    }
  }

  void measure_stmt(const AstNode &n) {
    if (in_compute_) fail("measurement is not allowed inside a compute block", n.loc);
    QOperand q = qoperand(*n.child(0));
    const AstNode *target = n.child(1);
    if (!q.whole) {
      ValueId bit = measure_element(q, n.loc);
      if (target) store_value(*target, bit, n.loc);
      return;
    }
    std::int64_t size = type_of(q.array).size;
    if (size < 0) fail("cannot measure a register of unknown size", n.loc);
    const SymbolInfo *cell = nullptr;
    if (target) {
      if (target->kind != AstKind::Identifier) fail("register measurement needs a bit register target", target->loc);
      cell = find_symbol(target->name, target->loc);
      if (!cell || cell->kind != SymbolKind::Cell)
        fail("'" + target->name + "' is not a classical register", target->loc);
      if (type_of(cell->value).size != size)
        fail("measurement target size does not match register size", target->loc);
    }
    for (std::int64_t k = 0; k < size; ++k) {
      QOperand e = q;
      e.whole = false;
      e.index = k;
      ValueId bit = measure_element(e, n.loc);
      if (cell) {
        Type ct = type_of(cell->value);
        ValueId idx = const_int(k, Type::index(), n.loc);
        emit(op::kStore, {cast(bit, ct.element(), n.loc), cell->value, idx}, {}, {}, n.loc);
      }
    }
  }

  void reset_stmt(const AstNode &n) {
    if (in_compute_) fail("reset is not allowed inside a compute block", n.loc);
    QOperand q = qoperand(*n.child(0));
    if (q.whole) {
      emit(op::kReset, {q.array}, {}, {}, n.loc);
      invalidate_array(q.array);
      return;
    }
    ValueId v = acquire(q);
    Operation *r = emit(op::kReset, {v}, {Type::qubit()}, {}, n.loc);
    thread(v, r->result());
  }

  // ---- declarations --------------------------------------------------------------------------

  void classical_decl(const AstNode &n) {
    if (in_compute_) fail("classical declarations are not allowed inside a compute block", n.loc);
    Type t = sem_type(n.type, n.loc);
    ValueId cell = emit(op::kAlloca, {}, {Type::cell(t)}, {{"name", n.name}}, n.loc)->result();
    std::optional<ValueId> init;
    if (const AstNode *i = n.child(0)) init = expr(*i);
    SymbolInfo info;
    info.name = n.name;
    info.kind = SymbolKind::Cell;
    info.value = cell;
    info.declared_type = t;
    info.loc = n.loc;
    declare(std::move(info));
    if (init) emit(op::kStore, {cast(*init, t, n.loc), cell}, {}, {}, n.loc);
  }

  void bit_decl(const AstNode &n) {
    if (in_compute_) fail("classical declarations are not allowed inside a compute block", n.loc);
    std::int64_t count = 1;
    if (const AstNode *size = n.child(0)) {
      count = const_integer(*size, "bit register size");
      if (count < 1) fail("bit register size must be positive", size->loc);
    }
    ValueId cell =
        emit(op::kAlloca, {}, {Type::cell(Type::i1(), count)}, {{"name", n.name}}, n.loc)->result();
    SymbolInfo info;
    info.name = n.name;
    info.kind = SymbolKind::Cell;
    info.value = cell;
    info.declared_type = Type::i1();
    info.loc = n.loc;
    const AstNode *init = n.child(1);
    if (init && init->kind == AstKind::MeasureExpr) {
      declare(info);
      auto m = frontend::make_node(AstKind::Measure, init->loc);
      m->children.push_back(init->child(0)->clone());
      auto target = frontend::make_node(AstKind::Identifier, n.loc);
      target->name = n.name;
      m->children.push_back(std::move(target));
      measure_stmt(*m);
      return;
    }
    std::optional<ValueId> v;
    if (init) {
      if (count != 1) fail("register initializers are not supported", init->loc);
      v = expr(*init);
    }
    declare(std::move(info));
    if (v) emit(op::kStore, {cast(*v, Type::i1(), n.loc), cell}, {}, {}, n.loc);
  }

  void const_decl(const AstNode &n) {
    const AstNode &init = *n.child(0);
    auto c = st_.eval_const_expr(init);
    if (!c) fail("initializer of const '" + n.name + "' is not a compile-time constant", init.loc);
    Type t;
    if (!n.type.is_none()) {
      t = sem_type(n.type, n.loc);
      if (t.is_float()) *c = ConstValue::of_float(c->as_double());
      else if (t.is_bool()) *c = ConstValue::of_bool(c->truthy());
      else if (c->is_float()) *c = ConstValue::of_int(static_cast<std::int64_t>(c->f));
      else if (c->is_bool()) *c = ConstValue::of_int(c->b ? 1 : 0);
    } else {
      t = c->is_float() ? Type::f64() : c->is_bool() ? Type::i1() : Type::int_(64);
    }
    SymbolInfo info;
    info.name = n.name;
    info.is_const = true;
    info.const_value = c;
    info.declared_type = t;
    info.loc = n.loc;
    if (is_main_ && st_.depth() == 1) {
      Attribute value;
      if (t.is_float()) value = c->as_double();
      else if (t.is_bool()) value = c->truthy();
      else value = *c->as_int();
      module_->globals.push_back(Global{n.name, t, value});
      info.kind = SymbolKind::Global;
    } else {
      ValueId v;
      if (t.is_float()) v = emit(op::kConstant, {}, {t}, {{"value", c->as_double()}}, n.loc)->result();
      else if (t.is_bool()) v = const_bool(c->truthy(), n.loc);
      else v = const_int(*c->as_int(), t, n.loc);
      info.kind = SymbolKind::Value;
      info.value = v;
    }
    declare(std::move(info));
  }

  void qubit_decl(const AstNode &n) {
    if (!is_main_ || st_.depth() != 1)
      fail("qubits can only be declared at global scope", n.loc);
    std::int64_t size = 1;
    if (const AstNode *s = n.child(0)) {
      size = const_integer(*s, "qubit register size");
      if (size < 1) fail("qubit register size must be positive", s->loc);
    }
    ValueId arr = emit(op::kQalloc, {}, {Type::qarray(size)}, {{"name", n.name}, {"size", size}}, n.loc)
                      ->result();
    main_allocs_.push_back(arr);
    SymbolInfo info;
    info.name = n.name;
    info.kind = SymbolKind::QubitArray;
    info.value = arr;
    info.declared_type = Type::qarray(size);
    info.scalar_qubit = n.child(0) == nullptr;
    info.loc = n.loc;
    declare(std::move(info));
  }

  void alias_decl(const AstNode &n) {
    const AstNode &rhs = *n.child(0);
    SymbolInfo info;
    info.name = n.name;
    info.kind = SymbolKind::QubitArray;
    info.loc = n.loc;
    if (rhs.kind == AstKind::Concat) {
      std::vector<ValueId> parts;
      std::vector<QubitSlot> elems;
      bool resolved = true;
      for (const auto &part : rhs.children) {
        QOperand q = qoperand(*part);
        ValueId arr = q.whole ? q.array : single_slice(q);
        std::int64_t size = type_of(arr).size;
        if (size < 0 || st_.is_opaque(arr)) resolved = false;
        for (std::int64_t k = 0; resolved && k < size; ++k) {
          auto slot = st_.resolve(arr, k);
          if (!slot) resolved = false;
          else elems.push_back(*slot);
        }
        parts.push_back(arr);
      }
      std::set<QubitSlot> distinct(elems.begin(), elems.end());
      if (resolved && distinct.size() != elems.size())
        fail("concatenation repeats a qubit", rhs.loc);
      std::int64_t count = resolved ? static_cast<std::int64_t>(elems.size()) : -1;
      ValueId v = emit(op::kConcat, parts, {Type::qarray(count)}, {}, n.loc)->result();
      if (resolved) st_.register_alias(v, std::move(elems));
      else st_.register_opaque(v);
      info.value = v;
    } else {
      QOperand q = qoperand(rhs);
      if (q.whole) {
        info.value = q.array;
        if (rhs.kind == AstKind::Identifier) {
          const SymbolInfo &src = qubit_symbol(rhs);
          info.scalar_qubit = src.scalar_qubit;
        }
      } else {
        info.value = single_slice(q);
        info.scalar_qubit = true;
      }
    }
    info.declared_type = type_of(info.value);
    declare(std::move(info));
  }

  // ---- control flow ---------------------------------------------------------------------------

  template <typename F>
  void in_region(Region &region, F &&body) {
    Region *saved = cur_;
    cur_ = &region;
    st_.push_tracking_frame();
    st_.enter_scope();
    try {
      body();
    } catch (...) {
      st_.exit_scope();
      st_.pop_tracking_frame();
      cur_ = saved;
      throw;
    }
    st_.exit_scope();
    st_.pop_tracking_frame();
    cur_ = saved;
    st_.invalidate_all();
  }

  void statements(const AstNode &block) {
    if (adjoint_) return adjoint_statements(block);
    for (const auto &s : block.children) guarded([&] { statement(*s); });
  }

  /// Reversed order for uncompute generation; declarations keep their forward position up front.
  void adjoint_statements(const AstNode &block) {
    for (const auto &s : block.children)
      if (s->kind == AstKind::ConstDecl || s->kind == AstKind::AliasDecl)
        guarded([&] { statement(*s); });
    for (auto it = block.children.rbegin(); it != block.children.rend(); ++it)
      if ((*it)->kind != AstKind::ConstDecl && (*it)->kind != AstKind::AliasDecl)
        guarded([&] { statement(**it); });
  }

  void scoped_statements(const AstNode &block) {
    st_.enter_scope();
    try {
      statements(block);
    } catch (...) {
      st_.exit_scope();
      throw;
    }
    st_.exit_scope();
  }

  void if_stmt(const AstNode &n) {
    if (in_compute_) fail("'if' is not allowed inside a compute block", n.loc);
    ValueId cond = to_bool(expr(*n.child(0)), n.loc);
    Operation *op = emit(op::kIf, {cond}, {}, {}, n.loc);
    Region &then_r = fn_->add_region(*op);
    Region &else_r = fn_->add_region(*op);
    in_region(then_r, [&] { statements(*n.child(1)); });
    in_region(else_r, [&] {
      if (const AstNode *e = n.child(2)) statements(*e);
    });
  }

  ValueId bound(const AstNode *e, const char *what, SourceLocation loc) {
    if (!e) fail(std::string("for-loop range needs ") + what, loc);
    if (auto c = st_.eval_const_expr(*e)) {
      auto i = c->as_int();
      if (!i || c->is_float()) fail(std::string("loop ") + what + " must be an integer", e->loc);
      return const_int(*i, Type::index(), e->loc);
    }
    ValueId v = expr(*e);
    if (!type_of(v).is_integer_like()) fail(std::string("loop ") + what + " must be an integer", e->loc);
    return cast(v, Type::index(), e->loc);
  }

  void for_range(const AstNode &n) {
    const AstNode &range = *n.child(0);
    const AstNode *start = range.child(0), *step = range.child(1), *stop = range.child(2);
    std::optional<std::int64_t> s_const = 1;
    if (step) {
      auto c = st_.eval_const_expr(*step);
      s_const = c ? c->as_int() : std::nullopt;
      if (c && (!s_const || c->is_float())) fail("loop step must be an integer", step->loc);
      if (s_const && *s_const == 0) fail("loop step cannot be zero", step->loc);
    }
    ValueId lb, ub, st;
    if (!adjoint_) {
      lb = bound(start, "a start", n.loc);
      ub = bound(stop, "an end", n.loc);
      st = step ? bound(step, "a step", n.loc) : const_int(1, Type::index(), n.loc);
    } else {
      if (!s_const) fail("a loop with a non-constant step cannot be reversed", n.loc);
      std::int64_t s = *s_const;
      auto a_c = start ? st_.eval_const_expr(*start) : std::nullopt;
      auto b_c = stop ? st_.eval_const_expr(*stop) : std::nullopt;
      if (a_c && b_c && a_c->as_int() && b_c->as_int()) {
        std::int64_t a = *a_c->as_int(), b = *b_c->as_int();
        std::int64_t span = s > 0 ? b - a : a - b;
        std::int64_t mag = s > 0 ? s : -s;
        std::int64_t trip = span > 0 ? (span + mag - 1) / mag : 0;
        lb = const_int(a + (trip - 1) * s, Type::index(), n.loc);
        ub = const_int(a - s, Type::index(), n.loc);
      } else {
        ValueId a = bound(start, "a start", n.loc);
        ValueId b = bound(stop, "an end", n.loc);
        std::int64_t mag = s > 0 ? s : -s;
        auto I = Type::index();
        auto bin = [&](const char *o, ValueId x, ValueId y) {
          return emit(o, {x, y}, {I}, {}, n.loc)->result();
        };
        ValueId span = s > 0 ? bin("arith.sub", b, a) : bin("arith.sub", a, b);
        ValueId trip = bin("arith.div", bin("arith.add", span, const_int(mag - 1, I, n.loc)),
                           const_int(mag, I, n.loc));
        ValueId last = bin("arith.mul", bin("arith.sub", trip, const_int(1, I, n.loc)),
                           const_int(s, I, n.loc));
        lb = bin("arith.add", a, last);
        ub = bin("arith.sub", a, const_int(s, I, n.loc));
      }
      st = const_int(-s, Type::index(), n.loc);
    }
    Operation *loop = emit(op::kFor, {lb, ub, st}, {}, {}, n.loc);
    Region &body = fn_->add_region(*loop);
    ValueId iv = fn_->add_region_arg(body, Type::index());
    in_region(body, [&] {
      SymbolInfo info;
      info.name = n.name;
      info.kind = SymbolKind::Value;
      info.value = iv;
      info.declared_type = Type::index();
      info.loc = n.loc;
      declare(std::move(info));
      statements(*n.child(1));
    });
  }

  void while_loop(const AstNode *cond, const AstNode &body, const AstNode *step, SourceLocation loc) {
    Operation *loop = emit(op::kWhile, {}, {}, {}, loc);
    Region &cond_r = fn_->add_region(*loop);
    Region &body_r = fn_->add_region(*loop);
    in_region(cond_r, [&] {
      ValueId c = cond ? to_bool(expr(*cond), cond->loc) : const_bool(true, loc);
      emit(op::kCondition, {c}, {}, {}, loc);
    });
    in_region(body_r, [&] {
      statements(body);
      if (step) statement(*step);
    });
  }

  void for_cstyle(const AstNode &n) {
    if (in_compute_) fail("C-style loops are not allowed inside a compute block", n.loc);
    st_.enter_scope();
    try {
      if (const AstNode *init = n.child(0)) statement(*init);
      while_loop(n.child(1), *n.child(3), n.child(2), n.loc);
    } catch (...) {
      st_.exit_scope();
      throw;
    }
    st_.exit_scope();
  }

  void compute_action(const AstNode &n) {
    const AstNode &compute = *n.child(0);
    const AstNode &action = *n.child(1);
    std::string outer = segment_;
    bool saved_compute = in_compute_, saved_adj = adjoint_;
    auto restore = [&] {
      segment_ = outer;
      in_compute_ = saved_compute;
      adjoint_ = saved_adj;
    };
    try {
      // U
      segment_ = outer.empty() ? "compute" : outer;
      in_compute_ = true;
      adjoint_ = false;
      scoped_statements(compute);
      // V, or V† when this whole statement is being reversed
      segment_ = outer;
      in_compute_ = saved_compute;
      adjoint_ = saved_adj;
      scoped_statements(action);
      // U†
      segment_ = outer.empty() ? "uncompute" : outer;
      in_compute_ = true;
      adjoint_ = true;
      scoped_statements(compute);
    } catch (...) {
      restore();
      throw;
    }
    restore();
  }

  // ---- subroutines --------------------------------------------------------------------------------

  void subroutine(const AstNode &n) {
    if (!is_main_ || st_.depth() != 1) fail("subroutines can only be defined at global scope", n.loc);
    if (module_->find(n.name)) fail("redefinition of subroutine '" + n.name + "'", n.loc);
    Function &f = module_->add_function(n.name);
    if (!n.type.is_none()) f.result_types.push_back(sem_type(n.type, n.loc));
    SymbolInfo sym;
    sym.name = n.name;
    sym.kind = SymbolKind::Function;
    sym.loc = n.loc;

    // Parameters are typed in the enclosing scope so sizes may name global consts.
    std::vector<SymbolInfo> params;
    for (const auto &p : n.params) {
      SymbolInfo info;
      info.name = p->name;
      info.loc = p->loc;
      if (p->is_qubit) {
        std::int64_t size = 1;
        if (const AstNode *s = p->child(0)) {
          size = const_integer(*s, "qubit parameter size");
          if (size < 1) fail("qubit parameter size must be positive", s->loc);
        }
        info.kind = SymbolKind::QubitArray;
        info.declared_type = Type::qarray(size);
        info.value = f.add_param(info.declared_type);
        info.scalar_qubit = p->child(0) == nullptr;
      } else {
        info.kind = SymbolKind::Value;
        info.declared_type = sem_type(p->type, p->loc);
        info.value = f.add_param(info.declared_type);
      }
      params.push_back(std::move(info));
    }
    // Visible to its own body; recursion is rejected later by the inliner.
    declare(std::move(sym));

    Function *saved_fn = fn_;
    Region *saved_cur = cur_;
    std::size_t saved_depth = fn_scope_depth_;
    bool saved_main = is_main_;
    fn_ = &f;
    cur_ = &f.body;
    is_main_ = false;
    st_.enter_scope();
    st_.push_tracking_frame();
    fn_scope_depth_ = st_.depth();
    auto restore = [&] {
      st_.pop_tracking_frame();
      st_.exit_scope();
      fn_ = saved_fn;
      cur_ = saved_cur;
      fn_scope_depth_ = saved_depth;
      is_main_ = saved_main;
    };
    try {
      for (auto &info : params) declare(std::move(info));
      const auto &body = n.child(0)->children;
      bool returned = false;
      for (std::size_t i = 0; i < body.size(); ++i) {
        const AstNode &s = *body[i];
        if (s.kind == AstKind::Return) {
          guarded([&] {
            if (i + 1 != body.size()) fail("return must be the last statement of a subroutine", s.loc);
            return_stmt(s);
          });
          returned = true;
          continue;
        }
        guarded([&] { statement(s); });
      }
      if (!returned) {
        if (!f.result_types.empty())
          diags_.push_back(Diagnostic{Severity::Error,
                                      "subroutine '" + n.name + "' must end with a return statement", n.loc});
        fn_->build(f.body, std::string(op::kReturn), {}, {}, {}, n.loc);
      }
    } catch (...) {
      restore();
      throw;
    }
    restore();
  }

  void return_stmt(const AstNode &n) {
    std::vector<ValueId> values;
    const AstNode *v = n.child(0);
    if (fn_->result_types.empty()) {
      if (v) fail("void subroutine cannot return a value", n.loc);
    } else {
      if (!v) fail("missing return value", n.loc);
      values.push_back(cast(expr(*v), fn_->result_types[0], n.loc));
    }
    fn_->build(*cur_, std::string(op::kReturn), std::move(values), {}, {}, n.loc);
  }

  void extern_decl(const AstNode &n) {
    if (!is_main_ || st_.depth() != 1) fail("extern declarations must be at global scope", n.loc);
    if (module_->find(n.name)) fail("redefinition of '" + n.name + "'", n.loc);
    Function &f = module_->add_function(n.name);
    f.is_declaration = true;
    for (const auto &p : n.params) {
      if (p->is_qubit) fail("extern functions take classical arguments only", p->loc);
      f.decl_param_types.push_back(sem_type(p->type, p->loc));
    }
    if (!n.type.is_none()) f.result_types.push_back(sem_type(n.type, n.loc));
    SymbolInfo sym;
    sym.name = n.name;
    sym.kind = SymbolKind::Function;
    sym.loc = n.loc;
    declare(std::move(sym));
  }

  void print_stmt(const AstNode &n) {
    if (in_compute_) fail("print is not allowed inside a compute block", n.loc);
    std::vector<std::string> pieces;
    std::vector<ValueId> operands;
    for (const auto &a : n.children) {
      if (a->kind == AstKind::StringLiteral) {
        pieces.push_back("s:" + a->text);
      } else {
        pieces.push_back("v");
        operands.push_back(expr(*a));
      }
    }
    Attributes attrs;
    if (!pieces.empty()) attrs["pieces"] = pieces;
    emit(op::kPrint, std::move(operands), {}, std::move(attrs), n.loc);
  }

  // ---- dispatch -------------------------------------------------------------------------------------

  void statement(const AstNode &n) {
    switch (n.kind) {
      case AstKind::Include: return;
      case AstKind::ConstDecl: return const_decl(n);
      case AstKind::QubitDecl: return qubit_decl(n);
      case AstKind::BitDecl: return bit_decl(n);
      case AstKind::ClassicalDecl: return classical_decl(n);
      case AstKind::AliasDecl: return alias_decl(n);
      case AstKind::SubroutineDef: return subroutine(n);
      case AstKind::ExternDecl: return extern_decl(n);
      case AstKind::GateCall: return gate_call(n);
      case AstKind::Measure: return measure_stmt(n);
      case AstKind::Reset: return reset_stmt(n);
      case AstKind::Assignment: {
        if (in_compute_) fail("assignments are not allowed inside a compute block", n.loc);
        ValueId v = expr(*n.child(1));
        return store_value(*n.child(0), v, n.loc);
      }
      case AstKind::CompoundAssignment: {
        if (in_compute_) fail("assignments are not allowed inside a compute block", n.loc);
        auto bin = frontend::make_node(AstKind::Binary, n.loc);
        bin->op = n.op.substr(0, n.op.size() - 1);
        bin->children.push_back(n.child(0)->clone());
        bin->children.push_back(n.child(1)->clone());
        ValueId v = expr(*bin);
        return store_value(*n.child(0), v, n.loc);
      }
      case AstKind::If: return if_stmt(n);
      case AstKind::ForRange: return for_range(n);
      case AstKind::ForCStyle: return for_cstyle(n);
      case AstKind::While:
        if (in_compute_) fail("while loops are not allowed inside a compute block", n.loc);
        return while_loop(n.child(0), *n.child(1), nullptr, n.loc);
      case AstKind::ComputeAction: return compute_action(n);
      case AstKind::Return:
        if (is_main_ && allow_main_return_ && st_.depth() == 1 && !n.child(0)) return;
        fail("return is only allowed as the last statement of a subroutine", n.loc);
      case AstKind::Print: return print_stmt(n);
      case AstKind::ExpressionStatement: {
        if (in_compute_) fail("expression statements are not allowed inside a compute block", n.loc);
        const AstNode &e = *n.child(0);
        if (e.kind == AstKind::Call && is_subroutine(e.name, e.loc)) {
          std::vector<const AstNode *> qargs;
          for (const auto &c : e.children) qargs.push_back(c.get());
          emit_call(e.name, e.params, qargs, e.loc);
          return;
        }
        expr(e);
        return;
      }
      case AstKind::Block: return scoped_statements(n);
      default: fail(std::string("unexpected ") + frontend::to_string(n.kind), n.loc);
    }
  }

  const AstNode &program_;
  SymbolTable &st_;
  std::unique_ptr<Module> module_;
  DiagnosticList diags_;
  Function *fn_ = nullptr;
  Region *cur_ = nullptr;
  std::size_t fn_scope_depth_ = 1;
  std::string segment_;
  bool in_compute_ = false;
  bool adjoint_ = false;
  bool is_main_ = true;
  bool allow_main_return_ = false;
  std::vector<ValueId> main_allocs_;
};

}  // namespace

BuildResult build_module(const frontend::AstNode &program, symtab::SymbolTable &symbols) {
  return Builder(program, symbols).run();
}

BuildResult build_module(const frontend::AstNode &program) {
  symtab::SymbolTable symbols;
  return build_module(program, symbols);
}

}  // namespace qforge::ir
