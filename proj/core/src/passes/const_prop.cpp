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

#include "pass_utils.hpp"
#include "qforge/ir/fold.hpp"
#include "qforge/passes/passes.hpp"

namespace qforge::passes {

using namespace ir;
using symtab::ConstValue;

namespace {

class ConstProp {
 public:
  ConstProp(Module &module, Function &fn) : module_(module), fn_(fn) {}

  bool run() {
    visit(fn_.body);
    fn_.purge();
    return changed_;
  }

 private:
  std::optional<ConstValue> value_of(ValueId v) {
    const Operation *def = fn_.def(v);
    if (!def || def->erased || def->name != op::kConstant) return std::nullopt;
    return constant_value(*def, fn_.type(v));
  }

  void to_constant(Operation &op, const ConstValue &v) {
    Type t = fn_.type(op.result());
    Attributes attrs;
    if (auto seg = op.attrs.find("segment"); seg != op.attrs.end()) attrs.insert(*seg);
    attrs["value"] = constant_attr(v, t);
    auto c = fn_.make_op(std::string(op::kConstant), {}, {t}, std::move(attrs), op.loc);
    fn_.replace_all_uses(op.result(), c->result());
    fn_.replace(op, std::move(c));
    changed_ = true;
  }

  void visit(Region &region) {
    for (std::size_t i = 0; i < region.ops.size(); ++i) {
      Operation *op = region.ops[i].get();
      if (op->erased) continue;
      if (op->name == op::kGlobalGet) {
        const Global *g = module_.find_global(op->str_attr("name").value_or(""));
        if (g) {
          ConstValue raw = std::holds_alternative<double>(g->value)
                               ? ConstValue::of_float(std::get<double>(g->value))
                           : std::holds_alternative<bool>(g->value)
                               ? ConstValue::of_bool(std::get<bool>(g->value))
                               : ConstValue::of_int(std::get<std::int64_t>(g->value));
          if (auto v = coerce(raw, g->type)) to_constant(*op, *v);
        }
        continue;
      }
      if (is_pure(*op) && op->results.size() == 1 && op->name != op::kConstant && op->regions.empty() &&
          fn_.type(op->result()).is_numeric()) {
        std::vector<ConstValue> in;
        bool all = true;
        for (ValueId v : op->operands()) {
          auto c = value_of(v);
          if (!c) {
            all = false;
            break;
          }
          in.push_back(*c);
        }
        if (all) {
          try {
            if (auto r = evaluate(*op, in, fn_.type(op->result()))) to_constant(*op, *r);
          } catch (const CompileError &) {
            // Left for the runtime to report.
          }
        }
        continue;
      }
      if (is_gate(*op) && !gate_angles(*op)) {
        auto params = gate_param_operands(*op);
        if (!params.empty()) {
          std::vector<double> angles;
          for (ValueId v : params) {
            auto c = value_of(v);
            if (!c) break;
            angles.push_back(c->as_double());
          }
          if (angles.size() == params.size()) {
            std::vector<ValueId> qubits(op->operands().begin(),
                                        op->operands().end() - static_cast<std::ptrdiff_t>(params.size()));
            fn_.set_operands(*op, std::move(qubits));
            op->attrs["angles"] = std::move(angles);
            changed_ = true;
          }
        }
        continue;
      }
      if (op->name == op::kIf) {
        if (auto c = value_of(op->operand(0))) {
          Region &taken = op->region(c->truthy() ? 0 : 1);
          auto ops = fn_.take_all(taken);
          std::size_t n = ops.size();
          fn_.replace_with_many(*op, std::move(ops));
          changed_ = true;
          --i;  // revisit the hoisted ops
          (void)n;
          continue;
        }
      }
      if (op->name == op::kFor) {
        auto lb = value_of(op->operand(0)), ub = value_of(op->operand(1)), st = value_of(op->operand(2));
        if (lb && ub && st && st->i != 0 &&
            (st->i > 0 ? lb->i >= ub->i : lb->i <= ub->i)) {
          fn_.erase(*op);
          changed_ = true;
          continue;
        }
      }
      for (auto &r : op->regions) visit(*r);
    }
  }

  Module &module_;
  Function &fn_;
  bool changed_ = false;
};

}  // namespace

bool propagate_constants(Module &module) {
  bool changed = false;
  detail::for_each_function(module, [&](Function &fn) { changed |= ConstProp(module, fn).run(); });
  return changed;
}

}  // namespace qforge::passes
