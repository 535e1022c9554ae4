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

#include "qforge/ir/verifier.hpp"

#include <algorithm>
#include <unordered_set>

#include "qforge/ir/printer.hpp"
#include "qforge/support/gates.hpp"

namespace qforge::ir {

namespace {

class FunctionVerifier {
 public:
  FunctionVerifier(const Module &module, const Function &fn, DiagnosticList &out)
      : module_(module), fn_(fn), out_(out) {}

  void run() {
    if (fn_.is_declaration) return;
    std::vector<ValueId> scope(fn_.body.args.begin(), fn_.body.args.end());
    visible_.insert(scope.begin(), scope.end());
    check_region(fn_.body, /*is_body=*/true);
    check_users();
  }

 private:
  void error(const Operation *op, const std::string &msg) {
    std::string where = "in @" + fn_.name;
    if (op) where += ", op '" + op->name + "'";
    out_.push_back(Diagnostic{Severity::Error, "internal: " + where + ": " + msg,
                              op ? op->loc : SourceLocation{}});
  }

  Type ty(ValueId v) const { return fn_.type(v); }

  void check_region(const Region &region, bool is_body) {
    std::vector<ValueId> added(region.args.begin(), region.args.end());
    visible_.insert(region.args.begin(), region.args.end());
    for (std::size_t i = 0; i < region.ops.size(); ++i) {
      const Operation *op = region.ops[i].get();
      if (!op) {
        error(nullptr, "null op slot");
        continue;
      }
      if (op->erased) {
        error(op, "erased op still attached");
        continue;
      }
      if (op->parent != &region || op->slot != i) error(op, "stale parent/slot link");
      for (ValueId v : op->operands()) {
        if (!v.valid() || v.raw >= fn_.num_values()) {
          error(op, "operand is not a value");
          continue;
        }
        if (!visible_.count(v)) error(op, "operand %" + std::to_string(v.raw) + " used before definition or out of scope");
        if (ty(v).is_qubit() && ++qubit_uses_[v.raw] > 1)
          error(op, "qubit value %" + std::to_string(v.raw) + " consumed more than once");
      }
      check_op(*op, is_body && i + 1 == region.ops.size());
      if (op->name == op::kReturn && !(is_body && i + 1 == region.ops.size()))
        error(op, "return must be the last op of the function body");
      if (op->name == op::kCondition &&
          !(region.parent_op && region.parent_op->name == op::kWhile &&
            &region == region.parent_op->regions[0].get() && i + 1 == region.ops.size()))
        error(op, "scf.condition must terminate a while condition region");
      for (const auto &inner : op->regions) check_region(*inner, false);
      for (ValueId r : op->results) {
        if (fn_.def(r) != op) error(op, "result def link broken");
        visible_.insert(r);
        added.push_back(r);
      }
    }
    if (is_body && (region.ops.empty() || region.ops.back()->name != op::kReturn))
      error(nullptr, "function body does not end in return");
    if (region.parent_op && region.parent_op->name == op::kWhile &&
        &region == region.parent_op->regions[0].get() &&
        (region.ops.empty() || region.ops.back()->name != op::kCondition))
      error(region.parent_op, "while condition region must end in scf.condition");
    for (ValueId v : added) visible_.erase(v);
  }

  void check_users() {
    std::vector<std::vector<const Operation *>> expected(fn_.num_values());
    walk(fn_.body, [&](const Operation &op) {
      for (ValueId v : op.operands())
        if (v.valid() && v.raw < expected.size()) expected[v.raw].push_back(&op);
    });
    for (std::uint32_t i = 0; i < expected.size(); ++i) {
      std::vector<const Operation *> actual(fn_.users(ValueId{i}).begin(),
                                            fn_.users(ValueId{i}).end());
      auto a = expected[i];
      std::sort(a.begin(), a.end());
      std::sort(actual.begin(), actual.end());
      if (a != actual) {
        error(nullptr, "users list of %" + std::to_string(i) + " is out of sync");
        return;
      }
    }
  }

  void expect_counts(const Operation &op, std::size_t operands, std::size_t results) {
    if (op.num_operands() != operands)
      error(&op, "expected " + std::to_string(operands) + " operands, got " +
                     std::to_string(op.num_operands()));
    if (op.results.size() != results)
      error(&op, "expected " + std::to_string(results) + " results, got " +
                     std::to_string(op.results.size()));
  }

  void expect_regions(const Operation &op, std::size_t n, std::size_t args_in_first = 0) {
    if (op.regions.size() != n) {
      error(&op, "expected " + std::to_string(n) + " regions");
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t want = i == 0 ? args_in_first : 0;
      if (op.regions[i]->args.size() != want) error(&op, "wrong number of region arguments");
      if (op.regions[i]->parent_op != &op) error(&op, "region parent link broken");
    }
  }

  void check_gate(const Operation &op) {
    const gates::GateInfo *g = gates::lookup(gate_name(op));
    if (!g) {
      error(&op, "unknown gate");
      return;
    }
    const auto *angles = gate_angles(op);
    std::size_t nq = static_cast<std::size_t>(g->num_qubits);
    std::size_t np = static_cast<std::size_t>(g->num_params);
    if (is_broadcast(op)) {
      if (g->num_qubits != 1) error(&op, "broadcast requires a single-qubit gate");
      nq = 1;
      if (op.num_operands() == 0 || !ty(op.operand(0)).is_qarray())
        error(&op, "broadcast operand must be a qubit array");
    } else {
      if (op.results.size() != nq)
        error(&op, "gate must produce one qubit result per qubit operand");
      for (std::size_t i = 0; i < std::min(nq, op.num_operands()); ++i)
        if (!ty(op.operand(i)).is_qubit()) error(&op, "operand " + std::to_string(i) + " is not a qubit");
      for (ValueId r : op.results)
        if (!ty(r).is_qubit()) error(&op, "gate results must be qubits");
    }
    std::size_t params = op.num_operands() >= nq ? op.num_operands() - nq : 0;
    if (op.num_operands() < nq) error(&op, "too few qubit operands");
    if (angles) {
      if (angles->size() != np || params != 0) error(&op, "angles attribute arity mismatch");
    } else if (params != np) {
      error(&op, "expected " + std::to_string(np) + " parameter operands");
    }
    for (std::size_t i = nq; i < op.num_operands(); ++i)
      if (!ty(op.operand(i)).is_float()) error(&op, "gate parameter must be a float");
  }

  void check_op(const Operation &op, bool last_in_body) {
    const std::string &n = op.name;
    auto operand_ty = [&](std::size_t i) { return i < op.num_operands() ? ty(op.operand(i)) : Type{}; };
    if (is_gate(op)) {
      expect_regions(op, 0);
      return check_gate(op);
    }
    if (n == op::kConstant) {
      expect_counts(op, 0, 1);
      if (!op.has_attr("value")) error(&op, "missing value attribute");
      if (!op.results.empty() && !ty(op.result()).is_numeric()) error(&op, "non-numeric constant");
    } else if (is_arith_binary(n)) {
      expect_counts(op, 2, 1);
      if (op.num_operands() == 2 && op.results.size() == 1 &&
          !(operand_ty(0) == operand_ty(1) && operand_ty(0) == ty(op.result()) &&
            operand_ty(0).is_numeric()))
        error(&op, "operand and result types must match");
    } else if (n == "arith.neg" || n == "arith.not") {
      expect_counts(op, 1, 1);
      if (op.num_operands() == 1 && op.results.size() == 1 && !(operand_ty(0) == ty(op.result())))
        error(&op, "operand and result types must match");
    } else if (n == op::kCmp) {
      expect_counts(op, 2, 1);
      static const std::vector<std::string> preds = {"eq", "ne", "lt", "le", "gt", "ge"};
      auto p = op.str_attr("pred");
      if (!p || std::find(preds.begin(), preds.end(), *p) == preds.end()) error(&op, "bad predicate");
      if (op.num_operands() == 2 && !(operand_ty(0) == operand_ty(1))) error(&op, "operand types differ");
      if (op.results.size() == 1 && !ty(op.result()).is_bool()) error(&op, "cmp result must be i1");
    } else if (n == op::kCast) {
      expect_counts(op, 1, 1);
      if (op.num_operands() == 1 && !operand_ty(0).is_numeric()) error(&op, "cast of non-numeric value");
    } else if (n == op::kMathCall) {
      if (!op.str_attr("fn")) error(&op, "missing fn attribute");
      if (op.results.size() != 1) error(&op, "expected one result");
      for (ValueId v : op.operands())
        if (!ty(v).is_float()) error(&op, "math argument must be a float");
    } else if (n == op::kAlloca) {
      expect_counts(op, 0, 1);
      if (op.results.size() == 1 && !ty(op.result()).is_cell()) error(&op, "alloca must yield a cell");
    } else if (n == op::kLoad) {
      if (op.num_operands() < 1 || op.num_operands() > 2 || op.results.size() != 1) {
        error(&op, "load takes (cell[, index]) and yields one value");
      } else if (!operand_ty(0).is_cell() || !(operand_ty(0).element() == ty(op.result()))) {
        error(&op, "load type mismatch");
      } else if (op.num_operands() == 2 && !operand_ty(1).is_integer_like()) {
        error(&op, "load index must be an integer");
      }
    } else if (n == op::kStore) {
      if (op.num_operands() < 2 || op.num_operands() > 3 || !op.results.empty()) {
        error(&op, "store takes (value, cell[, index])");
      } else if (!operand_ty(1).is_cell() || !(operand_ty(1).element() == operand_ty(0))) {
        error(&op, "store type mismatch");
      } else if (op.num_operands() == 3 && !operand_ty(2).is_integer_like()) {
        error(&op, "store index must be an integer");
      }
    } else if (n == op::kGlobalGet) {
      expect_counts(op, 0, 1);
      auto name = op.str_attr("name");
      const Global *g = name ? module_.find_global(*name) : nullptr;
      if (!g) error(&op, "unknown global");
      else if (op.results.size() == 1 && !(g->type == ty(op.result()))) error(&op, "global type mismatch");
    } else if (n == op::kCall) {
      auto callee = op.str_attr("callee");
      const Function *f = callee ? module_.find(*callee) : nullptr;
      if (!f) {
        error(&op, "call to unknown function");
      } else {
        auto params = f->param_types();
        if (params.size() != op.num_operands()) {
          error(&op, "argument count mismatch");
        } else {
          for (std::size_t i = 0; i < params.size(); ++i) {
            Type a = operand_ty(i), p = params[i];
            bool ok = a == p || (a.is_qarray() && p.is_qarray() && (p.size < 0 || a.size < 0 || a.size == p.size));
            if (!ok) error(&op, "argument " + std::to_string(i) + " type mismatch");
          }
        }
        if (f->result_types.size() != op.results.size()) error(&op, "result count mismatch");
      }
    } else if (n == op::kReturn) {
      if (op.num_operands() != fn_.result_types.size()) {
        error(&op, "return arity does not match function results");
      } else {
        for (std::size_t i = 0; i < op.num_operands(); ++i)
          if (!(operand_ty(i) == fn_.result_types[i])) error(&op, "return type mismatch");
      }
      (void)last_in_body;
    } else if (n == op::kIf) {
      expect_counts(op, 1, 0);
      expect_regions(op, 2);
      if (op.num_operands() == 1 && !operand_ty(0).is_bool()) error(&op, "condition must be i1");
    } else if (n == op::kFor) {
      expect_counts(op, 3, 0);
      expect_regions(op, 1, 1);
      for (std::size_t i = 0; i < op.num_operands(); ++i)
        if (!operand_ty(i).is_index()) error(&op, "loop bounds must be index values");
      if (op.regions.size() == 1 && op.regions[0]->args.size() == 1 &&
          !ty(op.regions[0]->args[0]).is_index())
        error(&op, "induction variable must be an index");
    } else if (n == op::kWhile) {
      expect_counts(op, 0, 0);
      expect_regions(op, 2);
    } else if (n == op::kCondition) {
      expect_counts(op, 1, 0);
      if (op.num_operands() == 1 && !operand_ty(0).is_bool()) error(&op, "condition must be i1");
    } else if (n == op::kQalloc) {
      expect_counts(op, 0, 1);
      auto size = op.int_attr("size");
      if (!size || *size < 1) error(&op, "size attribute must be >= 1");
      else if (op.results.size() == 1 && !(ty(op.result()) == Type::qarray(*size))) error(&op, "result type must be !qarray<size>");
    } else if (n == op::kDealloc) {
      expect_counts(op, 1, 0);
      if (op.num_operands() == 1 && !operand_ty(0).is_qarray()) error(&op, "dealloc of non-array");
    } else if (n == op::kExtract) {
      expect_counts(op, 2, 1);
      if (!operand_ty(0).is_qarray() || !operand_ty(1).is_integer_like()) error(&op, "extract takes (qarray, integer)");
      if (op.results.size() == 1 && !ty(op.result()).is_qubit()) error(&op, "extract yields a qubit");
    } else if (n == op::kSlice) {
      expect_counts(op, 4, 1);
      if (!operand_ty(0).is_qarray()) error(&op, "slice of non-array");
      for (std::size_t i = 1; i < std::min<std::size_t>(4, op.num_operands()); ++i)
        if (!operand_ty(i).is_integer_like()) error(&op, "slice bounds must be integers");
      if (op.results.size() == 1 && !ty(op.result()).is_qarray()) error(&op, "slice yields a qubit array");
    } else if (n == op::kConcat) {
      if (op.num_operands() < 1 || op.results.size() != 1) error(&op, "concat takes arrays, yields one array");
      for (ValueId v : op.operands())
        if (!ty(v).is_qarray()) error(&op, "concat operand is not an array");
    } else if (n == op::kCtrlRegion) {
      expect_counts(op, 1, 0);
      expect_regions(op, 1);
      if (op.num_operands() == 1 && !operand_ty(0).is_qubit()) error(&op, "control must be a qubit");
    } else if (n == op::kAdjRegion) {
      expect_counts(op, 0, 0);
      expect_regions(op, 1);
    } else if (n == op::kPowRegion) {
      expect_counts(op, 1, 0);
      expect_regions(op, 1);
      if (op.num_operands() == 1 && !operand_ty(0).is_integer_like()) error(&op, "power must be an integer");
    } else if (n == op::kMeasure) {
      expect_counts(op, 1, 2);
      if (op.num_operands() == 1 && !operand_ty(0).is_qubit()) error(&op, "measure takes a qubit");
      if (op.results.size() == 2 && !(ty(op.results[0]).is_bool() && ty(op.results[1]).is_qubit()))
        error(&op, "measure yields (i1, qubit)");
    } else if (n == op::kReset) {
      if (op.num_operands() != 1) {
        error(&op, "reset takes one operand");
      } else if (operand_ty(0).is_qubit()) {
        if (op.results.size() != 1 || !ty(op.result()).is_qubit()) error(&op, "qubit reset yields a qubit");
      } else if (operand_ty(0).is_qarray()) {
        if (!op.results.empty()) error(&op, "array reset has no results");
      } else {
        error(&op, "reset of non-quantum value");
      }
    } else if (n == op::kPrint) {
      if (!op.results.empty()) error(&op, "print has no results");
    } else {
      error(&op, "unknown opcode");
    }
    bool takes_regions = n == op::kIf || n == op::kFor || n == op::kWhile || is_modifier_region(op);
    if (!takes_regions && !op.regions.empty()) error(&op, "unexpected regions");
  }

  const Module &module_;
  const Function &fn_;
  DiagnosticList &out_;
  std::unordered_set<ValueId, ValueIdHash> visible_;
  std::unordered_map<std::uint32_t, int> qubit_uses_;
};

}  // namespace

DiagnosticList verify(const Module &module) {
  DiagnosticList out;
  std::unordered_set<std::string> names;
  for (const auto &fn : module.functions) {
    if (!names.insert(fn->name).second)
      out.push_back(Diagnostic{Severity::Error, "internal: duplicate function @" + fn->name, {}});
    FunctionVerifier(module, *fn, out).run();
  }
  return out;
}

void verify_or_throw(const Module &module, const std::string &stage) {
  DiagnosticList diags = verify(module);
  if (!diags.empty())
    throw InternalError("IR verification failed after " + stage + ": " + diags.front().message);
}

}  // namespace qforge::ir
