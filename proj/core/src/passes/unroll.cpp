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
#include "qforge/passes/passes.hpp"

namespace qforge::passes {

using namespace ir;
using detail::const_int;

namespace {

bool contains_loop(const Region &region) {
  bool found = false;
  walk(region, [&](const Operation &op) {
    if (op.name == op::kFor || op.name == op::kWhile) found = true;
  });
  return found;
}

// Body size for the unroll budget. Pure classical ops are skipped because const-prop folds
// most of them, and counting them would let a second pipeline run unroll more than the first.
std::int64_t unroll_weight(const Region &region) {
  std::int64_t n = 0;
  walk(region, [&](const Operation &op) {
    bool pure = op.name.rfind("arith.", 0) == 0 || op.name.rfind("math.", 0) == 0 || op.name == op::kGlobalGet;
    if (!pure) ++n;
  });
  return n;
}

std::optional<std::int64_t> trip_count(const Function &fn, const Operation &loop) {
  auto lb = const_int(fn, loop.operand(0));
  auto ub = const_int(fn, loop.operand(1));
  auto step = const_int(fn, loop.operand(2));
  if (!lb || !ub || !step || *step == 0) return std::nullopt;
  std::int64_t span = *step > 0 ? *ub - *lb : *lb - *ub;
  std::int64_t mag = *step > 0 ? *step : -*step;
  return span > 0 ? (span + mag - 1) / mag : 0;
}

class Unroller {
 public:
  Unroller(Function &fn, const PassConfig &config) : fn_(fn), config_(config) {}

  bool run() {
    bool changed = false;
    // Unrolling an inner loop can make its parent innermost; iterate to a fixpoint.
    while (sweep(fn_.body)) changed = true;
    if (expand_broadcasts(fn_.body)) changed = true;
    fn_.purge();
    return changed;
  }

 private:
  bool sweep(Region &region) {
    bool changed = false;
    for (std::size_t i = 0; i < region.ops.size(); ++i) {
      Operation *op = region.ops[i].get();
      if (op->erased) continue;
      for (auto &r : op->regions) changed |= sweep(*r);
      if (op->name == op::kFor && try_unroll(*op)) {
        changed = true;
        // The replacement ops now occupy this slot onward; they contain no loops.
      }
    }
    return changed;
  }

  bool try_unroll(Operation &loop) {
    Region &body = loop.region();
    if (contains_loop(body)) return false;
    auto trip = trip_count(fn_, loop);
    if (!trip) return false;
    std::int64_t size = unroll_weight(body);
    if (*trip > 0 && (*trip > config_.unroll_op_budget || *trip * std::max<std::int64_t>(size, 1) > config_.unroll_op_budget))
      return false;
    if (budget_used_ + *trip > config_.unroll_threshold) return false;
    budget_used_ += *trip;

    std::int64_t lb = *const_int(fn_, loop.operand(0));
    std::int64_t step = *const_int(fn_, loop.operand(2));
    Attributes iv_attrs;
    if (auto seg = loop.attrs.find("segment"); seg != loop.attrs.end()) iv_attrs.insert(*seg);
    std::vector<std::unique_ptr<Operation>> out;
    for (std::int64_t k = 0; k < *trip; ++k) {
      Attributes a = iv_attrs;
      a["value"] = lb + k * step;
      auto iv = fn_.make_op(std::string(op::kConstant), {}, {Type::index()}, std::move(a), loop.loc);
      ValueMap map;
      map[body.args[0]] = iv->result();
      out.push_back(std::move(iv));
      for (const auto &op : body.ops)
        if (!op->erased) out.push_back(fn_.clone_from(fn_, *op, map));
    }
    fn_.replace_with_many(loop, std::move(out));
    return true;
  }

  /// Root array and element offset/stride for an array built from constant slices.
  struct ArrayView {
    ValueId root;
    std::int64_t start = 0, stride = 1;
  };

  std::optional<ArrayView> view_of(ValueId array) {
    const Operation *def = fn_.def(array);
    if (!def || def->name != op::kSlice) return ArrayView{array, 0, 1};
    auto a = const_int(fn_, def->operand(1));
    auto s = const_int(fn_, def->operand(2));
    if (!a || !s) return std::nullopt;
    auto inner = view_of(def->operand(0));
    if (!inner) return std::nullopt;
    return ArrayView{inner->root, inner->start + *a * inner->stride, *s * inner->stride};
  }

  bool expand_broadcasts(Region &region) {
    bool changed = false;
    for (std::size_t i = 0; i < region.ops.size(); ++i) {
      Operation *op = region.ops[i].get();
      if (op->erased) continue;
      for (auto &r : op->regions) changed |= expand_broadcasts(*r);
      if (!is_broadcast(*op)) continue;
      std::int64_t n = fn_.type(op->operand(0)).size;
      if (n < 0 || 3 * n > config_.unroll_op_budget) continue;
      auto view = view_of(op->operand(0));
      if (!view) continue;
      Attributes attrs = op->attrs;
      bool reverse = attrs.count("reverse") > 0;
      attrs.erase("reverse");
      Attributes cattrs;
      if (auto seg = attrs.find("segment"); seg != attrs.end()) cattrs.insert(*seg);
      std::vector<ValueId> params = gate_param_operands(*op);
      std::vector<std::unique_ptr<Operation>> out;
      for (std::int64_t j = 0; j < n; ++j) {
        std::int64_t k = reverse ? n - 1 - j : j;
        Attributes ca = cattrs;
        ca["value"] = view->start + k * view->stride;
        auto idx = fn_.make_op(std::string(op::kConstant), {}, {Type::index()}, std::move(ca), op->loc);
        auto ext = fn_.make_op(std::string(op::kExtract), {view->root, idx->result()}, {Type::qubit()},
                               cattrs, op->loc);
        std::vector<ValueId> operands{ext->result()};
        operands.insert(operands.end(), params.begin(), params.end());
        auto gate = fn_.make_op(op->name, std::move(operands), {Type::qubit()}, attrs, op->loc);
        out.push_back(std::move(idx));
        out.push_back(std::move(ext));
        out.push_back(std::move(gate));
      }
      fn_.replace_with_many(*op, std::move(out));
      i += static_cast<std::size_t>(3 * n) - 1;
      changed = true;
    }
    return changed;
  }

  Function &fn_;
  const PassConfig &config_;
  std::int64_t budget_used_ = 0;
};

}  // namespace

bool unroll_affine_loops(Module &module, const PassConfig &config) {
  bool changed = false;
  detail::for_each_function(module, [&](Function &fn) { changed |= Unroller(fn, config).run(); });
  return changed;
}

}  // namespace qforge::passes
