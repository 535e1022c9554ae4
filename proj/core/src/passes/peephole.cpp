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

#include <cmath>
#include <numbers>

#include "pass_utils.hpp"
#include "qforge/passes/passes.hpp"
#include "qforge/support/gates.hpp"

namespace qforge::passes {

using namespace ir;
using namespace detail;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-12;

/// A single-qubit gate seen as a rotation. `phase_type` gates are diag(1, e^{iθ}) exactly;
/// the others match their rotation up to a global phase.
struct Rot {
  char axis;
  double angle;
  bool phase_type;
  bool named_pauli;
};

std::optional<Rot> as_rotation(const Function &fn, const Operation &op) {
  if (!rewritable(op) || op.results.size() != 1) return std::nullopt;
  std::string g = gate_name(op);
  if (g == "x") return Rot{'x', kPi, false, true};
  if (g == "y") return Rot{'y', kPi, false, true};
  if (auto z = gates::z_family_angle(g)) return Rot{'z', *z, true, g == "z"};
  if (g != "rx" && g != "ry" && g != "rz" && g != "phase") return std::nullopt;
  auto p = const_params(fn, op);
  if (!p || p->size() != 1) return std::nullopt;
  if (g == "phase") return Rot{'z', (*p)[0], true, false};
  return Rot{g[1], (*p)[0], false, false};
}

/// Gate name and angles for a rotation; nullopt name means identity (up to global phase).
std::optional<std::pair<std::string, std::vector<double>>> rotation_gate(const Rot &r) {
  double a = wrap_angle(r.angle);
  if (std::abs(a) < kTol) return std::nullopt;
  if (r.named_pauli && std::abs(std::abs(a) - kPi) < kTol) return std::pair{std::string(1, r.axis), std::vector<double>{}};
  if (r.axis == 'z' && r.phase_type) {
    static const std::pair<const char *, double> named[] = {
        {"z", kPi}, {"s", kPi / 2}, {"sdg", -kPi / 2}, {"t", kPi / 4}, {"tdg", -kPi / 4}};
    for (const auto &[name, angle] : named)
      if (std::abs(a - angle) < kTol || (angle == kPi && std::abs(a + kPi) < kTol))
        return std::pair{std::string(name), std::vector<double>{}};
    return std::pair{std::string("phase"), std::vector<double>{a}};
  }
  return std::pair{std::string("r") + r.axis, std::vector<double>{a}};
}

/// Replaces the window ending at `last` (whose qubit result continues the line) with `r`
/// applied to `input`, erasing `dead` ops. Returns the new op, or null for identity.
Operation *replace_line(Function &fn, ValueId input, Operation &last, const std::vector<Operation *> &dead,
                        const Rot &r) {
  auto gate = rotation_gate(r);
  if (!gate) {
    fn.replace_all_uses(last.result(), input);
    fn.erase(last);
    for (Operation *d : dead) fn.erase(*d);
    return nullptr;
  }
  auto m = make_gate(fn, gate->first, {input}, gate->second, last);
  fn.replace_all_uses(last.result(), m->result());
  Operation *out = fn.replace(last, std::move(m));
  for (Operation *d : dead) fn.erase(*d);
  return out;
}

/// The gate right after `op` on its single qubit line, when rewritable.
Operation *next_on_line(const Function &fn, const Operation &op) {
  Operation *b = sole_user(fn, op.result());
  if (!b || !rewritable(*b) || b->results.size() != 1 || b->operand(0) != op.result()) return nullptr;
  return b;
}

// ---- identity pairs -------------------------------------------------------------------

bool params_match(const std::vector<double> &a, const std::vector<double> &b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > kTol) return false;
  return true;
}

bool cancel_pair(Function &fn, Operation &a) {
  if (!rewritable(a)) return false;
  std::size_t nq = a.results.size();
  Operation *b = sole_user(fn, a.result(0));
  if (!b || !rewritable(*b) || b->results.size() != nq) return false;
  std::string ga = gate_name(a), gb = gate_name(*b);
  if (gates::dagger_name(ga) != gb) return false;
  auto pa = const_params(fn, a), pb = const_params(fn, *b);
  if (!pa || !pb || !params_match(gates::dagger_params(ga, *pa), *pb)) return false;
  // Every line of `a` must feed `b` directly, in order (or swapped for symmetric gates).
  std::vector<std::size_t> perm(nq);
  bool ordered = true;
  for (std::size_t j = 0; j < nq; ++j) {
    if (sole_user(fn, a.result(j)) != b) return false;
    auto pos = operand_slot(*b, a.result(j), nq);
    if (!pos) return false;
    perm[j] = *pos;
    ordered &= *pos == j;
  }
  if (!ordered && !gates::lookup(ga)->symmetric) return false;
  for (std::size_t j = 0; j < nq; ++j) fn.replace_all_uses(b->result(perm[j]), a.operand(j));
  fn.erase(*b);
  fn.erase(a);
  return true;
}

bool cancel_reset(Function &fn, Operation &a) {
  if (a.name != op::kReset || a.results.size() != 1 || !segment_of(a).empty()) return false;
  for (const Region *r = a.parent; r && r->parent_op; r = r->parent_op->parent)
    if (is_modifier_region(*r->parent_op)) return false;
  bool changed = false;
  for (Operation *b = sole_user(fn, a.result()); b && b->name == op::kReset && segment_of(*b).empty();
       b = sole_user(fn, a.result())) {
    fn.replace_all_uses(b->result(), a.result());
    fn.erase(*b);
    changed = true;
  }
  return changed;
}

// ---- merging -------------------------------------------------------------------------------

Operation *merge_two_qubit(Function &fn, Operation &a, bool &changed) {
  std::string g = gate_name(a);
  if (g != "crz" && g != "cphase") return nullptr;
  Operation *b = sole_user(fn, a.result(0));
  if (!b || b == &a || !rewritable(*b) || gate_name(*b) != g) return nullptr;
  if (sole_user(fn, a.result(1)) != b) return nullptr;
  bool straight = b->operand(0) == a.result(0) && b->operand(1) == a.result(1);
  bool swapped = g == "cphase" && b->operand(0) == a.result(1) && b->operand(1) == a.result(0);
  if (!straight && !swapped) return nullptr;
  auto pa = const_params(fn, a), pb = const_params(fn, *b);
  if (!pa || !pb) return nullptr;
  double sum = (*pa)[0] + (*pb)[0];
  double period = g == "crz" ? 4 * kPi : 2 * kPi;
  std::size_t r0 = straight ? 0 : 1, r1 = straight ? 1 : 0;
  changed = true;
  if (near_zero_mod(sum, period)) {
    fn.replace_all_uses(b->result(r0), a.operand(0));
    fn.replace_all_uses(b->result(r1), a.operand(1));
    fn.erase(*b);
    fn.erase(a);
    return nullptr;
  }
  double angle = std::remainder(sum, period);
  auto m = make_gate(fn, g, {a.operand(0), a.operand(1)}, {angle}, *b);
  fn.replace_all_uses(b->result(r0), m->result(0));
  fn.replace_all_uses(b->result(r1), m->result(1));
  Operation *out = fn.replace(*b, std::move(m));
  fn.erase(a);
  return out;
}

/// Angle of a one-parameter gate as an SSA value, materializing a literal before `pos`.
ValueId angle_value(Function &fn, const Operation &g, Operation &pos) {
  if (const auto *angles = gate_angles(g))
    return fn.insert_before(pos, fn.make_op(std::string(op::kConstant), {}, {Type::f64()},
                                            {{"value", angles->at(0)}}, g.loc))
        ->result();
  return gate_param_operands(g).at(0);
}

/// Same-name rotations where an angle is only known at run time: r(a)·r(b) = r(a + b).
Operation *merge_runtime(Function &fn, Operation &a, Operation &b, bool &changed) {
  std::string g = gate_name(a);
  if (gate_name(b) != g || (g != "rx" && g != "ry" && g != "rz" && g != "phase")) return nullptr;
  ValueId x = angle_value(fn, a, b);
  ValueId y = angle_value(fn, b, b);
  ValueId sum = fn.insert_before(b, fn.make_op("arith.add", {x, y}, {Type::f64()}, {}, b.loc))->result();
  auto m = fn.make_op(b.name, {a.operand(0), sum}, {Type::qubit()}, {}, b.loc);
  fn.replace_all_uses(b.result(), m->result());
  Operation *out = fn.replace(b, std::move(m));
  fn.erase(a);
  changed = true;
  return out;
}

/// CanMerge and the merged replacement; returns the merged op so it can merge again.
Operation *try_merge(Function &fn, Operation &a, bool &changed) {
  if (!rewritable(a)) return nullptr;
  if (a.results.size() == 2) return merge_two_qubit(fn, a, changed);
  if (a.results.size() != 1) return nullptr;
  Operation *b = next_on_line(fn, a);
  if (!b) return nullptr;
  auto ra = as_rotation(fn, a);
  auto rb = as_rotation(fn, *b);
  if (!ra || !rb) return merge_runtime(fn, a, *b, changed);
  if (rb->axis != ra->axis) return nullptr;
  Rot merged{ra->axis, ra->angle + rb->angle, ra->phase_type && rb->phase_type, false};
  changed = true;
  return replace_line(fn, a.operand(0), *b, {&a}, merged);
}

// ---- permutation ---------------------------------------------------------------------------

bool try_permute(Function &fn, Operation &a) {
  auto ra = as_rotation(fn, a);
  if (!ra) return false;
  Operation *b = sole_user(fn, a.result());
  if (!b || !rewritable(*b) || b->results.size() != 2) return false;
  auto pos = operand_slot(*b, a.result(), 2);
  if (!pos) return false;
  std::string g = gate_name(*b);
  bool commutes = (ra->axis == 'z' && ((g == "cnot" && *pos == 0) || g == "cz" || g == "cphase" || g == "crz")) ||
                  (ra->axis == 'x' && g == "cnot" && *pos == 1);
  if (!commutes) return false;
  // Only worth it when the gate on the far side merges with `a` afterwards.
  Operation *c = sole_user(fn, b->result(*pos));
  if (!c || !rewritable(*c) || c->results.size() != 1 || c->operand(0) != b->result(*pos)) return false;
  auto rc = as_rotation(fn, *c);
  if (!rc || rc->axis != ra->axis) return false;

  ValueId input = a.operand(0);
  fn.set_operand(*b, *pos, input);
  std::vector<ValueId> operands{b->result(*pos)};
  for (std::size_t i = 1; i < a.operands().size(); ++i) operands.push_back(a.operand(i));
  auto moved = fn.make_op(a.name, std::move(operands), {Type::qubit()}, a.attrs, a.loc);
  Operation *placed = fn.insert_before(*c, std::move(moved));
  fn.set_operand(*c, 0, placed->result());
  fn.erase(a);
  return true;
}

// ---- sequence simplification -------------------------------------------------------------

/// `p · r · p` for a conjugating gate `p` (h or a Pauli) collapses to a single rotation.
bool try_window(Function &fn, Operation &a) {
  if (!rewritable(a) || a.results.size() != 1) return false;
  std::string ga = gate_name(a);
  if (ga != "h" && ga != "x" && ga != "y" && ga != "z") return false;
  Operation *b = next_on_line(fn, a);
  if (!b) return false;
  Operation *c = next_on_line(fn, *b);
  if (!c || gate_name(*c) != ga) return false;
  auto rb = as_rotation(fn, *b);
  if (!rb) return false;
  Rot out = *rb;
  if (ga == "h") {
    // H swaps the x and z axes and flips y.
    if (rb->axis == 'x') out = Rot{'z', rb->angle, rb->named_pauli, rb->named_pauli};
    else if (rb->axis == 'z') out = Rot{'x', rb->angle, false, rb->named_pauli};
    else out = Rot{'y', -rb->angle, false, rb->named_pauli};
  } else {
    if (rb->axis == ga[0]) return false;  // same axis: merging handles it
    out.angle = -rb->angle;
  }
  replace_line(fn, a.operand(0), *c, {b, &a}, out);
  return true;
}

template <typename F>
bool sweep(Module &module, F &&try_op) {
  bool changed = false;
  for_each_function(
      module,
      [&](Function &fn) {
        for (Region *region : regions_of(fn))
          for (std::size_t i = 0; i < region->ops.size(); ++i) {
            Operation *op = region->ops[i].get();
            if (!op->erased) changed |= try_op(fn, *op);
          }
        fn.purge();
      },
      /*rewriting=*/true);
  return changed;
}

}  // namespace

bool remove_identity_pairs(Module &module) {
  return sweep(module, [](Function &fn, Operation &op) { return cancel_pair(fn, op) || cancel_reset(fn, op); });
}

bool merge_rotations(Module &module) {
  return sweep(module, [](Function &fn, Operation &op) {
    bool changed = false;
    Operation *cur = &op;
    while (cur && !cur->erased) cur = try_merge(fn, *cur, changed);
    return changed;
  });
}

bool permute_commuting_gates(Module &module) { return sweep(module, try_permute); }

bool simplify_gate_sequences(Module &module) { return sweep(module, try_window); }

}  // namespace qforge::passes
