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

#include "qforge/runtime/synthesis.hpp"

#include <algorithm>
#include <numbers>
#include <optional>
#include <string>

#include "qforge/support/diagnostic.hpp"
#include "qforge/support/gates.hpp"

namespace qforge::runtime {

namespace {

constexpr double kPi = std::numbers::pi;

GateRecord rec(std::string gate, std::vector<QubitId> qubits, std::vector<double> params = {}) {
  return {std::move(gate), std::move(qubits), std::move(params), Segment::None};
}

/// Same unitary as `r`, over gates whose controlled forms are direct.
std::vector<GateRecord> expand_for_control(const GateRecord &r) {
  const auto &q = r.qubits;
  const auto &g = r.gate;
  if (g == "crz") {
    double h = r.params[0] / 2;
    return {rec("rz", {q[1]}, {h}), rec("cnot", {q[0], q[1]}), rec("rz", {q[1]}, {-h}), rec("cnot", {q[0], q[1]})};
  }
  if (g == "cphase") {
    double h = r.params[0] / 2;
    return {rec("phase", {q[0]}, {h}), rec("phase", {q[1]}, {h}), rec("cnot", {q[0], q[1]}),
            rec("phase", {q[1]}, {-h}), rec("cnot", {q[0], q[1]})};
  }
  if (g == "cz") return {rec("h", {q[1]}), rec("cnot", {q[0], q[1]}), rec("h", {q[1]})};
  if (g == "cy") return {rec("sdg", {q[1]}), rec("cnot", {q[0], q[1]}), rec("s", {q[1]})};
  if (g == "ch")
    return {rec("s", {q[1]}),  rec("h", {q[1]}), rec("t", {q[1]}),  rec("cnot", {q[0], q[1]}),
            rec("tdg", {q[1]}), rec("h", {q[1]}), rec("sdg", {q[1]})};
  if (g == "swap") return {rec("cnot", {q[0], q[1]}), rec("cnot", {q[1], q[0]}), rec("cnot", {q[0], q[1]})};
  if (g == "ccx") return decompose_ccx(q[0], q[1], q[2], 6);
  return {};
}

void controlled_one(const GateRecord &r, QubitId c, std::vector<GateRecord> &out) {
  const auto &g = r.gate;
  const auto &q = r.qubits;
  if (std::find(q.begin(), q.end(), c) != q.end())
    throw RuntimeError("gate '" + g + "' acts on its own control qubit");
  auto push = [&](GateRecord x) { out.push_back(std::move(x)); };
  std::optional<double> z_angle = gates::z_family_angle(g);
  if (g == "x") return push(rec("cnot", {c, q[0]}));
  if (g == "y") return push(rec("cy", {c, q[0]}));
  if (g == "z") return push(rec("cz", {c, q[0]}));
  if (g == "h") return push(rec("ch", {c, q[0]}));
  if (z_angle) return push(rec("cphase", {c, q[0]}, {*z_angle}));
  if (g == "phase") return push(rec("cphase", {c, q[0]}, r.params));
  if (g == "rz") return push(rec("crz", {c, q[0]}, r.params));
  if (g == "rx") {
    push(rec("h", {q[0]}));
    push(rec("crz", {c, q[0]}, r.params));
    return push(rec("h", {q[0]}));
  }
  if (g == "ry") {
    push(rec("sdg", {q[0]}));
    push(rec("h", {q[0]}));
    push(rec("crz", {c, q[0]}, r.params));
    push(rec("h", {q[0]}));
    return push(rec("s", {q[0]}));
  }
  if (g == "u") {
    double th = r.params[0], phi = r.params[1], lam = r.params[2];
    push(rec("phase", {c}, {(lam + phi) / 2}));
    push(rec("phase", {q[0]}, {(lam - phi) / 2}));
    push(rec("cnot", {c, q[0]}));
    push(rec("u", {q[0]}, {-th / 2, 0.0, -(phi + lam) / 2}));
    push(rec("cnot", {c, q[0]}));
    return push(rec("u", {q[0]}, {th / 2, phi, 0.0}));
  }
  if (g == "cnot") return push(rec("ccx", {c, q[0], q[1]}));
  auto parts = expand_for_control(r);
  if (parts.empty()) throw RuntimeError("no controlled form for gate '" + g + "'");
  for (const auto &p : parts) controlled_one(p, c, out);
}

}  // namespace

std::vector<GateRecord> synthesize_controlled(std::span<const GateRecord> records, QubitId ctrl) {
  std::vector<GateRecord> out;
  for (const auto &r : records) {
    if (r.segment != Segment::None) {
      out.push_back(r);
      continue;
    }
    controlled_one(r, ctrl, out);
  }
  return out;
}

std::vector<GateRecord> synthesize_adjoint(std::span<const GateRecord> records) {
  std::vector<GateRecord> out;
  out.reserve(records.size());
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    GateRecord r = *it;
    r.params = gates::dagger_params(r.gate, r.params);
    r.gate = gates::dagger_name(r.gate);
    if (r.segment == Segment::Compute) r.segment = Segment::Uncompute;
    else if (r.segment == Segment::Uncompute) r.segment = Segment::Compute;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<GateRecord> synthesize_power(std::span<const GateRecord> records, std::int64_t k) {
  std::vector<GateRecord> base;
  if (k < 0) base = synthesize_adjoint(records);
  else base.assign(records.begin(), records.end());
  std::uint64_t times = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  std::vector<GateRecord> out;
  out.reserve(base.size() * times);
  for (std::uint64_t i = 0; i < times; ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

std::vector<GateRecord> decompose_ccx(QubitId a, QubitId b, QubitId t, int cost) {
  switch (cost) {
    case 5:
      // ccz from controlled-rz; each crz is a cphase up to a phase on its control, undone here.
      return {rec("h", {t}),
              rec("crz", {b, t}, {kPi / 2}),  rec("phase", {b}, {kPi / 4}), rec("cnot", {a, b}),
              rec("crz", {b, t}, {-kPi / 2}), rec("phase", {b}, {-kPi / 4}), rec("cnot", {a, b}),
              rec("crz", {a, t}, {kPi / 2}),  rec("phase", {a}, {kPi / 4}), rec("h", {t})};
    case 6:
      return {rec("h", {t}),       rec("cnot", {b, t}), rec("tdg", {t}),     rec("cnot", {a, t}),
              rec("t", {t}),       rec("cnot", {b, t}), rec("tdg", {t}),     rec("cnot", {a, t}),
              rec("t", {b}),       rec("t", {t}),       rec("h", {t}),       rec("cnot", {a, b}),
              rec("t", {a}),       rec("tdg", {b}),     rec("cnot", {a, b})};
    case 7:
      // Uncorrected crz form leaves a controlled-phase(-pi/2) on (a, b); cancel it with two cnots.
      return {rec("h", {t}),
              rec("crz", {b, t}, {kPi / 2}),  rec("cnot", {a, b}), rec("crz", {b, t}, {-kPi / 2}),
              rec("cnot", {a, b}),             rec("crz", {a, t}, {kPi / 2}), rec("h", {t}),
              rec("phase", {a}, {kPi / 4}),    rec("phase", {b}, {kPi / 4}),  rec("cnot", {a, b}),
              rec("phase", {b}, {-kPi / 4}),   rec("cnot", {a, b})};
    default:
      throw RuntimeError("unsupported ccx decomposition cost " + std::to_string(cost) +
                         " (expected 5, 6, or 7)");
  }
}

}  // namespace qforge::runtime
