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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "harness.hpp"
#include "oracle.hpp"
#include "qforge/driver/cli.hpp"
#include "qforge/driver/fixtures.hpp"
#include "random_programs.hpp"

using namespace qforge;
using namespace qforge::testing;

namespace {

struct NamedSource {
  std::string name;
  std::string source;
};

std::vector<NamedSource> unitary_fixtures() {
  using driver::HeisenbergVariant;
  return {
      {"ghz", driver::ghz_source()},
      {"cancel", driver::cancel_source()},
      {"compute_action", driver::compute_action_source()},
      {"heisenberg", driver::heisenberg_source(3, HeisenbergVariant::ComputeAction, true, 4)},
      {"heisenberg_manual", driver::heisenberg_source(3, HeisenbergVariant::Manual, true, 4)},
      {"trotter", driver::trotter_source(4, 3)},
  };
}

// `width` covers registers that optimization dropped because nothing acts on them.
Matrix traced_unitary(const std::string &source, const driver::CompileOptions &opts, int ccx_cost = 0,
                      int width = 0) {
  auto t = trace_program(source, opts, ccx_cost);
  return unitary(std::max(width, t.num_qubits), t.circuit);
}

std::uint64_t cx_crz(const Trace &t) {
  std::uint64_t n = 0;
  for (const auto &r : t.records) n += r.gate == "cnot" || r.gate == "crz";
  return n;
}

}  // namespace

TEST(Equivalence, OptimizationPreservesFixtureUnitaries) {
  for (const auto &f : unitary_fixtures()) {
    int width = trace_program(f.source, at_level(0)).num_qubits;
    auto o0 = traced_unitary(f.source, at_level(0));
    auto o1 = traced_unitary(f.source, at_level(1), 0, width);
    EXPECT_LT(phase_distance(o0, o1), 1e-9) << f.name;
  }
}

TEST(Equivalence, CcxCostsAgreeWithNativeCcx) {
  auto src = driver::heisenberg_source(3, driver::HeisenbergVariant::Manual, true, 2);
  auto native = traced_unitary(src, at_level(1), 0);
  for (int cost : {5, 6, 7}) EXPECT_LT(phase_distance(native, traced_unitary(src, at_level(1), cost)), 1e-9) << cost;
}

TEST(Equivalence, HeisenbergVariantsImplementSameOperator) {
  for (bool rx : {true, false}) {
    auto ca = traced_unitary(driver::heisenberg_source(3, driver::HeisenbergVariant::ComputeAction, rx, 3), at_level(1));
    auto manual = traced_unitary(driver::heisenberg_source(3, driver::HeisenbergVariant::Manual, rx, 3), at_level(1));
    EXPECT_LT(phase_distance(ca, manual), 1e-9) << rx;
  }
}

TEST(Equivalence, GhzFinalState) {
  for (int level : {0, 1}) {
    auto s = final_state(driver::ghz_source(), at_level(level));
    ASSERT_EQ(s.size(), 8u);
    State want(8, 0.0);
    want[0] = want[7] = 1.0 / std::sqrt(2.0);
    EXPECT_LT(phase_distance(s, want), 1e-12);
  }
}

TEST(Equivalence, StatevectorMatchesOracleOnFixtures) {
  for (const auto &f : unitary_fixtures()) {
    auto t = trace_program(f.source, at_level(0));
    auto want = run(t.num_qubits, t.circuit);
    auto got = final_state(f.source, at_level(1), 5);
    got.resize(want.size(), 0.0);
    EXPECT_LT(phase_distance(got, want), 1e-9) << f.name;
  }
}

TEST(Equivalence, DeuteronSameSeedSameEstimate) {
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    std::vector<std::string> base{"--fixture=deuteron", "--backend=statevector", "--seed=" + std::to_string(seed)};
    std::ostringstream out0, out1, err;
    auto a0 = base, a1 = base;
    a0.push_back("-O0");
    a1.push_back("-O1");
    ASSERT_EQ(driver::run_cli(a0, out0, err), 0) << err.str();
    ASSERT_EQ(driver::run_cli(a1, out1, err), 0) << err.str();
    EXPECT_EQ(out0.str(), out1.str()) << seed;
  }
}

// compute { C } action { A } under a control must equal ctrl @ (C; A; C†) while controlling
// only the action. The compute gates avoid y/h/swap so that their controlled forms expand
// into cnot/crz and the count comparison is meaningful.
TEST(Equivalence, ComputeActionMatchesNaiveControlledForm) {
  std::mt19937_64 rng(20260);
  CircuitOptions compute_opts;
  compute_opts.gate_set = {"x", "cx", "rx", "ry", "rz"};
  CircuitOptions action_opts;
  action_opts.gate_set = {"x", "z", "h", "s", "t", "rx", "ry", "rz", "cx"};
  for (int iter = 0; iter < 60; ++iter) {
    int n = 1 + static_cast<int>(rng() % 3);
    compute_opts.num_qubits = action_opts.num_qubits = n;
    compute_opts.num_gates = 1 + static_cast<int>(rng() % 6);
    action_opts.num_gates = 1 + static_cast<int>(rng() % 4);
    if (n == 1) {
      compute_opts.gate_set = {"x", "rx", "ry", "rz"};
      action_opts.gate_set = {"x", "z", "h", "s", "t", "rx", "ry", "rz"};
    } else {
      compute_opts.gate_set = {"x", "cx", "rx", "ry", "rz"};
      action_opts.gate_set = {"x", "z", "h", "s", "t", "rx", "ry", "rz", "cx"};
    }
    auto c = random_circuit(rng, compute_opts);
    auto a = random_circuit(rng, action_opts);
    std::string head = "OPENQASM 3;\ninclude \"stdgates.inc\";\n";
    std::string tail = "qubit q[" + std::to_string(n) + "];\nqubit c;\nctrl @ u c, q;\n";
    std::string sig = "def u qubit[" + std::to_string(n) + "]:q {\n";
    std::string ca = head + sig + "compute {\n" + circuit_body(c) + "} action {\n" + circuit_body(a) + "}\n}\n" + tail;
    std::string naive = head + sig + circuit_body(c) + circuit_body(a) + circuit_body(inverse(c)) + "}\n" + tail;

    for (int level : {0, 1}) {
      auto tca = trace_program(ca, at_level(level), 6);
      auto tnaive = trace_program(naive, at_level(0), 6);
      EXPECT_LT(phase_distance(unitary(tca.num_qubits, tca.circuit), unitary(tnaive.num_qubits, tnaive.circuit)),
                1e-9)
          << ca;
      EXPECT_LE(cx_crz(tca), cx_crz(tnaive)) << ca;
    }
  }
}

TEST(Equivalence, RuntimeAngleMergeKeepsSemantics) {
  const std::string src =
      "OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit q[2];\nfloat[64] a = 0.4;\nfloat[64] b = -1.1;\n"
      "h q[0];\nrx(a) q[1];\nrx(b) q[1];\nrz(0.3) q[0];\nrz(a) q[0];\nphase(b) q[0];\nphase(0.25) q[0];\n"
      "cx q[0], q[1];\n";
  Circuit want{{"h", {0}, {}},      {"rx", {1}, {0.4}}, {"rx", {1}, {-1.1}},  {"rz", {0}, {0.3}},
               {"rz", {0}, {0.4}},  {"p", {0}, {-1.1}}, {"p", {0}, {0.25}}, {"cx", {0, 1}, {}}};
  auto t = trace_program(src, at_level(1));
  EXPECT_LT(t.circuit.size(), want.size());
  EXPECT_LT(phase_distance(final_state(src, at_level(1)), run(2, want)), 1e-12);
  EXPECT_LT(phase_distance(final_state(src, at_level(0)), run(2, want)), 1e-12);
}
