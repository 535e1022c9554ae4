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

#include <cmath>
#include <numbers>

#include "oracle.hpp"

using namespace qforge::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix m(int n, const Circuit &c) { return unitary(n, c); }

double dist(const Matrix &a, const Matrix &b) { return phase_distance(a, b); }

}  // namespace

TEST(Oracle, SelfInverseGates) {
  for (const char *g : {"x", "y", "z", "h"})
    EXPECT_LT(dist(m(1, {{g, {0}, {}}, {g, {0}, {}}}), Matrix::identity(2)), 1e-12) << g;
  EXPECT_LT(dist(m(2, {{"cx", {0, 1}, {}}, {"cx", {0, 1}, {}}}), Matrix::identity(4)), 1e-12);
}

TEST(Oracle, CliffordIdentities) {
  EXPECT_LT(dist(m(1, {{"h", {0}, {}}, {"z", {0}, {}}, {"h", {0}, {}}}), m(1, {{"x", {0}, {}}})), 1e-12);
  EXPECT_LT(dist(m(1, {{"s", {0}, {}}, {"s", {0}, {}}}), m(1, {{"z", {0}, {}}})), 1e-12);
  EXPECT_LT(dist(m(1, {{"t", {0}, {}}, {"t", {0}, {}}}), m(1, {{"s", {0}, {}}})), 1e-12);
  EXPECT_LT(dist(m(1, {{"t", {0}, {}}, {"tdg", {0}, {}}}), Matrix::identity(2)), 1e-12);
}

TEST(Oracle, SwapIsThreeCnots) {
  Circuit three{{"cx", {0, 1}, {}}, {"cx", {1, 0}, {}}, {"cx", {0, 1}, {}}};
  EXPECT_LT(dist(m(2, three), m(2, {{"swap", {0, 1}, {}}})), 1e-12);
}

TEST(Oracle, CnotBitOrder) {
  // Control is operand 0: |01> (bit 0 set) flips bit 1.
  auto s = run(2, {{"cx", {0, 1}, {}}}, basis_state(2, 1));
  EXPECT_NEAR(std::abs(s[3]), 1.0, 1e-12);
  s = run(2, {{"cx", {0, 1}, {}}}, basis_state(2, 2));
  EXPECT_NEAR(std::abs(s[2]), 1.0, 1e-12);
}

TEST(Oracle, ExactPhases) {
  auto t = gate_matrix({"t", {0}, {}});
  EXPECT_NEAR(std::abs(t(0, 0) - cplx(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(t(1, 1) - std::polar(1.0, kPi / 4)), 0.0, 1e-12);
  auto rz = gate_matrix({"rz", {0}, {0.5}});
  EXPECT_NEAR(std::abs(rz(0, 0) - std::polar(1.0, -0.25)), 0.0, 1e-12);
  auto p = gate_matrix({"p", {0}, {0.5}});
  EXPECT_NEAR(std::abs(p(0, 0) - cplx(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p(1, 1) - std::polar(1.0, 0.5)), 0.0, 1e-12);
}

TEST(Oracle, RotationComposition) {
  for (const char *g : {"rx", "ry", "rz"}) {
    EXPECT_LT(dist(m(1, {{g, {0}, {0.3}}, {g, {0}, {0.4}}}), m(1, {{g, {0}, {0.7}}})), 1e-12) << g;
    // A 2π rotation is -I, equal to I up to global phase only.
    auto full = gate_matrix({g, {0}, {2 * kPi}});
    EXPECT_NEAR(std::abs(full(0, 0) + 1.0), 0.0, 1e-12) << g;
  }
}

TEST(Oracle, UGateSpecialCases) {
  EXPECT_LT(dist(m(1, {{"u", {0}, {kPi / 2, 0, kPi}}}), m(1, {{"h", {0}, {}}})), 1e-12);
  EXPECT_LT(dist(m(1, {{"u", {0}, {kPi, 0, kPi}}}), m(1, {{"x", {0}, {}}})), 1e-12);
}

TEST(Oracle, ControlledGatesViaDecomposition) {
  // cz = (I⊗h) cx (I⊗h)
  Circuit cz{{"h", {1}, {}}, {"cx", {0, 1}, {}}, {"h", {1}, {}}};
  EXPECT_LT(dist(m(2, cz), m(2, {{"cz", {0, 1}, {}}})), 1e-12);
  // crz(θ) = rz(θ/2) cx rz(-θ/2) cx on the target
  double th = 0.9;
  Circuit crz{{"rz", {1}, {th / 2}}, {"cx", {0, 1}, {}}, {"rz", {1}, {-th / 2}}, {"cx", {0, 1}, {}}};
  EXPECT_LT(dist(m(2, crz), m(2, {{"crz", {0, 1}, {th}}})), 1e-12);
  // The controlled phase is exact, not merely up to phase.
  auto cp = m(2, {{"cp", {0, 1}, {th}}});
  EXPECT_NEAR(std::abs(cp(3, 3) - std::polar(1.0, th)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(cp(1, 1) - cplx(1, 0)), 0.0, 1e-12);
}

TEST(Oracle, ToffoliTruthTable) {
  for (std::uint64_t b = 0; b < 8; ++b) {
    auto s = run(3, {{"ccx", {0, 1, 2}, {}}}, basis_state(3, b));
    std::uint64_t want = (b & 3) == 3 ? b ^ 4 : b;
    EXPECT_NEAR(std::abs(s[want]), 1.0, 1e-12) << b;
  }
}

TEST(Oracle, InverseUndoesCircuit) {
  Circuit c{{"h", {0}, {}}, {"t", {1}, {}}, {"cx", {0, 2}, {}}, {"u", {2}, {0.1, 0.2, 0.3}},
            {"crz", {2, 1}, {0.4}}, {"swap", {0, 1}, {}}, {"ccx", {1, 2, 0}, {}}, {"sdg", {0}, {}},
            {"ry", {1}, {-1.3}}, {"cp", {0, 2}, {0.6}}, {"ch", {1, 0}, {}}, {"cy", {2, 0}, {}}};
  Circuit both = c;
  for (auto &g : inverse(c)) both.push_back(g);
  EXPECT_LT(dist(m(3, both), Matrix::identity(8)), 1e-12);
}

TEST(Oracle, UnitarityAndNorm) {
  Circuit c{{"h", {0}, {}}, {"rx", {1}, {0.7}}, {"cx", {0, 1}, {}}, {"u", {1}, {1, 2, 3}}};
  auto u = m(2, c);
  EXPECT_LT(dist(dagger(u) * u, Matrix::identity(4)), 1e-12);
  auto s = run(2, c);
  double norm = 0;
  for (auto a : s) norm += std::norm(a);
  EXPECT_NEAR(norm, 1.0, 1e-12);
}

TEST(Oracle, PhaseDistanceIgnoresGlobalPhaseOnly) {
  State a{cplx(1, 0), cplx(0, 0)};
  State b{std::polar(1.0, 1.1), cplx(0, 0)};
  EXPECT_LT(phase_distance(a, b), 1e-12);
  State c{cplx(0, 0), cplx(1, 0)};
  EXPECT_GT(phase_distance(a, c), 0.5);
}

TEST(Oracle, QasmRendering) {
  EXPECT_EQ(to_qasm({"cx", {0, 2}, {}}), "cx q[0], q[2];");
  EXPECT_EQ(to_qasm({"rz", {1}, {0.5}}, "r"), "rz(0.5) r[1];");
}
