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

#include "qforge/runtime/gate_matrix.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qforge/support/diagnostic.hpp"
#include "qforge/support/gates.hpp"

namespace qforge::runtime {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

Mat2 diag(cplx a, cplx b) { return {a, 0.0, 0.0, b}; }
Mat2 phase_m(double l) { return diag(1.0, std::exp(kI * l)); }

}  // namespace

Mat2 single_qubit_matrix(std::string_view g, std::span<const double> p) {
  const double r2 = 1.0 / std::sqrt(2.0);
  if (g == "x") return {0.0, 1.0, 1.0, 0.0};
  if (g == "y") return {0.0, -kI, kI, 0.0};
  if (g == "z") return diag(1.0, -1.0);
  if (g == "h") return {r2, r2, r2, -r2};
  if (g == "s") return phase_m(kPi / 2);
  if (g == "sdg") return phase_m(-kPi / 2);
  if (g == "t") return phase_m(kPi / 4);
  if (g == "tdg") return phase_m(-kPi / 4);
  if (g == "phase") return phase_m(p[0]);
  if (g == "rz") return diag(std::exp(-kI * (p[0] / 2)), std::exp(kI * (p[0] / 2)));
  double c = std::cos(p.empty() ? 0.0 : p[0] / 2), s = std::sin(p.empty() ? 0.0 : p[0] / 2);
  if (g == "rx") return {c, -kI * s, -kI * s, c};
  if (g == "ry") return {c, -s, s, c};
  if (g == "u") {
    double phi = p[1], lam = p[2];
    return {c, -std::exp(kI * lam) * s, std::exp(kI * phi) * s, std::exp(kI * (phi + lam)) * c};
  }
  throw RuntimeError("no single-qubit matrix for gate '" + std::string(g) + "'");
}

GateShape gate_shape(std::string_view g, std::span<const double> p) {
  const gates::GateInfo *info = gates::lookup(g);
  if (!info) throw RuntimeError("unknown gate '" + std::string(g) + "'");
  if (p.size() != static_cast<std::size_t>(info->num_params))
    throw RuntimeError("gate '" + std::string(g) + "' expects " + std::to_string(info->num_params) +
                       " parameters");
  if (info->num_qubits == 1) return {0, single_qubit_matrix(g, p)};
  if (g == "swap") return {0, {}, true};
  if (g == "ccx") return {2, single_qubit_matrix("x", {})};
  if (g == "cnot") return {1, single_qubit_matrix("x", {})};
  if (g == "cy") return {1, single_qubit_matrix("y", {})};
  if (g == "cz") return {1, single_qubit_matrix("z", {})};
  if (g == "ch") return {1, single_qubit_matrix("h", {})};
  if (g == "crz") return {1, single_qubit_matrix("rz", p)};
  if (g == "cphase") return {1, single_qubit_matrix("phase", p)};
  throw RuntimeError("no matrix for gate '" + std::string(g) + "'");
}

std::vector<cplx> dense_unitary(std::string_view g, std::span<const double> p) {
  GateShape shape = gate_shape(g, p);
  const gates::GateInfo *info = gates::lookup(g);
  std::size_t k = static_cast<std::size_t>(info->num_qubits), dim = std::size_t{1} << k;
  std::vector<cplx> u(dim * dim, 0.0);
  for (std::size_t col = 0; col < dim; ++col) {
    if (shape.swap) {
      std::size_t row = ((col & 1) << 1) | ((col >> 1) & 1);
      u[row * dim + col] = 1.0;
      continue;
    }
    std::size_t cmask = (std::size_t{1} << shape.controls) - 1;
    std::size_t tbit = std::size_t{1} << shape.controls;
    if ((col & cmask) != cmask) {
      u[col * dim + col] = 1.0;
      continue;
    }
    std::size_t in = (col & tbit) ? 1 : 0;
    for (std::size_t out = 0; out < 2; ++out) {
      std::size_t row = (col & ~tbit) | (out ? tbit : 0);
      u[row * dim + col] = shape.target[out * 2 + in];
    }
  }
  return u;
}

}  // namespace qforge::runtime
