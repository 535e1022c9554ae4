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

#include "qforge/driver/fixtures.hpp"

#include <charconv>

namespace qforge::driver {

namespace {

std::string shortest(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, r.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

std::string ghz_source() {
  return "OPENQASM 3;\n"
         "include \"stdgates.inc\";\n"
         "\n"
         "qubit q[3];\n"
         "h q[0];\n"
         "cnot q[0], q[1];\n"
         "cnot q[1], q[2];\n";
}

std::string deuteron_source(double theta, int shots) {
  return "OPENQASM 3;\n"
         "include \"stdgates.inc\";\n"
         "\n"
         "const shots = " + std::to_string(shots) + ";\n"
         "\n"
         "def ansatz(float[64]:theta) qubit[2]:q {\n"
         "  x q[0];\n"
         "  ry(theta) q[1];\n"
         "  cx q[1], q[0];\n"
         "}\n"
         "\n"
         "def compute(float[64]:theta) qubit[2]:q -> float[64] {\n"
         "  bit first, second;\n"
         "  float[64] num_parity_ones = 0.0;\n"
         "  float[64] result;\n"
         "  for i in [0:shots] {\n"
         "    ansatz(theta) q;\n"
         "    h q;\n"
         "    first = measure q[0];\n"
         "    second = measure q[1];\n"
         "    if (first != second) {\n"
         "      num_parity_ones += 1.0;\n"
         "    }\n"
         "    reset q;\n"
         "  }\n"
         "  result = (shots - num_parity_ones) / shots - num_parity_ones / shots;\n"
         "  return result;\n"
         "}\n"
         "\n"
         "float[64] theta, exp_val;\n"
         "qubit qq[2];\n"
         "theta = " + shortest(theta) + ";\n"
         "exp_val = compute(theta) qq;\n"
         "print(\"Avg <X0X1> = \", exp_val);\n";
}

std::string cancel_source() {
  return "OPENQASM 3;\n"
         "include \"stdgates.inc\";\n"
         "\n"
         "def foo qubit[2]:qq {\n"
         "  cx qq[0], qq[1];\n"
         "}\n"
         "\n"
         "qubit q[2];\n"
         "foo q;\n"
         "cx q[0], q[1];\n";
}

std::string compute_action_source() {
  return "OPENQASM 3;\n"
         "include \"stdgates.inc\";\n"
         "\n"
         "qubit q[5];\n"
         "let bottom_three = q[1:3];\n"
         "compute {\n"
         "  rx(1.57) q[0];\n"
         "  h bottom_three;\n"
         "  for i in [0:3] {\n"
         "    cnot q[i], q[i + 1];\n"
         "  }\n"
         "} action {\n"
         "  rz(2.2) q[4];\n"
         "}\n";
}

std::string heisenberg_source(int n, HeisenbergVariant variant, bool rx_layer, int steps) {
  std::string body;
  if (variant == HeisenbergVariant::ComputeAction) {
    body = "      compute {\n"
           "        cx r[i], r[i+1];\n"
           "      } action {\n"
           "        rz(-Jz * step_size) r[i + 1];\n"
           "      }\n";
  } else {
    body = "      cx r[i], r[i+1];\n"
           "      rz(-Jz * step_size) r[i + 1];\n"
           "      cx r[i], r[i+1];\n";
  }
  return "OPENQASM 3;\n"
         "include \"stdgates.inc\";\n"
         "\n"
         "const nb_qubits = " + std::to_string(n) + ";\n"
         "\n"
         "def heisenberg_U() qubit[nb_qubits]:r {\n"
         "  int nb_steps = " + std::to_string(steps) + ";\n"
         "  double step_size = .01;\n"
         "  double Jz = 1.0;\n"
         "  double h = 1.0;\n"
         "  for step in [0:nb_steps] {\n" +
         std::string(rx_layer ? "    rx(-h * step_size) r;\n" : "") +
         "    for i in [0:nb_qubits-1] {\n" + body +
         "    }\n"
         "  }\n"
         "}\n"
         "\n"
         "qubit r[nb_qubits], c;\n"
         "ctrl @ heisenberg_U c, r;\n";
}

std::string trotter_source(int n, int steps) {
  return "OPENQASM 3;\n"
         "const nb_steps = " + std::to_string(steps) + ";\n"
         "const nb_qubits = " + std::to_string(n) + ";\n"
         "const step_size = 0.01;\n"
         "const Jz = 1.0;\n"
         "const h = 1.0;\n"
         "\n"
         "qubit r[nb_qubits];\n"
         "\n"
         "for step in [0:nb_steps] {\n"
         "  for i in [0:nb_qubits] {\n"
         "    rx(-h * step_size) r[i];\n"
         "  }\n"
         "  for i in [0:nb_qubits - 1] {\n"
         "    cx r[i], r[i+1];\n"
         "    rz(-Jz * step_size) r[i + 1];\n"
         "    cx r[i], r[i+1];\n"
         "  }\n"
         "}\n";
}

std::optional<std::string> fixture_source(std::string_view name, const FixtureParams &p) {
  if (name == "ghz") return ghz_source();
  if (name == "deuteron") return deuteron_source(p.theta.value_or(0.123));
  if (name == "cancel") return cancel_source();
  if (name == "compute-action") return compute_action_source();
  if (name == "heisenberg") return heisenberg_source(p.qubits.value_or(5), HeisenbergVariant::ComputeAction, p.rx_layer);
  if (name == "heisenberg-manual") return heisenberg_source(p.qubits.value_or(5), HeisenbergVariant::Manual, p.rx_layer);
  if (name == "trotter") return trotter_source(p.qubits.value_or(50));
  return std::nullopt;
}

std::vector<std::string> fixture_names() {
  return {"ghz", "deuteron", "cancel", "compute-action", "heisenberg", "heisenberg-manual", "trotter"};
}

}  // namespace qforge::driver
