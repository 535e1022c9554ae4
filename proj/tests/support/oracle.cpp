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

#include "oracle.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qforge::testing {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

Matrix make2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

const Matrix &I2() {
  static const Matrix m = Matrix::identity(2);
  return m;
}
const Matrix &X() {
  static const Matrix m = make2(0, 1, 1, 0);
  return m;
}
const Matrix &Y() {
  static const Matrix m = make2(0, -kI, kI, 0);
  return m;
}
const Matrix &Z() {
  static const Matrix m = make2(1, 0, 0, -1);
  return m;
}
// |0><0| and |1><1|
const Matrix &P0() {
  static const Matrix m = make2(1, 0, 0, 0);
  return m;
}
const Matrix &P1() {
  static const Matrix m = make2(0, 0, 0, 1);
  return m;
}

// exp(-i t/2 P) for a Pauli P
Matrix pauli_rotation(const Matrix &p, double t) {
  return std::cos(t / 2) * I2() - (kI * std::sin(t / 2)) * p;
}

Matrix phase_gate(double t) { return std::exp(kI * (t / 2)) * pauli_rotation(Z(), t); }

Matrix single(const std::string &g, const std::vector<double> &p) {
  if (g == "id") return I2();
  if (g == "x") return X();
  if (g == "y") return Y();
  if (g == "z") return Z();
  if (g == "h") return (1.0 / std::sqrt(2.0)) * (X() + Z());
  if (g == "s") return phase_gate(kPi / 2);
  if (g == "sdg") return phase_gate(-kPi / 2);
  if (g == "t") return phase_gate(kPi / 4);
  if (g == "tdg") return phase_gate(-kPi / 4);
  if (g == "rx") return pauli_rotation(X(), p.at(0));
  if (g == "ry") return pauli_rotation(Y(), p.at(0));
  if (g == "rz") return pauli_rotation(Z(), p.at(0));
  if (g == "p" || g == "phase") return phase_gate(p.at(0));
  if (g == "u" || g == "u3" || g == "U") {
    // rz(phi) ry(theta) rz(lambda) with the phase that makes the top-left entry real
    double th = p.at(0), ph = p.at(1), la = p.at(2);
    return std::exp(kI * ((ph + la) / 2)) *
           (pauli_rotation(Z(), ph) * pauli_rotation(Y(), th) * pauli_rotation(Z(), la));
  }
  throw std::invalid_argument("oracle: unknown gate " + g);
}

// Control is operand 0 (low bit), target operand 1 (high bit).
Matrix controlled(const Matrix &u) { return kron(I2(), P0()) + kron(u, P1()); }

}  // namespace

Matrix Matrix::identity(std::size_t d) {
  Matrix m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

Matrix operator*(const Matrix &x, const Matrix &y) {
  Matrix r(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t k = 0; k < x.dim; ++k) {
      cplx v = x(i, k);
      if (v == cplx{}) continue;
      for (std::size_t j = 0; j < x.dim; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

Matrix operator+(const Matrix &x, const Matrix &y) {
  Matrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

Matrix operator-(const Matrix &x, const Matrix &y) { return x + (-1.0 * y); }

Matrix operator*(cplx s, const Matrix &x) {
  Matrix r = x;
  for (auto &v : r.a) v *= s;
  return r;
}

Matrix kron(const Matrix &x, const Matrix &y) {
  Matrix r(x.dim * y.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j)
      for (std::size_t k = 0; k < y.dim; ++k)
        for (std::size_t l = 0; l < y.dim; ++l) r(i * y.dim + k, j * y.dim + l) = x(i, j) * y(k, l);
  return r;
}

Matrix dagger(const Matrix &x) {
  Matrix r(x.dim);
  for (std::size_t i = 0; i < x.dim; ++i)
    for (std::size_t j = 0; j < x.dim; ++j) r(j, i) = std::conj(x(i, j));
  return r;
}

Matrix gate_matrix(const OracleGate &g) {
  const std::string &n = g.name;
  if (n == "cx" || n == "cnot" || n == "CX") return controlled(X());
  if (n == "cy") return controlled(Y());
  if (n == "cz") return controlled(Z());
  if (n == "ch") return controlled(single("h", {}));
  if (n == "crz") return controlled(single("rz", g.params));
  if (n == "cp" || n == "cphase") return controlled(single("p", g.params));
  if (n == "swap") {
    Matrix m(4);
    m(0, 0) = m(3, 3) = 1.0;
    m(1, 2) = m(2, 1) = 1.0;
    return m;
  }
  if (n == "ccx" || n == "toffoli") {
    // operands (a, b, t): local index t*4 + b*2 + a
    Matrix both = kron(P1(), P1());
    return kron(I2(), Matrix::identity(4) - both) + kron(X(), both);
  }
  return single(n, g.params);
}

State basis_state(int n, std::uint64_t index) {
  State s(std::size_t{1} << n, 0.0);
  s.at(index) = 1.0;
  return s;
}

void apply(State &state, int n, const OracleGate &g) {
  Matrix m = gate_matrix(g);
  std::size_t k = g.qubits.size();
  if (m.dim != (std::size_t{1} << k)) throw std::invalid_argument("oracle: arity mismatch for " + g.name);
  std::uint64_t mask = 0;
  for (int q : g.qubits) {
    if (q < 0 || q >= n) throw std::out_of_range("oracle: qubit out of range");
    mask |= std::uint64_t{1} << q;
  }
  State out(state.size(), 0.0);
  for (std::uint64_t base = 0; base < state.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t col = 0; col < m.dim; ++col) {
      std::uint64_t src = base;
      for (std::size_t j = 0; j < k; ++j)
        if (col >> j & 1) src |= std::uint64_t{1} << g.qubits[j];
      cplx amp = state[src];
      if (amp == cplx{}) continue;
      for (std::size_t row = 0; row < m.dim; ++row) {
        std::uint64_t dst = base;
        for (std::size_t j = 0; j < k; ++j)
          if (row >> j & 1) dst |= std::uint64_t{1} << g.qubits[j];
        out[dst] += m(row, col) * amp;
      }
    }
  }
  state = std::move(out);
}

State run(int n, const Circuit &circuit, State initial) {
  State s = initial.empty() ? basis_state(n, 0) : std::move(initial);
  for (const auto &g : circuit) apply(s, n, g);
  return s;
}

Matrix unitary(int n, const Circuit &circuit) {
  std::size_t dim = std::size_t{1} << n;
  Matrix u(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    State s = run(n, circuit, basis_state(n, col));
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = s[row];
  }
  return u;
}

double phase_distance(const std::vector<cplx> &a, const std::vector<cplx> &b) {
  if (a.size() != b.size()) return INFINITY;
  cplx inner = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) inner += std::conj(b[i]) * a[i];
  cplx phase = std::abs(inner) > 1e-300 ? inner / std::abs(inner) : cplx{1.0};
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - phase * b[i]));
  return worst;
}

double phase_distance(const Matrix &a, const Matrix &b) {
  if (a.dim != b.dim) return INFINITY;
  return phase_distance(a.a, b.a);
}

Circuit inverse(const Circuit &circuit) {
  Circuit out;
  for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
    OracleGate g = *it;
    if (g.name == "s") g.name = "sdg";
    else if (g.name == "sdg") g.name = "s";
    else if (g.name == "t") g.name = "tdg";
    else if (g.name == "tdg") g.name = "t";
    else if (g.name == "u" || g.name == "u3" || g.name == "U")
      g.params = {-g.params.at(0), -g.params.at(2), -g.params.at(1)};
    else
      for (double &p : g.params) p = -p;
    out.push_back(std::move(g));
  }
  return out;
}

std::string to_qasm(const OracleGate &g, const std::string &reg) {
  std::string s = g.name;
  if (!g.params.empty()) {
    s += '(';
    for (std::size_t i = 0; i < g.params.size(); ++i) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", g.params[i]);
      s += (i ? ", " : "") + std::string(buf);
    }
    s += ')';
  }
  for (std::size_t i = 0; i < g.qubits.size(); ++i)
    s += (i ? ", " : " ") + reg + "[" + std::to_string(g.qubits[i]) + "]";
  return s + ";";
}

}  // namespace qforge::testing
