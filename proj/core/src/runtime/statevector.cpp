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

#include "qforge/runtime/statevector.hpp"

#include <cmath>
#include <string>

#include "qforge/support/diagnostic.hpp"

namespace qforge::runtime {

StateVector::StateVector(std::size_t num_qubits) : n_(num_qubits), amps_(std::size_t{1} << num_qubits) {
  amps_[0] = 1.0;
}

std::size_t StateVector::add_qubit() {
  // The new qubit is the top bit; existing amplitudes keep their indices.
  amps_.resize(amps_.size() * 2, cplx{0.0, 0.0});
  return n_++;
}

void StateVector::apply(std::span<const std::size_t> controls, std::size_t target, const Mat2 &m) {
  std::size_t cmask = 0;
  for (std::size_t c : controls) cmask |= std::size_t{1} << c;
  std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & tbit) || (i & cmask) != cmask) continue;
    cplx a0 = amps_[i], a1 = amps_[i | tbit];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | tbit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_swap(std::size_t a, std::size_t b) {
  std::size_t ba = std::size_t{1} << a, bb = std::size_t{1} << b;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if ((i & ba) && !(i & bb)) std::swap(amps_[i], amps_[(i & ~ba) | bb]);
}

double StateVector::prob_one(std::size_t q) const {
  std::size_t bit = std::size_t{1} << q;
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (i & bit) p += std::norm(amps_[i]);
  return p;
}

void StateVector::collapse(std::size_t q, bool outcome) {
  std::size_t bit = std::size_t{1} << q;
  double kept = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (static_cast<bool>(i & bit) != outcome) amps_[i] = 0.0;
    else kept += std::norm(amps_[i]);
  }
  if (kept <= 0.0) throw RuntimeError("collapse onto a zero-probability outcome");
  double scale = 1.0 / std::sqrt(kept);
  for (auto &a : amps_) a *= scale;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto &a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

double overlap(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::abs(s);
}

StatevectorBackend::StatevectorBackend(std::uint64_t seed, std::size_t qubit_cap)
    : rng_(seed), cap_(qubit_cap) {}

double StatevectorBackend::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

std::size_t StatevectorBackend::position(QubitId q) const {
  auto it = pos_.find(q);
  if (it == pos_.end()) throw RuntimeError("qubit " + std::to_string(q) + " is not allocated");
  return it->second;
}

void StatevectorBackend::allocate(QubitId q) {
  if (state_.num_qubits() >= cap_)
    throw RuntimeError("statevector backend is limited to " + std::to_string(cap_) +
                       " qubits; use --backend=estimator for larger programs");
  pos_[q] = state_.add_qubit();
}

void StatevectorBackend::release(QubitId q) { pos_.erase(q); }

void StatevectorBackend::apply(const GateRecord &g) {
  GateShape shape = gate_shape(g.gate, g.params);
  if (shape.swap) {
    state_.apply_swap(position(g.qubits.at(0)), position(g.qubits.at(1)));
    return;
  }
  std::size_t controls[2];
  auto nc = static_cast<std::size_t>(shape.controls);
  for (std::size_t i = 0; i < nc; ++i) controls[i] = position(g.qubits.at(i));
  state_.apply(std::span<const std::size_t>(controls, nc), position(g.qubits.at(nc)), shape.target);
}

bool StatevectorBackend::measure(QubitId q) {
  std::size_t p = position(q);
  bool one = uniform() < state_.prob_one(p);
  state_.collapse(p, one);
  return one;
}

void StatevectorBackend::reset(QubitId q) {
  if (measure(q)) state_.apply({}, position(q), single_qubit_matrix("x", {}));
}

void StatevectorBackend::begin_shot() {
  state_ = StateVector();
  pos_.clear();
}

}  // namespace qforge::runtime
