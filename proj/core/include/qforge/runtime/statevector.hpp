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

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <unordered_map>
#include <vector>

#include "qforge/runtime/backend.hpp"
#include "qforge/runtime/gate_matrix.hpp"

namespace qforge::runtime {

/// Dense amplitudes; qubit k is bit k of the basis index.
class StateVector {
 public:
  explicit StateVector(std::size_t num_qubits = 0);

  std::size_t num_qubits() const { return n_; }
  /// Appends a qubit in |0> and returns its bit position.
  std::size_t add_qubit();

  void apply(std::span<const std::size_t> controls, std::size_t target, const Mat2 &m);
  void apply_swap(std::size_t a, std::size_t b);

  double prob_one(std::size_t q) const;
  /// Projects qubit `q` onto `outcome` and renormalizes.
  void collapse(std::size_t q, bool outcome);

  double norm() const;
  const std::vector<cplx> &amplitudes() const { return amps_; }
  std::vector<cplx> &amplitudes() { return amps_; }

 private:
  std::size_t n_ = 0;
  std::vector<cplx> amps_;
};

/// Fidelity |<a|b>|; 1 means equal up to global phase.
double overlap(std::span<const cplx> a, std::span<const cplx> b);

class StatevectorBackend final : public Backend {
 public:
  StatevectorBackend(std::uint64_t seed, std::size_t qubit_cap = 22);

  void allocate(QubitId q) override;
  void release(QubitId q) override;
  void apply(const GateRecord &gate) override;
  bool measure(QubitId q) override;
  void reset(QubitId q) override;
  void begin_shot() override;

  const StateVector &state() const { return state_; }
  /// Bit position of a qubit in `state()`.
  std::size_t position(QubitId q) const;

 private:
  double uniform();

  std::mt19937_64 rng_;
  std::size_t cap_;
  StateVector state_;
  std::unordered_map<QubitId, std::size_t> pos_;
};

}  // namespace qforge::runtime
