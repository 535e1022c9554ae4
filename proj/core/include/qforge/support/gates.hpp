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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

/// Built-in gate table, shared from the IR down to the runtime.
namespace qforge::gates {

enum class DaggerRule {
  SelfInverse,  // g† = g
  Swap,         // s ↔ sdg, t ↔ tdg
  NegateAngle,  // rotation angle negated
  UPermute,     // u(θ,φ,λ)† = u(−θ,−λ,−φ)
};

struct GateInfo {
  std::string_view name;
  int num_qubits;
  int num_params;
  DaggerRule dagger;
  std::string_view dagger_name;
  /// Operand order does not matter (cz, swap, cphase).
  bool symmetric;
};

/// Canonical gate description, or nullptr when `name` is not a canonical gate name.
const GateInfo *lookup(std::string_view name);

/// Maps a source spelling (`cx`, `CX`, `p`, `cp`, `U`, ...) onto the canonical name.
std::optional<std::string> canonical_name(std::string_view source_name);

/// Every canonical gate name, in a stable order.
std::span<const GateInfo> all();

std::string dagger_name(std::string_view name);

/// Numeric dagger of a parameter list.
std::vector<double> dagger_params(std::string_view name, std::span<const double> params);

/// Diagonal single-qubit gates that commute with the control of a cnot.
bool is_z_diagonal(std::string_view name);

/// Phase angle for the z-family (z, s, sdg, t, tdg); nullopt otherwise.
std::optional<double> z_family_angle(std::string_view name);

}  // namespace qforge::gates
