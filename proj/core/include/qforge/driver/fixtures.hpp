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
#include <string>
#include <string_view>
#include <vector>

namespace qforge::driver {

/// Three-qubit GHZ preparation: h then two cnots.
std::string ghz_source();
/// Deuteron parity-expectation workflow with ansatz angle `theta`.
std::string deuteron_source(double theta = 0.123, int shots = 1024);
/// Subroutine call followed by a cancelling cx.
std::string cancel_source();
/// Compute/action block over a five-qubit register.
std::string compute_action_source();

enum class HeisenbergVariant { ComputeAction, Manual };
/// Controlled Heisenberg evolution on `n` qubits. With `rx_layer` false only the Jz coupling
/// layer is emitted.
std::string heisenberg_source(int n, HeisenbergVariant variant, bool rx_layer = true, int steps = 100);

/// Transverse-field Ising Trotter circuit on `n` qubits.
std::string trotter_source(int n, int steps = 100);

struct FixtureParams {
  std::optional<int> qubits;
  std::optional<double> theta;
  bool rx_layer = true;
};

/// Fixture by name (ghz, deuteron, cancel, compute-action, heisenberg, heisenberg-manual, trotter).
std::optional<std::string> fixture_source(std::string_view name, const FixtureParams &params = {});
std::vector<std::string> fixture_names();

}  // namespace qforge::driver
