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

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace qforge::runtime {

using cplx = std::complex<double>;
/// Row-major 2x2 matrix.
using Mat2 = std::array<cplx, 4>;

Mat2 single_qubit_matrix(std::string_view gate, std::span<const double> params);

/// Every built-in gate is either a swap or a single-qubit matrix with some controls: the
/// leading `controls` operands control `target` applied to the last operand.
struct GateShape {
  int controls = 0;
  Mat2 target{};
  bool swap = false;
};

/// Throws RuntimeError for an unknown gate or a parameter count mismatch.
GateShape gate_shape(std::string_view gate, std::span<const double> params);

/// Dense 2^k x 2^k unitary (row-major) of a gate on its own k operands. Operand 0 is the
/// least significant bit of the basis index.
std::vector<cplx> dense_unitary(std::string_view gate, std::span<const double> params);

}  // namespace qforge::runtime
