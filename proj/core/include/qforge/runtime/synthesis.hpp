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
#include <span>
#include <vector>

#include "qforge/runtime/backend.hpp"

namespace qforge::runtime {

/// Controlled form of `records` on control `ctrl`. Records flagged compute/uncompute pass
/// through uncontrolled. Throws RuntimeError if a record acts on `ctrl` or has no rule.
std::vector<GateRecord> synthesize_controlled(std::span<const GateRecord> records, QubitId ctrl);

/// Reversed daggers; compute and uncompute flags swap.
std::vector<GateRecord> synthesize_adjoint(std::span<const GateRecord> records);

/// `records` repeated k times, or the adjoint repeated -k times.
std::vector<GateRecord> synthesize_power(std::span<const GateRecord> records, std::int64_t k);

/// Exact ccx(a, b, t) over {h, t, tdg, phase, cnot, crz}. `cost` is the number of counted
/// cnot/crz gates: 5 (crz form with phase corrections), 6 (Clifford+T), or 7 (crz form with a
/// controlled-phase correction). Throws RuntimeError for another cost.
std::vector<GateRecord> decompose_ccx(QubitId a, QubitId b, QubitId t, int cost);

}  // namespace qforge::runtime
