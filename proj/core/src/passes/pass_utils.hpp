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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qforge/ir/ir.hpp"

namespace qforge::passes::detail {

std::optional<double> const_float(const ir::Function &fn, ir::ValueId v);
std::optional<std::int64_t> const_int(const ir::Function &fn, ir::ValueId v);

/// Gate parameters as numbers, from the `angles` attribute or constant operands.
std::optional<std::vector<double>> const_params(const ir::Function &fn, const ir::Operation &op);

/// A gate the peephole passes may rewrite. Broadcasts, flagged segments and modifier regions are off limits.
bool rewritable(const ir::Operation &op);

/// The only user of `v`, when it has exactly one and it sits in the same region as `v`'s def.
ir::Operation *sole_user(const ir::Function &fn, ir::ValueId v);

/// Position of `v` among the first `count` operands of `op`.
std::optional<std::size_t> operand_slot(const ir::Operation &op, ir::ValueId v, std::size_t count);

/// Removes a threading op, wiring each qubit result to the matching qubit operand.
void bypass(ir::Function &fn, ir::Operation &op);

/// New element gate with constant angles, qubit results fresh.
std::unique_ptr<ir::Operation> make_gate(ir::Function &fn, const std::string &name,
                                         std::vector<ir::ValueId> qubits, std::vector<double> angles,
                                         const ir::Operation &like);

/// Representative of `a` modulo 2π in (-π, π].
double wrap_angle(double a);
bool near_zero_mod(double a, double period);

/// Calls `fn` on every defined function. Functions reachable from a modifier region or a
/// flagged segment are skipped when `rewriting` is set, since there a global phase is
/// observable or mirror symmetry must be kept.
void for_each_function(ir::Module &module, const std::function<void(ir::Function &)> &fn,
                       bool rewriting = false);
/// Every region of the function, outer regions first.
std::vector<ir::Region *> regions_of(ir::Function &fn);

}  // namespace qforge::passes::detail
