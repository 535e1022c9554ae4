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

#include <string>

#include "qforge/ir/ir.hpp"

namespace qforge::ir {

/// Checks SSA visibility, qubit linearity, users-list consistency, per-opcode signatures, and
/// region termination. An empty list means the module is well formed.
DiagnosticList verify(const Module &module);

/// Throws InternalError naming `stage` on the first problem.
void verify_or_throw(const Module &module, const std::string &stage);

}  // namespace qforge::ir
