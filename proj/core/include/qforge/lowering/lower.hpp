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

#include "qforge/ir/ir.hpp"
#include "qforge/lowering/lir.hpp"

namespace qforge::lowering {

/// Lowers structured IR to a CFG of runtime calls. Qubit SSA chains collapse onto the handle
/// of their root extract. Throws InternalError for an op it cannot lower.
LirModule lower_to_cfg(const ir::Module &module);

}  // namespace qforge::lowering
