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

#include <memory>
#include <string_view>

#include "qforge/ir/ir.hpp"

namespace qforge::ir {

struct IrParseResult {
  std::unique_ptr<Module> module;  // null when diagnostics contain an error
  DiagnosticList diagnostics;

  bool ok() const { return module != nullptr; }
};

/// Reads the format produced by print_module. `return` and `func.return(...)` are both
/// accepted, as is a body written on one line (`func @f() { return }`).
IrParseResult parse_ir(std::string_view text);

}  // namespace qforge::ir
