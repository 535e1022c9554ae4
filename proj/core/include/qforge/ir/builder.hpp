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

#include "qforge/frontend/ast.hpp"
#include "qforge/ir/ir.hpp"
#include "qforge/symtab/symbol_table.hpp"

namespace qforge::ir {

struct BuildResult {
  std::unique_ptr<Module> module;  // null when any error was reported
  DiagnosticList diagnostics;

  bool ok() const { return module != nullptr; }
};

/// Depth-first translation of a Program AST. Top-level statements form `@main` and each
/// subroutine becomes its own function. Top-level constants are emitted as globals.
BuildResult build_module(const frontend::AstNode &program, symtab::SymbolTable &symbols);
BuildResult build_module(const frontend::AstNode &program);

}  // namespace qforge::ir
