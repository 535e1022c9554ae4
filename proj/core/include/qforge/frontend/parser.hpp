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

#include <string_view>
#include <vector>

#include "qforge/frontend/ast.hpp"
#include "qforge/frontend/token.hpp"

namespace qforge::frontend {

struct ParseResult {
  AstPtr program;  // always a Program node, possibly partial when diagnostics are present
  DiagnosticList diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

/// Recursive-descent parser for the extended grammar. Recovers at `;` and `}` so one call can
/// report several syntax errors.
ParseResult parse(const std::vector<Token> &tokens);

/// tokenize + parse.
ParseResult parse_source(std::string_view source);

}  // namespace qforge::frontend
