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

#include "qforge/support/diagnostic.hpp"

#include <algorithm>

namespace qforge {

std::string Diagnostic::format(const std::string &file) const {
  std::string out = file;
  out += ':';
  out += std::to_string(loc.line);
  out += ':';
  out += std::to_string(loc.column);
  out += severity == Severity::Error ? ": error: " : ": warning: ";
  out += message;
  return out;
}

bool has_errors(const DiagnosticList &diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic &d) { return d.severity == Severity::Error; });
}

CompileError::CompileError(Diagnostic diag)
    : std::runtime_error(diag.message), diag_(std::move(diag)) {}

CompileError::CompileError(std::string message, SourceLocation loc)
    : CompileError(Diagnostic{Severity::Error, std::move(message), loc}) {}

}  // namespace qforge
