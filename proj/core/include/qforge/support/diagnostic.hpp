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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qforge {

/// Position inside a source buffer. `line` is 1-based, `column` is 0-based.
struct SourceLocation {
  int line = 1;
  int column = 0;
  std::size_t byte_offset = 0;

  friend bool operator==(const SourceLocation &, const SourceLocation &) = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  SourceLocation loc;

  /// Renders `<file>:<line>:<col>: error: <message>`.
  std::string format(const std::string &file) const;
};

using DiagnosticList = std::vector<Diagnostic>;

bool has_errors(const DiagnosticList &diags);

/// Thrown for user-facing compile diagnostics (syntax, semantics, unsupported constructs).
class CompileError : public std::runtime_error {
 public:
  explicit CompileError(Diagnostic diag);
  CompileError(std::string message, SourceLocation loc);
  const Diagnostic &diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

/// Broken compiler invariant (verifier failure, unlowered op, bad pass state).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Failure while executing a lowered program (dead handle, qubit cap, bad region nesting).
class RuntimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qforge
