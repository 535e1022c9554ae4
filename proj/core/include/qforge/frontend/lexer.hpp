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

#include <optional>
#include <string_view>
#include <vector>

#include "qforge/frontend/token.hpp"

namespace qforge::frontend {

struct LexResult {
  std::vector<Token> tokens;  // terminated by an EndOfFile token on success
  std::optional<Diagnostic> error;

  bool ok() const { return !error.has_value(); }
};

/// Splits extended-OpenQASM source into tokens. `//` and `/* */` comments and
/// whitespace are dropped. The first lexical error stops the scan.
LexResult tokenize(std::string_view source);

}  // namespace qforge::frontend
