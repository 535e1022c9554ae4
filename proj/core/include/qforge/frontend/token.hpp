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
#include <string_view>

#include "qforge/support/diagnostic.hpp"

namespace qforge::frontend {

enum class TokenKind {
  Keyword,
  Identifier,
  IntegerLiteral,
  FloatLiteral,
  StringLiteral,
  Punctuation,
  Operator,
  EndOfFile,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::EndOfFile;
  /// Source slice; string literals hold the unescaped contents.
  std::string text;
  SourceLocation loc;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punctuation, t); }
  bool is_op(std::string_view t) const { return is(TokenKind::Operator, t); }
};

bool is_keyword(std::string_view word);

}  // namespace qforge::frontend
