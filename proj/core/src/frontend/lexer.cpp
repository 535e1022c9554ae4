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

#include "qforge/frontend/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace qforge::frontend {

namespace {

constexpr std::array<std::string_view, 40> kKeywords = {
    "OPENQASM", "include", "qubit",  "qreg",    "bit",     "creg",  "int",    "uint",
    "float",    "double",  "int64_t", "bool",   "const",   "let",   "def",    "extern",
    "return",   "if",      "else",   "for",     "in",      "while", "measure", "reset",
    "ctrl",     "negctrl", "inv",    "pow",     "true",    "false", "gate",   "barrier",
    "break",    "continue", "angle", "duration", "stretch", "defcal", "box",   "input"};

// Longest first so that maximal munch works with a linear scan.
constexpr std::array<std::string_view, 34> kOperators = {
    "**=", "<<=", ">>=", "->", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=",
    "|=",  "^=",  "==",  "!=", "<=", ">=", "&&", "||", "<<", ">>", "**", "+",
    "-",   "*",   "/",   "%",  "<",  ">",  "=",  "!",  "~",  "@"};

constexpr std::string_view kPunctuation = "()[]{};,:.&|^";

class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) {}

  LexResult run() {
    LexResult result;
    while (true) {
      skip_trivia(result);
      if (result.error) return result;
      if (at_end()) break;
      if (auto tok = next_token(result)) {
        result.tokens.push_back(std::move(*tok));
      } else {
        return result;
      }
    }
    result.tokens.push_back(Token{TokenKind::EndOfFile, "", location()});
    return result;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  SourceLocation location() const { return {line_, column_, pos_}; }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && !at_end(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        column_ = 0;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  void skip_trivia(LexResult &result) {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        SourceLocation start = location();
        advance(2);
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) {
          result.error = Diagnostic{Severity::Error, "unterminated block comment", start};
          return;
        }
        advance(2);
      } else {
        return;
      }
    }
  }

  std::optional<Token> next_token(LexResult &result) {
    SourceLocation start = location();
    char c = peek();
    unsigned char uc = static_cast<unsigned char>(c);

    // UTF-8 'π' is accepted as an alias for pi.
    if (uc == 0xCF && static_cast<unsigned char>(peek(1)) == 0x80) {
      advance(2);
      return Token{TokenKind::Identifier, "pi", start};
    }
    if (std::isalpha(uc) || c == '_') {
      std::size_t begin = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') advance();
      std::string word(src_.substr(begin, pos_ - begin));
      TokenKind kind = is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier;
      return Token{kind, std::move(word), start};
    }
    if (std::isdigit(uc) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return number(start);
    }
    if (c == '"') return string_literal(start, result);

    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        advance(op.size());
        return Token{TokenKind::Operator, std::string(op), start};
      }
    }
    if (kPunctuation.find(c) != std::string_view::npos) {
      advance();
      return Token{TokenKind::Punctuation, std::string(1, c), start};
    }
    std::string shown = std::isprint(uc) ? std::string(1, c) : "\\x" + hex(uc);
    result.error = Diagnostic{Severity::Error, "illegal character '" + shown + "'", start};
    return std::nullopt;
  }

  static std::string hex(unsigned char c) {
    constexpr char digits[] = "0123456789abcdef";
    return {digits[c >> 4], digits[c & 0xF]};
  }

  Token number(SourceLocation start) {
    std::size_t begin = pos_;
    bool is_float = false;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') advance();
    if (peek() == '.' && !(peek(1) == '.')) {
      is_float = true;
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_;
      int save_col = column_;
      advance();
      if (peek() == '+' || peek() == '-') advance();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        is_float = true;
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      } else {
        pos_ = save;
        column_ = save_col;
      }
    }
    std::string text(src_.substr(begin, pos_ - begin));
    text.erase(std::remove(text.begin(), text.end(), '_'), text.end());
    return Token{is_float ? TokenKind::FloatLiteral : TokenKind::IntegerLiteral, std::move(text),
                 start};
  }

  std::optional<Token> string_literal(SourceLocation start, LexResult &result) {
    advance();  // opening quote
    std::string value;
    while (!at_end() && peek() != '"' && peek() != '\n') {
      char c = peek();
      if (c == '\\') {
        advance();
        char e = peek();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          default: value += e; break;
        }
        advance();
        continue;
      }
      value += c;
      advance();
    }
    if (at_end() || peek() != '"') {
      result.error = Diagnostic{Severity::Error, "unterminated string literal", start};
      return std::nullopt;
    }
    advance();
    return Token{TokenKind::StringLiteral, std::move(value), start};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 0;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::IntegerLiteral: return "integer-literal";
    case TokenKind::FloatLiteral: return "float-literal";
    case TokenKind::StringLiteral: return "string-literal";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::Operator: return "operator";
    case TokenKind::EndOfFile: return "end-of-file";
  }
  return "?";
}

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexResult tokenize(std::string_view source) { return Scanner(source).run(); }

}  // namespace qforge::frontend
