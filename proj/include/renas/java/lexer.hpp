#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace renas::java {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kNumber,
  kString,
  kChar,
  kOperator,
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  int line = 0;
  int column = 0;

  bool is(std::string_view s) const {
    return (kind == TokenKind::kOperator || kind == TokenKind::kKeyword) && text == s;
  }
  bool is_identifier() const { return kind == TokenKind::kIdentifier; }
};

// Tokenizes Java source. Comments are dropped. `>` is always emitted on its
// own (or as `>=`) so that nested type arguments close one level per token.
// Throws Error(kFormat) on unterminated literals or comments.
std::vector<Token> tokenize(std::string_view source);

bool is_java_keyword(std::string_view word);

}  // namespace renas::java
