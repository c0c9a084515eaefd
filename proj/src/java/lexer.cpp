#include "renas/java/lexer.hpp"

#include <array>
#include <cctype>

#include "renas/error.hpp"

namespace renas::java {
namespace {

constexpr std::string_view kKeywords[] = {
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class",
    "const", "continue", "default", "do", "double", "else", "enum", "extends", "final",
    "finally", "float", "for", "goto", "if", "implements", "import", "instanceof", "int",
    "interface", "long", "native", "new", "package", "private", "protected", "public",
    "return", "short", "static", "strictfp", "super", "switch", "synchronized", "this",
    "throw", "throws", "transient", "try", "void", "volatile", "while", "null",
};

// Longest first.
constexpr std::string_view kOperators[] = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=",
    "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<", "(", ")", "{", "}", "[", "]",
    ";", ",", ".", "@", "=", "<", "!", "~", "?", ":",
};

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool is_ident_part(unsigned char c) { return is_ident_start(c) || std::isdigit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back(Token{TokenKind::kEnd, "", line_, col_});
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kFormat, "line " + std::to_string(line_) + ": " + what);
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) fail("unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token next() {
    Token t;
    t.line = line_;
    t.column = col_;
    const std::size_t start = pos_;
    const auto c = static_cast<unsigned char>(peek());

    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(peek()))) advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      t.kind = is_java_keyword(t.text) ? TokenKind::kKeyword : TokenKind::kIdentifier;
      return t;
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      lex_number();
      t.kind = TokenKind::kNumber;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"') {
        lex_text_block();
      } else {
        lex_quoted('"');
      }
      t.kind = TokenKind::kString;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (c == '\'') {
      lex_quoted('\'');
      t.kind = TokenKind::kChar;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    t.kind = TokenKind::kOperator;
    if (c == '>') {
      advance();
      if (peek() == '=') advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        for (std::size_t i = 0; i < op.size(); ++i) advance();
        t.text = std::string(op);
        return t;
      }
    }
    // Single-character arithmetic and bitwise operators.
    if (std::string_view("+-*/%&|^").find(static_cast<char>(c)) != std::string_view::npos) {
      advance();
      t.text = std::string(1, static_cast<char>(c));
      return t;
    }
    fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
  }

  void lex_number() {
    while (pos_ < src_.size()) {
      const auto c = static_cast<unsigned char>(peek());
      if (std::isalnum(c) || c == '_' || c == '.') {
        // Exponent sign.
        if ((c == 'e' || c == 'E' || c == 'p' || c == 'P') && (peek(1) == '+' || peek(1) == '-')) {
          advance();
        }
        // Stop at a member access such as `1.toString` (not valid Java) or `..`.
        if (c == '.' && !std::isdigit(static_cast<unsigned char>(peek(1))) &&
            std::isalpha(static_cast<unsigned char>(peek(1)))) {
          break;
        }
        advance();
      } else {
        break;
      }
    }
  }

  void lex_quoted(char quote) {
    advance();
    while (pos_ < src_.size() && peek() != quote) {
      if (peek() == '\n') fail("unterminated literal");
      if (peek() == '\\') advance();
      if (pos_ < src_.size()) advance();
    }
    if (pos_ >= src_.size()) fail("unterminated literal");
    advance();
  }

  void lex_text_block() {
    for (int i = 0; i < 3; ++i) advance();
    while (pos_ < src_.size() && !(peek() == '"' && peek(1) == '"' && peek(2) == '"')) {
      if (peek() == '\\') advance();
      if (pos_ < src_.size()) advance();
    }
    if (pos_ >= src_.size()) fail("unterminated text block");
    for (int i = 0; i < 3; ++i) advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  for (std::string_view k : kKeywords) {
    if (k == word) return true;
  }
  return word == "true" || word == "false";
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace renas::java
