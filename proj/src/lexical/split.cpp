#include <cctype>

#include "renas/error.hpp"
#include "renas/lexical/normalize.hpp"

namespace renas::lexical {
namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return (c >= 'a' && c <= 'z') || static_cast<unsigned char>(c) >= 0x80; }
bool is_delimiter(char c) { return c == '$' || c == '_' || std::isdigit(static_cast<unsigned char>(c)); }

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (is_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

// Splits a delimiter-free chunk at case boundaries.
void split_chunk(std::string_view chunk, std::vector<std::string>& out) {
  std::size_t start = 0;
  for (std::size_t i = 1; i < chunk.size(); ++i) {
    const char prev = chunk[i - 1];
    const char cur = chunk[i];
    const bool lower_to_upper = is_lower(prev) && is_upper(cur);
    // "HTTPResponse": the capital before a lowercase letter starts a word.
    const bool upper_run_end = is_upper(prev) && is_upper(cur) && i + 1 < chunk.size() &&
                               is_lower(chunk[i + 1]);
    if (lower_to_upper || upper_run_end) {
      out.push_back(lowercase(chunk.substr(start, i - start)));
      start = i;
    }
  }
  out.push_back(lowercase(chunk.substr(start)));
}

}  // namespace

std::vector<std::string> split_identifier(std::string_view name) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < name.size()) {
    while (i < name.size() && is_delimiter(name[i])) ++i;
    std::size_t j = i;
    while (j < name.size() && !is_delimiter(name[j])) ++j;
    if (j > i) split_chunk(name.substr(i, j - i), words);
    i = j;
  }
  if (words.empty()) {
    throw Error(ErrorCode::kDegenerateName, "identifier '" + std::string(name) + "' has no words");
  }
  return words;
}

CaseStyle detect_case_style(std::string_view raw) {
  bool has_lower = false;
  bool has_upper = false;
  bool has_underscore = false;
  for (char c : raw) {
    has_lower |= is_lower(c);
    has_upper |= is_upper(c);
    has_underscore |= c == '_';
  }
  if (has_upper && !has_lower) return CaseStyle::kUpperSnake;
  if (has_underscore && !has_upper) return CaseStyle::kLowerSnake;
  for (char c : raw) {
    if (is_upper(c)) return CaseStyle::kUpperCamel;
    if (is_lower(c)) return CaseStyle::kLowerCamel;
  }
  return CaseStyle::kLowerCamel;
}

std::string render_identifier(std::span<const std::string> words, CaseStyle style) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    std::string word = words[i];
    switch (style) {
      case CaseStyle::kUpperSnake:
        for (char& c : word) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        [[fallthrough]];
      case CaseStyle::kLowerSnake:
        if (i > 0) out += '_';
        break;
      case CaseStyle::kLowerCamel:
      case CaseStyle::kUpperCamel:
        if ((i > 0 || style == CaseStyle::kUpperCamel) && !word.empty()) {
          word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
        }
        break;
    }
    out += word;
  }
  return out;
}

}  // namespace renas::lexical
