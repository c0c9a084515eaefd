#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "renas/lexical/abbreviation.hpp"

namespace renas::lexical {

enum class Inflection {
  kNone,
  kPlural,
  kVerbConjugated,
  kComparative,
};

const char* to_string(Inflection inflection);

struct WordToken {
  std::string surface;  // lowercase, after abbreviation expansion
  std::string lemma;
  Inflection inflection = Inflection::kNone;
  std::optional<std::string> expanded_from;
  ExpansionStep expansion_step = ExpansionStep::kNone;

  // The word as it was written in the identifier.
  const std::string& written() const { return expanded_from ? *expanded_from : surface; }

  friend bool operator==(const WordToken&, const WordToken&) = default;
};

struct NormalizedName {
  std::string raw;
  std::vector<WordToken> tokens;

  std::vector<std::string> lemmas() const;
  std::vector<std::string> written_words() const;
  bool empty() const { return tokens.empty(); }

  friend bool operator==(const NormalizedName&, const NormalizedName&) = default;
};

// Splits at `$`, `_` and digit runs, then at lower/Title/UPPER boundaries.
// An UPPER run followed by a Title word gives up its last capital:
// "HTTPResponse" -> [http, response]. Throws Error(kDegenerateName) when no
// word remains.
std::vector<std::string> split_identifier(std::string_view name);

struct Lemma {
  std::string lemma;
  Inflection inflection = Inflection::kNone;

  friend bool operator==(const Lemma&, const Lemma&) = default;
};

// Rule-based lemmatizer backed by an irregular-form table and the embedded
// lexicon. Regular -ed forms are kept; see lemmatize.cpp.
Lemma lemmatize(std::string_view word);

// split -> expand_abbreviation -> lemmatize.
NormalizedName normalize(std::string_view name, const ExpansionContext& context);

// Normalization without any expansion source.
NormalizedName normalize(std::string_view name);

enum class CaseStyle {
  kLowerCamel,
  kUpperCamel,
  kUpperSnake,
  kLowerSnake,
};

CaseStyle detect_case_style(std::string_view raw);
std::string render_identifier(std::span<const std::string> words, CaseStyle style);

}  // namespace renas::lexical
