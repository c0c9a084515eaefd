#include "renas/lexical/normalize.hpp"

namespace renas::lexical {

std::vector<std::string> NormalizedName::lemmas() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.lemma);
  return out;
}

std::vector<std::string> NormalizedName::written_words() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.written());
  return out;
}

NormalizedName normalize(std::string_view name, const ExpansionContext& context) {
  NormalizedName result;
  result.raw = std::string(name);
  for (auto& word : split_identifier(name)) {
    WordToken token;
    Expansion expansion = expand_abbreviation(word, context);
    if (expansion.step != ExpansionStep::kNone) {
      token.expanded_from = std::move(word);
      token.expansion_step = expansion.step;
    }
    token.surface = std::move(expansion.word);
    Lemma lemma = lemmatize(token.surface);
    token.lemma = std::move(lemma.lemma);
    token.inflection = lemma.inflection;
    result.tokens.push_back(std::move(token));
  }
  return result;
}

NormalizedName normalize(std::string_view name) { return normalize(name, ExpansionContext{}); }

}  // namespace renas::lexical
