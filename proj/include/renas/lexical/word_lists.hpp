#pragma once

#include <string_view>

namespace renas::lexical {

// Membership in the embedded English lexicon (about 24k frequent words).
bool is_lexicon_word(std::string_view word);

// A lexicon word that is not itself a key of the built-in abbreviation
// dictionary. Words like "str" or "num" appear in general corpora but are
// abbreviations in code.
bool is_common_word(std::string_view word);

// Conventional abbreviations that are never expanded (pdf, uml, xml, ...).
bool is_non_expandable(std::string_view word);

}  // namespace renas::lexical
