#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "renas/lexical/normalize.hpp"
#include "renas/lexical/word_lists.hpp"

// Noun rules run before verb rules. Regular -ed forms are never reduced:
// in identifiers they act as adjectives ("matched", "selected", "enabled"),
// so getMatchedResources keeps the word "matched".

namespace renas::lexical {
namespace {

using I = Inflection;

struct Irregular {
  const char* form;
  const char* lemma;
  Inflection inflection;
};

constexpr Irregular kIrregular[] = {
    // Plurals.
    {"children", "child", I::kPlural},     {"men", "man", I::kPlural},
    {"women", "woman", I::kPlural},        {"feet", "foot", I::kPlural},
    {"teeth", "tooth", I::kPlural},        {"geese", "goose", I::kPlural},
    {"mice", "mouse", I::kPlural},         {"oxen", "ox", I::kPlural},
    {"indices", "index", I::kPlural},      {"vertices", "vertex", I::kPlural},
    {"matrices", "matrix", I::kPlural},    {"appendices", "appendix", I::kPlural},
    {"analyses", "analysis", I::kPlural},  {"axes", "axis", I::kPlural},
    {"bases", "base", I::kPlural},         {"crises", "crisis", I::kPlural},
    {"theses", "thesis", I::kPlural},      {"hypotheses", "hypothesis", I::kPlural},
    {"diagnoses", "diagnosis", I::kPlural}, {"parentheses", "parenthesis", I::kPlural},
    {"synopses", "synopsis", I::kPlural},  {"criteria", "criterion", I::kPlural},
    {"phenomena", "phenomenon", I::kPlural}, {"schemata", "schema", I::kPlural},
    {"lives", "life", I::kPlural},         {"wives", "wife", I::kPlural},
    {"knives", "knife", I::kPlural},       {"leaves", "leaf", I::kPlural},
    {"halves", "half", I::kPlural},        {"selves", "self", I::kPlural},
    {"shelves", "shelf", I::kPlural},      {"wolves", "wolf", I::kPlural},
    {"thieves", "thief", I::kPlural},      {"loaves", "loaf", I::kPlural},
    {"elves", "elf", I::kPlural},          {"calves", "calf", I::kPlural},
    {"scarves", "scarf", I::kPlural},      {"potatoes", "potato", I::kPlural},
    {"tomatoes", "tomato", I::kPlural},    {"heroes", "hero", I::kPlural},
    {"echoes", "echo", I::kPlural},        {"vetoes", "veto", I::kPlural},
    {"quizzes", "quiz", I::kPlural},       {"buses", "bus", I::kPlural},
    {"statuses", "status", I::kPlural},    {"aliases", "alias", I::kPlural},
    {"biases", "bias", I::kPlural},        {"canvases", "canvas", I::kPlural},
    {"viruses", "virus", I::kPlural},      {"bonuses", "bonus", I::kPlural},
    {"campuses", "campus", I::kPlural},    {"focuses", "focus", I::kPlural},
    {"corpora", "corpus", I::kPlural},     {"genera", "genus", I::kPlural},
    {"radii", "radius", I::kPlural},       {"stimuli", "stimulus", I::kPlural},
    {"cacti", "cactus", I::kPlural},       {"nuclei", "nucleus", I::kPlural},
    {"syllabi", "syllabus", I::kPlural},   {"alumni", "alumnus", I::kPlural},
    {"dice", "die", I::kPlural},           {"pennies", "penny", I::kPlural},
    {"cookies", "cookie", I::kPlural},     {"movies", "movie", I::kPlural},
    {"zombies", "zombie", I::kPlural},     {"ties", "tie", I::kPlural},
    {"lies", "lie", I::kPlural},           {"pies", "pie", I::kPlural},
    // Irregular verbs: be, have, do, go.
    {"am", "be", I::kVerbConjugated},      {"are", "be", I::kVerbConjugated},
    {"is", "be", I::kVerbConjugated},      {"was", "be", I::kVerbConjugated},
    {"were", "be", I::kVerbConjugated},    {"being", "be", I::kVerbConjugated},
    {"has", "have", I::kVerbConjugated},   {"had", "have", I::kVerbConjugated},
    {"having", "have", I::kVerbConjugated}, {"does", "do", I::kVerbConjugated},
    {"did", "do", I::kVerbConjugated},     {"doing", "do", I::kVerbConjugated},
    {"goes", "go", I::kVerbConjugated},    {"went", "go", I::kVerbConjugated},
    {"going", "go", I::kVerbConjugated},
    // Irregular simple past.
    {"began", "begin", I::kVerbConjugated}, {"bound", "bind", I::kVerbConjugated},
    {"bought", "buy", I::kVerbConjugated}, {"brought", "bring", I::kVerbConjugated},
    {"built", "build", I::kVerbConjugated}, {"caught", "catch", I::kVerbConjugated},
    {"chose", "choose", I::kVerbConjugated}, {"came", "come", I::kVerbConjugated},
    {"drew", "draw", I::kVerbConjugated},  {"drove", "drive", I::kVerbConjugated},
    {"ate", "eat", I::kVerbConjugated},    {"fell", "fall", I::kVerbConjugated},
    {"fought", "fight", I::kVerbConjugated}, {"flew", "fly", I::kVerbConjugated},
    {"forgot", "forget", I::kVerbConjugated}, {"froze", "freeze", I::kVerbConjugated},
    {"gave", "give", I::kVerbConjugated},  {"got", "get", I::kVerbConjugated},
    {"grew", "grow", I::kVerbConjugated},  {"hung", "hang", I::kVerbConjugated},
    {"heard", "hear", I::kVerbConjugated}, {"hid", "hide", I::kVerbConjugated},
    {"kept", "keep", I::kVerbConjugated},  {"knew", "know", I::kVerbConjugated},
    {"led", "lead", I::kVerbConjugated},   {"lent", "lend", I::kVerbConjugated},
    {"made", "make", I::kVerbConjugated},  {"meant", "mean", I::kVerbConjugated},
    {"met", "meet", I::kVerbConjugated},   {"paid", "pay", I::kVerbConjugated},
    {"ran", "run", I::kVerbConjugated},    {"rang", "ring", I::kVerbConjugated},
    {"rode", "ride", I::kVerbConjugated},  {"rose", "rise", I::kVerbConjugated},
    {"said", "say", I::kVerbConjugated},   {"sang", "sing", I::kVerbConjugated},
    {"sat", "sit", I::kVerbConjugated},    {"saw", "see", I::kVerbConjugated},
    {"sold", "sell", I::kVerbConjugated},  {"sent", "send", I::kVerbConjugated},
    {"shook", "shake", I::kVerbConjugated}, {"shot", "shoot", I::kVerbConjugated},
    {"slept", "sleep", I::kVerbConjugated}, {"spoke", "speak", I::kVerbConjugated},
    {"spent", "spend", I::kVerbConjugated}, {"stood", "stand", I::kVerbConjugated},
    {"stole", "steal", I::kVerbConjugated}, {"struck", "strike", I::kVerbConjugated},
    {"swam", "swim", I::kVerbConjugated},  {"took", "take", I::kVerbConjugated},
    {"taught", "teach", I::kVerbConjugated}, {"thought", "think", I::kVerbConjugated},
    {"threw", "throw", I::kVerbConjugated}, {"told", "tell", I::kVerbConjugated},
    {"understood", "understand", I::kVerbConjugated}, {"woke", "wake", I::kVerbConjugated},
    {"won", "win", I::kVerbConjugated},    {"wore", "wear", I::kVerbConjugated},
    {"wrote", "write", I::kVerbConjugated}, {"sought", "seek", I::kVerbConjugated},
    {"dealt", "deal", I::kVerbConjugated}, {"dug", "dig", I::kVerbConjugated},
    {"fed", "feed", I::kVerbConjugated},   {"felt", "feel", I::kVerbConjugated},
    {"fled", "flee", I::kVerbConjugated},  {"slid", "slide", I::kVerbConjugated},
    {"spun", "spin", I::kVerbConjugated},                                        
    {"wound", "wind", I::kVerbConjugated}, {"withdrew", "withdraw", I::kVerbConjugated},
    {"overrode", "override", I::kVerbConjugated}, {"rewrote", "rewrite", I::kVerbConjugated},
    {"undid", "undo", I::kVerbConjugated}, {"redid", "redo", I::kVerbConjugated},
    // Comparatives and superlatives.
    {"better", "good", I::kComparative},   {"best", "good", I::kComparative},
    {"worse", "bad", I::kComparative},     {"worst", "bad", I::kComparative},
    {"further", "far", I::kComparative},   {"furthest", "far", I::kComparative},
    {"farther", "far", I::kComparative},   {"farthest", "far", I::kComparative},
    {"bigger", "big", I::kComparative},    {"biggest", "big", I::kComparative},
    {"smaller", "small", I::kComparative}, {"smallest", "small", I::kComparative},
    {"larger", "large", I::kComparative},  {"largest", "large", I::kComparative},
    {"greater", "great", I::kComparative}, {"greatest", "great", I::kComparative},
    {"higher", "high", I::kComparative},   {"highest", "high", I::kComparative},
    {"lower", "low", I::kComparative},     {"lowest", "low", I::kComparative},
    {"longer", "long", I::kComparative},   {"longest", "long", I::kComparative},
    {"shorter", "short", I::kComparative}, {"shortest", "short", I::kComparative},
    {"faster", "fast", I::kComparative},   {"fastest", "fast", I::kComparative},
    {"slower", "slow", I::kComparative},   {"slowest", "slow", I::kComparative},
    {"newer", "new", I::kComparative},     {"newest", "new", I::kComparative},
    {"older", "old", I::kComparative},     {"oldest", "old", I::kComparative},
    {"earlier", "early", I::kComparative}, {"earliest", "early", I::kComparative},
    {"latest", "late", I::kComparative},   {"easier", "easy", I::kComparative},
    {"easiest", "easy", I::kComparative},  {"harder", "hard", I::kComparative},
    {"hardest", "hard", I::kComparative},  {"wider", "wide", I::kComparative},
    {"widest", "wide", I::kComparative},   {"deeper", "deep", I::kComparative},
    {"deepest", "deep", I::kComparative},  {"stronger", "strong", I::kComparative},
    {"strongest", "strong", I::kComparative}, {"weaker", "weak", I::kComparative},
    {"weakest", "weak", I::kComparative},  {"closer", "close", I::kComparative},
    {"closest", "close", I::kComparative}, {"nearer", "near", I::kComparative},
    {"nearest", "near", I::kComparative},  {"heavier", "heavy", I::kComparative},
    {"heaviest", "heavy", I::kComparative}, {"simpler", "simple", I::kComparative},
    {"simplest", "simple", I::kComparative}, {"cheaper", "cheap", I::kComparative},
    {"cheapest", "cheap", I::kComparative}, {"younger", "young", I::kComparative},
    {"youngest", "young", I::kComparative}, {"safer", "safe", I::kComparative},
    {"safest", "safe", I::kComparative},   {"fewer", "few", I::kComparative},
    {"fewest", "few", I::kComparative},    {"smarter", "smart", I::kComparative},
    {"quicker", "quick", I::kComparative}, {"quickest", "quick", I::kComparative},
    {"thicker", "thick", I::kComparative}, {"thinner", "thin", I::kComparative},
    {"hotter", "hot", I::kComparative},    {"colder", "cold", I::kComparative},
    {"warmer", "warm", I::kComparative},   {"brighter", "bright", I::kComparative},
    {"darker", "dark", I::kComparative},   {"cleaner", "clean", I::kComparative},
    {"clearer", "clear", I::kComparative}, {"tighter", "tight", I::kComparative},
    {"looser", "loose", I::kComparative},  {"richer", "rich", I::kComparative},
    {"narrower", "narrow", I::kComparative}, {"shallower", "shallow", I::kComparative},
};

// Words ending in -s that are not plurals even though a lexicon word
// remains after stripping the s.
constexpr const char* kNotPlural[] = {
    "news", "always", "perhaps", "towards", "afterwards", "besides", "sometimes",
    "this", "thus", "plus", "yes", "its", "his", "hers", "ours", "yours", "theirs",
    "as", "us", "series", "species", "means", "whereas", "lens", "gas", "bias",
    "alias", "canvas", "atlas", "chaos", "physics", "mathematics", "economics",
    "politics", "ethics", "kudos", "analytics", "graphics", "metrics", "statistics",
    "diagnostics", "semantics", "mechanics", "dynamics", "logistics", "tennis",
    "class", "less", "unless", "various", "previous", "across", "christmas",
};

// -ing words used as nouns in identifiers.
constexpr const char* kIngNouns[] = {
    "string", "thing", "nothing", "something", "anything", "everything", "during",
    "setting", "mapping", "binding", "building", "spring", "ring", "king", "wing",
    "morning", "evening", "ceiling", "ping", "padding", "heading", "listing",
    "meeting", "wedding", "clothing", "painting", "drawing", "warning", "housing",
    "funding", "training", "feeling", "beginning", "ending", "writing", "reading",
    "learning", "pricing", "rating", "routing", "logging", "thinking", "opening",
    "meaning", "offering", "interesting", "missing", "pending", "remaining",
    "existing", "outstanding", "following", "incoming", "outgoing", "upcoming",
    "underlying", "corresponding", "trailing", "leading", "boring", "amazing",
    "charming", "sibling", "darling", "duckling", "dumpling", "inning", "lightning",
    "swing", "sing", "bring", "sting", "cling", "fling", "sling", "thong", "among",
};

const std::unordered_map<std::string_view, Lemma>& irregular_table() {
  static const auto* table = [] {
    auto* m = new std::unordered_map<std::string_view, Lemma>();
    for (const auto& entry : kIrregular) m->emplace(entry.form, Lemma{entry.lemma, entry.inflection});
    return m;
  }();
  return *table;
}

bool contains(const auto& list, std::string_view word) {
  for (std::string_view w : list) {
    if (w == word) return true;
  }
  return false;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::optional<std::string> singular(std::string_view word) {
  if (word.size() < 3 || word.back() != 's' || contains(kNotPlural, word)) return std::nullopt;
  const std::string drop_s(word.substr(0, word.size() - 1));
  if (ends_with(word, "ss") || ends_with(word, "us") || ends_with(word, "is")) {
    // uris -> uri, apis -> api; basis, status stay.
    if (is_non_expandable(drop_s)) return drop_s;
    return std::nullopt;
  }
  const std::string drop_es(word.size() > 3 ? word.substr(0, word.size() - 2) : std::string());
  const bool word_known = is_lexicon_word(word);

  if (ends_with(word, "ies") && word.size() > 4) {
    if (is_lexicon_word(drop_s)) return drop_s;
    return std::string(word.substr(0, word.size() - 3)) + "y";
  }
  if (ends_with(word, "sses") || ends_with(word, "xes") || ends_with(word, "zes") ||
      ends_with(word, "ches") || ends_with(word, "shes") || ends_with(word, "oes")) {
    if (is_lexicon_word(drop_s)) return drop_s;
    return drop_es;
  }
  if (ends_with(word, "ves")) {
    if (is_lexicon_word(drop_s)) return drop_s;
    const std::string stem(word.substr(0, word.size() - 3));
    if (is_lexicon_word(stem + "f")) return stem + "f";
    if (is_lexicon_word(stem + "fe")) return stem + "fe";
    return drop_s;
  }
  if (is_lexicon_word(drop_s)) return drop_s;
  // A known word that does not reduce to a known word is left alone.
  if (word_known) return std::nullopt;
  return drop_s;
}

// A lexicon word that is its own lemma; "brows" and "rang" are not.
bool is_base_word(const std::string& word) { return is_lexicon_word(word) && lemmatize(word).lemma == word; }

std::optional<std::string> infinitive_of_ing(std::string_view word) {
  if (word.size() < 5 || !ends_with(word, "ing") || contains(kIngNouns, word)) return std::nullopt;
  const std::string stem(word.substr(0, word.size() - 3));
  if (std::none_of(stem.begin(), stem.end(), is_vowel) && stem.find('y') == std::string::npos) {
    return std::nullopt;
  }
  const std::size_t n = stem.size();
  const bool doubled = n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]);
  const bool cvc = n >= 2 && !is_vowel(stem[n - 1]) && stem[n - 1] != 'w' && stem[n - 1] != 'x' &&
                   stem[n - 1] != 'y' && is_vowel(stem[n - 2]) && (n < 3 || !is_vowel(stem[n - 3]));

  if (ends_with(stem, "y") && n >= 2 && !is_vowel(stem[n - 2]) && is_lexicon_word(stem.substr(0, n - 1) + "ie")) {
    return stem.substr(0, n - 1) + "ie";  // lying -> lie
  }
  if (doubled) {
    const char last = stem[n - 1];
    // assessing -> assess, calling -> call
    if ((last == 's' || last == 'l' || last == 'z' || last == 'f') && is_base_word(stem)) return stem;
    const std::string undoubled = stem.substr(0, n - 1);
    if (is_base_word(undoubled)) return undoubled;  // running -> run
    if (is_base_word(stem)) return stem;            // passing -> pass
  }
  if (cvc && is_base_word(stem + "e")) return stem + "e";  // using -> use
  if (is_base_word(stem)) return stem;                     // loading -> load
  if (is_base_word(stem + "e")) return stem + "e";         // making -> make
  if (is_lexicon_word(word)) return std::nullopt;
  if (doubled && stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    return stem.substr(0, n - 1);
  }
  return stem;
}

}  // namespace

const char* to_string(Inflection inflection) {
  switch (inflection) {
    case Inflection::kNone: return "none";
    case Inflection::kPlural: return "plural";
    case Inflection::kVerbConjugated: return "verb_conjugated";
    case Inflection::kComparative: return "comparative_or_superlative";
  }
  return "none";
}

Lemma lemmatize(std::string_view word) {
  const auto& irregular = irregular_table();
  if (const auto it = irregular.find(word); it != irregular.end()) return it->second;

  if (auto noun = singular(word)) {
    // "settings" -> "setting" -> ...; keep the result a fixed point.
    Lemma inner = lemmatize(*noun);
    return {std::move(inner.lemma), Inflection::kPlural};
  }
  if (auto verb = infinitive_of_ing(word)) return {std::move(*verb), Inflection::kVerbConjugated};
  return {std::string(word), Inflection::kNone};
}

}  // namespace renas::lexical
