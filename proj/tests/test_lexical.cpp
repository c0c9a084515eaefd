#include <doctest.h>

#include <random>
#include <regex>
#include <sstream>
#include <string_view>

#include "renas/error.hpp"
#include "renas/lexical/abbreviation.hpp"
#include "renas/lexical/normalize.hpp"
#include "renas/lexical/word_lists.hpp"
#include "support.hpp"

namespace {

#include "../src/lexical/lexicon_words.inc"

using namespace renas;
using namespace renas::lexical;
using Words = std::vector<std::string>;

std::vector<std::string> lexicon() {
  std::vector<std::string> words;
  for (const char* chunk : kLexiconChunks) {
    std::istringstream in(chunk);
    for (std::string w; std::getline(in, w);) words.push_back(w);
  }
  return words;
}

// The splitting rules restated as regular expressions.
Words split_oracle(const std::string& name) {
  static const std::regex delimiters("[$_0-9]+");
  static const std::regex word("[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+");
  Words out;
  for (std::sregex_token_iterator part(name.begin(), name.end(), delimiters, -1), end; part != end; ++part) {
    const std::string chunk = *part;
    for (std::sregex_iterator m(chunk.begin(), chunk.end(), word), stop; m != stop; ++m) {
      std::string w = m->str();
      for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out.push_back(w);
    }
  }
  return out;
}

Words lemmas_of(std::string_view name, const ExpansionContext& context = {}) { return normalize(name, context).lemmas(); }

}  // namespace

TEST_SUITE("lexical") {
  TEST_CASE("split examples") {
    CHECK(split_identifier("DEFAULT_ARGUMENT_MAP_NAME") == Words{"default", "argument", "map", "name"});
    CHECK(split_identifier("getArgumentMapName") == Words{"get", "argument", "map", "name"});
    CHECK(split_identifier("parseHTTPResponse2Xml") == Words{"parse", "http", "response", "xml"});
    CHECK(split_identifier("$value_2x") == Words{"value", "x"});
    CHECK(split_identifier("URL") == Words{"url"});
  }

  TEST_CASE("split of a name without letters is degenerate") {
    for (const char* name : {"_", "$", "__2__", "123"}) {
      CHECK_THROWS_AS(split_identifier(name), Error);
    }
  }

  TEST_CASE("split agrees with the regular-expression oracle on random identifiers") {
    std::mt19937 rng(7);
    const std::string alphabet = "aAbBcCxXyYzZ019_$";
    std::uniform_int_distribution<std::size_t> len(1, 14);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    for (int i = 0; i < 2000; ++i) {
      std::string name;
      for (std::size_t n = len(rng); n > 0; --n) name += alphabet[pick(rng)];
      const Words expected = split_oracle(name);
      if (expected.empty()) {
        CHECK_THROWS_AS(split_identifier(name), Error);
        continue;
      }
      const Words got = split_identifier(name);
      CHECK_MESSAGE(got == expected, name);
      for (const auto& w : got) {
        CHECK(w.find_first_not_of("abcdefghijklmnopqrstuvwxyz") == std::string::npos);
      }
    }
  }

  TEST_CASE("lemmatize examples") {
    CHECK(lemmatize("names") == Lemma{"name", Inflection::kPlural});
    CHECK(lemmatize("word") == Lemma{"word", Inflection::kNone});
    CHECK(lemmatize("ancestors") == Lemma{"ancestor", Inflection::kPlural});
    CHECK(lemmatize("resources") == Lemma{"resource", Inflection::kPlural});
    CHECK(lemmatize("preferences") == Lemma{"preference", Inflection::kPlural});
    CHECK(lemmatize("matched").lemma == "matched");
    CHECK(lemmatize("children") == Lemma{"child", Inflection::kPlural});
  }

  TEST_CASE("lemmatize is idempotent over the lexicon") {
    const auto words = lexicon();
    REQUIRE(words.size() > 20000);
    for (const auto& w : words) {
      const std::string once = lemmatize(w).lemma;
      REQUIRE_MESSAGE(lemmatize(once).lemma == once, w);
      CHECK(!once.empty());
    }
  }

  TEST_CASE("uninflected words keep their surface as lemma") {
    for (const auto& w : lexicon()) {
      const Lemma l = lemmatize(w);
      if (l.inflection == Inflection::kNone) REQUIRE_MESSAGE(l.lemma == w, w);
    }
  }

  TEST_CASE("abbreviation expansion from the file history") {
    ExpansionTable file{{"prefs", {{"preferences", 1}}}};
    ExpansionContext context;
    context.file_history = &file;
    CHECK(expand_abbreviation("prefs", context) == Expansion{"preferences", ExpansionStep::kFileHistory});
    CHECK(expand_abbreviation("storage", context) == Expansion{"storage", ExpansionStep::kNone});
  }

  TEST_CASE("project history ties on count fall through to the longest expansion") {
    ExpansionTable project{{"num", {{"number", 3}, {"numeric", 3}}}};
    ExpansionContext context;
    context.project_history = &project;
    CHECK(expand_abbreviation("num", context) == Expansion{"numeric", ExpansionStep::kProjectHistory});
  }

  TEST_CASE("file history prefers the most frequent expansion, then the longest") {
    ExpansionTable file{{"str", {{"string", 2}, {"stream", 5}, {"structure", 1}}}};
    ExpansionContext context;
    context.file_history = &file;
    CHECK(expand_abbreviation("str", context).word == "stream");
    file["str"]["structure"] = 5;
    CHECK(expand_abbreviation("str", context).word == "structure");
  }

  TEST_CASE("an earlier expansion step shadows every later one") {
    const Words old_words{"get", "preferences"};
    ExpansionTable file{{"prefs", {{"prefetch", 9}}}};
    ExpansionTable project{{"prefs", {{"prefix", 9}}}};
    AbbreviationDictionary dict;
    dict.set("prefs", "prefabs");

    ExpansionContext context;
    context.old_words = old_words;
    context.file_history = &file;
    context.project_history = &project;
    context.dictionary = &dict;
    CHECK(expand_abbreviation("prefs", context) == Expansion{"preferences", ExpansionStep::kOldName});
    context.old_words = {};
    CHECK(expand_abbreviation("prefs", context) == Expansion{"prefetch", ExpansionStep::kFileHistory});
    context.file_history = nullptr;
    CHECK(expand_abbreviation("prefs", context) == Expansion{"prefix", ExpansionStep::kProjectHistory});
    context.project_history = nullptr;
    CHECK(expand_abbreviation("prefs", context) == Expansion{"prefabs", ExpansionStep::kDictionary});
    context.dictionary = nullptr;
    CHECK(expand_abbreviation("prefs", context) == Expansion{"prefs", ExpansionStep::kNone});
  }

  TEST_CASE("conventional abbreviations are never expanded") {
    AbbreviationDictionary dict;
    dict.set("pdf", "portable");
    ExpansionContext context;
    context.dictionary = &dict;
    for (const char* w : {"pdf", "uml", "xml", "http"}) {
      CHECK(is_non_expandable(w));
      CHECK(expand_abbreviation(w, context).step == ExpansionStep::kNone);
    }
  }

  TEST_CASE("could_abbreviate") {
    CHECK(could_abbreviate("prefs", "preferences"));
    CHECK(could_abbreviate("num", "number"));
    CHECK(could_abbreviate("ctx", "context"));
    CHECK_FALSE(could_abbreviate("ctx", "text"));
    CHECK_FALSE(could_abbreviate("number", "num"));
  }

  TEST_CASE("dictionary files") {
    std::istringstream in("# comment\nctx=context\n\n  mgr = manager  # trailing\n");
    const auto dict = AbbreviationDictionary::parse(in);
    CHECK(dict.lookup("ctx") == std::optional<std::string>("context"));
    CHECK(dict.lookup("mgr") == std::optional<std::string>("manager"));
    CHECK_FALSE(dict.contains("other"));
    std::istringstream bad("ctx=context\nno separator here\n");
    try {
      AbbreviationDictionary::parse(bad);
      FAIL("expected a format error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kFormat);
      CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
  }

  TEST_CASE("expansion history aggregates per file and project") {
    ExpansionHistory h;
    h.add("prefs", "preferences", "A.java");
    h.add("prefs", "preferences", "A.java");
    h.add("prefs", "prefix", "B.java");
    CHECK(h.file_table("A.java").at("prefs").at("preferences") == 2);
    CHECK(h.file_table("C.java").empty());
    CHECK(h.project_table().at("prefs").at("preferences") == 2);
    CHECK(h.project_table().at("prefs").at("prefix") == 1);
    const auto records = h.records();
    REQUIRE(records.size() == 2);
    CHECK(records[0] == ExpansionRecord{"prefs", "preferences", "A.java", 2});
  }

  TEST_CASE("normalize examples") {
    CHECK(lemmas_of("getPreferences") == Words{"get", "preference"});
    CHECK(lemmas_of("name") == Words{"name"});
    CHECK(lemmas_of("getAncestorResources") == Words{"get", "ancestor", "resource"});
    CHECK(lemmas_of("findInAncestors") == Words{"find", "in", "ancestor"});
    CHECK(lemmas_of("getMatchedResources") == Words{"get", "matched", "resource"});
    CHECK(lemmas_of("DEFAULT_ARGUMENT_MAP_NAME") == Words{"default", "argument", "map", "name"});

    ExpansionTable file{{"prefs", {{"preferences", 1}}}};
    ExpansionContext context;
    context.file_history = &file;
    const auto n = normalize("prefs", context);
    REQUIRE(n.tokens.size() == 1);
    CHECK(n.tokens[0].surface == "preferences");
    CHECK(n.tokens[0].lemma == "preference");
    CHECK(n.tokens[0].inflection == Inflection::kPlural);
    CHECK(n.tokens[0].expanded_from == std::optional<std::string>("prefs"));
    CHECK(n.tokens[0].written() == "prefs");
    CHECK(n.raw == "prefs");
  }

  TEST_CASE("normalizing a rendered normalized name is stable") {
    for (const char* name : {"getAncestorResources", "DEFAULT_ARGUMENT_MAP_NAME", "parseHTTPResponse2Xml",
                             "findInAncestors", "resourceUris", "childrenNodes", "isMatchedEntries"}) {
      const Words lemmas = lemmas_of(name);
      for (CaseStyle style : {CaseStyle::kLowerCamel, CaseStyle::kUpperCamel, CaseStyle::kUpperSnake,
                              CaseStyle::kLowerSnake}) {
        CHECK_MESSAGE(lemmas_of(render_identifier(lemmas, style)) == lemmas, name);
      }
    }
  }

  TEST_CASE("token invariants") {
    for (const char* name : {"getURLs", "mGetter2", "HTTPServer", "x", "a_b_c"}) {
      for (const auto& t : normalize(name).tokens) {
        CHECK(!t.surface.empty());
        CHECK(!t.lemma.empty());
        CHECK(t.surface.find_first_not_of("abcdefghijklmnopqrstuvwxyz") == std::string::npos);
        if (t.inflection == Inflection::kNone) CHECK(t.surface == t.lemma);
      }
    }
  }

  TEST_CASE("case styles") {
    CHECK(detect_case_style("getName") == CaseStyle::kLowerCamel);
    CHECK(detect_case_style("CallContext") == CaseStyle::kUpperCamel);
    CHECK(detect_case_style("DEFAULT_NAME") == CaseStyle::kUpperSnake);
    CHECK(detect_case_style("default_name") == CaseStyle::kLowerSnake);
    const Words w{"get", "argument", "variable", "name"};
    CHECK(render_identifier(w, CaseStyle::kLowerCamel) == "getArgumentVariableName");
    CHECK(render_identifier(w, CaseStyle::kUpperCamel) == "GetArgumentVariableName");
    CHECK(render_identifier(w, CaseStyle::kUpperSnake) == "GET_ARGUMENT_VARIABLE_NAME");
    CHECK(render_identifier(w, CaseStyle::kLowerSnake) == "get_argument_variable_name");
  }
}
