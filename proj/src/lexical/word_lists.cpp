#include "renas/lexical/word_lists.hpp"

#include <string>
#include <unordered_set>

#include "renas/lexical/abbreviation.hpp"

namespace renas::lexical {
namespace {

#include "lexicon_words.inc"

const std::unordered_set<std::string_view>& lexicon() {
  static const auto* words = [] {
    auto* set = new std::unordered_set<std::string_view>();
    set->reserve(32768);
    for (std::string_view chunk : kLexiconChunks) {
      while (!chunk.empty()) {
        const auto end = chunk.find('\n');
        set->insert(chunk.substr(0, end));
        if (end == std::string_view::npos) break;
        chunk.remove_prefix(end + 1);
      }
    }
    return set;
  }();
  return *words;
}

constexpr std::string_view kNonExpandable[] = {
    "ajax", "api",  "app",  "ascii", "awt",  "css",  "csv",  "dom",  "dto",
    "ejb",  "gui",  "gzip", "html",  "http", "https", "id",  "ids",  "io",
    "ip",   "jar",  "java", "jdbc",  "jdk",  "jms",  "jpa",  "js",   "json",
    "jsp",  "jvm",  "ldap", "max",   "md",   "min",  "mime", "ok",   "os",
    "pdf",  "png",  "rgb",  "rmi",   "rss",  "sax",  "sha",  "smtp", "sql",
    "ssh",  "ssl",  "svg",  "tcp",   "tls",  "udp",  "ui",   "uml",  "uri",
    "url",  "utf",  "uuid", "xml",   "xpath", "xsd", "xsl",  "xslt", "yaml",
    "zip",
};

}  // namespace

bool is_lexicon_word(std::string_view word) { return lexicon().contains(word); }

bool is_common_word(std::string_view word) {
  return is_lexicon_word(word) && !AbbreviationDictionary::builtin().contains(word);
}

bool is_non_expandable(std::string_view word) {
  for (std::string_view w : kNonExpandable) {
    if (w == word) return true;
  }
  return false;
}

}  // namespace renas::lexical
