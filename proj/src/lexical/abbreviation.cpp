#include "renas/lexical/abbreviation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "renas/error.hpp"
#include "renas/lexical/word_lists.hpp"

namespace renas::lexical {
namespace {

constexpr std::pair<std::string_view, std::string_view> kBuiltinAbbreviations[] = {
    {"abs", "absolute"},      {"acc", "account"},        {"addr", "address"},
    {"alloc", "allocation"},  {"arg", "argument"},       {"args", "arguments"},
    {"arr", "array"},         {"attr", "attribute"},     {"attrs", "attributes"},
    {"auth", "authentication"}, {"avg", "average"},      {"btn", "button"},
    {"buf", "buffer"},        {"calc", "calculate"},     {"cb", "callback"},
    {"cfg", "configuration"}, {"cls", "class"},          {"cmd", "command"},
    {"cmp", "compare"},       {"cnt", "count"},          {"col", "column"},
    {"cols", "columns"},      {"conf", "configuration"}, {"conn", "connection"},
    {"ctx", "context"},       {"cur", "current"},        {"curr", "current"},
    {"db", "database"},       {"decl", "declaration"},   {"def", "definition"},
    {"del", "delete"},        {"desc", "description"},   {"dest", "destination"},
    {"dir", "directory"},     {"dirs", "directories"},   {"doc", "document"},
    {"docs", "documents"},    {"dst", "destination"},    {"elem", "element"},
    {"elems", "elements"},    {"env", "environment"},    {"err", "error"},
    {"evt", "event"},         {"exc", "exception"},      {"exec", "execute"},
    {"expr", "expression"},   {"ext", "extension"},      {"fmt", "format"},
    {"fn", "function"},       {"func", "function"},      {"hdr", "header"},
    {"idx", "index"},         {"img", "image"},          {"impl", "implementation"},
    {"init", "initialize"},   {"iter", "iterator"},      {"len", "length"},
    {"lib", "library"},       {"lst", "list"},           {"mgr", "manager"},
    {"misc", "miscellaneous"}, {"msg", "message"},       {"msgs", "messages"},
    {"num", "number"},        {"obj", "object"},         {"objs", "objects"},
    {"op", "operation"},      {"opt", "option"},         {"opts", "options"},
    {"param", "parameter"},   {"params", "parameters"},  {"pkg", "package"},
    {"pos", "position"},      {"pref", "preference"},    {"prefs", "preferences"},
    {"prev", "previous"},     {"prop", "property"},      {"props", "properties"},
    {"ptr", "pointer"},       {"pwd", "password"},       {"qty", "quantity"},
    {"ref", "reference"},     {"refs", "references"},    {"repo", "repository"},
    {"req", "request"},       {"resp", "response"},      {"sec", "second"},
    {"seq", "sequence"},      {"src", "source"},         {"srv", "server"},
    {"stmt", "statement"},    {"str", "string"},         {"sys", "system"},
    {"temp", "temporary"},    {"tmp", "temporary"},      {"tx", "transaction"},
    {"txt", "text"},          {"usr", "user"},           {"util", "utility"},
    {"utils", "utilities"},   {"val", "value"},          {"vals", "values"},
    {"var", "variable"},      {"vars", "variables"},     {"ver", "version"},
    {"win", "window"},
};

const ExpansionTable& empty_table() {
  static const ExpansionTable table;
  return table;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool is_lower_word(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

void ExpansionHistory::add(std::string_view abbreviation, std::string_view expansion,
                           std::string_view source_file, int count) {
  auto file_it = by_file_.find(source_file);
  if (file_it == by_file_.end()) {
    file_it = by_file_.emplace(std::string(source_file), ExpansionTable{}).first;
  }
  auto add_to = [&](ExpansionTable& table) {
    auto it = table.find(abbreviation);
    if (it == table.end()) it = table.emplace(std::string(abbreviation), std::map<std::string, int>{}).first;
    it->second[std::string(expansion)] += count;
  };
  add_to(file_it->second);
  add_to(project_);
}

const ExpansionTable& ExpansionHistory::file_table(std::string_view source_file) const {
  const auto it = by_file_.find(source_file);
  return it == by_file_.end() ? empty_table() : it->second;
}

std::vector<ExpansionRecord> ExpansionHistory::records() const {
  std::vector<ExpansionRecord> out;
  for (const auto& [file, table] : by_file_) {
    for (const auto& [abbr, expansions] : table) {
      for (const auto& [expansion, count] : expansions) {
        out.push_back({abbr, expansion, file, count});
      }
    }
  }
  return out;
}

const AbbreviationDictionary& AbbreviationDictionary::builtin() {
  static const AbbreviationDictionary dictionary = [] {
    AbbreviationDictionary d;
    for (const auto& [abbr, expansion] : kBuiltinAbbreviations) d.set(abbr, expansion);
    return d;
  }();
  return dictionary;
}

AbbreviationDictionary AbbreviationDictionary::parse(std::istream& in) {
  AbbreviationDictionary d;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kFormat,
                  "abbreviation dictionary line " + std::to_string(line_no) + ": expected abbr=expansion");
    }
    std::string abbr(trim(text.substr(0, eq)));
    std::string expansion(trim(text.substr(eq + 1)));
    std::transform(abbr.begin(), abbr.end(), abbr.begin(), [](unsigned char c) { return std::tolower(c); });
    std::transform(expansion.begin(), expansion.end(), expansion.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (!is_lower_word(abbr) || !is_lower_word(expansion) || abbr.size() >= expansion.size()) {
      throw Error(ErrorCode::kFormat, "abbreviation dictionary line " + std::to_string(line_no) +
                                          ": '" + std::string(text) + "' is not a valid expansion");
    }
    d.set(abbr, expansion);
  }
  return d;
}

AbbreviationDictionary AbbreviationDictionary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read abbreviation dictionary " + path);
  return parse(in);
}

void AbbreviationDictionary::set(std::string_view abbreviation, std::string_view expansion) {
  entries_.insert_or_assign(std::string(abbreviation), std::string(expansion));
}

void AbbreviationDictionary::merge(const AbbreviationDictionary& other) {
  for (const auto& [abbr, expansion] : other.entries_) set(abbr, expansion);
}

std::optional<std::string> AbbreviationDictionary::lookup(std::string_view abbreviation) const {
  const auto it = entries_.find(abbreviation);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool AbbreviationDictionary::contains(std::string_view abbreviation) const {
  return entries_.find(abbreviation) != entries_.end();
}

bool is_abbreviation_candidate(std::string_view word) {
  return word.size() <= 6 && is_lower_word(word) && !is_common_word(word) && !is_non_expandable(word);
}

bool could_abbreviate(std::string_view abbreviation, std::string_view full) {
  if (abbreviation.empty() || full.size() <= abbreviation.size() || full[0] != abbreviation[0]) {
    return false;
  }
  std::size_t i = 0;
  for (char c : full) {
    if (i < abbreviation.size() && c == abbreviation[i]) ++i;
  }
  return i == abbreviation.size();
}

Expansion expand_abbreviation(std::string_view word, const ExpansionContext& context) {
  if (!is_abbreviation_candidate(word)) return {std::string(word), ExpansionStep::kNone};

  // 1. Words of the name before renaming: longest, then earliest.
  const std::string* from_old = nullptr;
  for (const auto& w : context.old_words) {
    if (could_abbreviate(word, w) && !is_abbreviation_candidate(w) &&
        (from_old == nullptr || w.size() > from_old->size())) {
      from_old = &w;
    }
  }
  if (from_old != nullptr) return {*from_old, ExpansionStep::kOldName};

  // 2. Same file: most expansions, then longest, then alphabetical.
  if (context.file_history != nullptr) {
    if (const auto it = context.file_history->find(word); it != context.file_history->end()) {
      const std::string* best = nullptr;
      int best_count = 0;
      for (const auto& [expansion, count] : it->second) {
        if (best == nullptr || count > best_count ||
            (count == best_count && expansion.size() > best->size())) {
          best = &expansion;
          best_count = count;
        }
      }
      if (best != nullptr) return {*best, ExpansionStep::kFileHistory};
    }
  }

  // 3. Whole project: longest, then alphabetical.
  if (context.project_history != nullptr) {
    if (const auto it = context.project_history->find(word); it != context.project_history->end()) {
      const std::string* best = nullptr;
      for (const auto& [expansion, count] : it->second) {
        if (best == nullptr || expansion.size() > best->size()) best = &expansion;
      }
      if (best != nullptr) return {*best, ExpansionStep::kProjectHistory};
    }
  }

  // 4. Dictionary.
  if (context.dictionary != nullptr) {
    if (auto expansion = context.dictionary->lookup(word)) {
      return {std::move(*expansion), ExpansionStep::kDictionary};
    }
  }
  return {std::string(word), ExpansionStep::kNone};
}

}  // namespace renas::lexical
