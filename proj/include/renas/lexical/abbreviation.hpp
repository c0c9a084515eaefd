#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace renas::lexical {

// One observed abbreviation expansion, aggregated per source file.
struct ExpansionRecord {
  std::string abbreviation;
  std::string expansion;
  std::string source_file;
  int count = 1;

  friend bool operator==(const ExpansionRecord&, const ExpansionRecord&) = default;
};

// abbreviation -> expansion -> number of times observed.
using ExpansionTable = std::map<std::string, std::map<std::string, int>, std::less<>>;

// Expansion history of a project, keyed by file and aggregated project-wide.
class ExpansionHistory {
 public:
  void add(std::string_view abbreviation, std::string_view expansion,
           std::string_view source_file, int count = 1);

  // Table of a single file; empty if the file has no recorded expansion.
  const ExpansionTable& file_table(std::string_view source_file) const;
  const ExpansionTable& project_table() const { return project_; }

  // Every record, ordered by (file, abbreviation, expansion).
  std::vector<ExpansionRecord> records() const;

  bool empty() const { return project_.empty(); }

 private:
  std::map<std::string, ExpansionTable, std::less<>> by_file_;
  ExpansionTable project_;
};

// abbreviation -> expansion, as loaded from `abbr=expansion` text files.
class AbbreviationDictionary {
 public:
  AbbreviationDictionary() = default;

  // Built-in dictionary of common programming abbreviations.
  static const AbbreviationDictionary& builtin();

  // Parses `abbr=expansion` lines; `#` starts a comment. Throws
  // Error(kFormat) naming the offending line.
  static AbbreviationDictionary parse(std::istream& in);
  static AbbreviationDictionary load(const std::string& path);

  void set(std::string_view abbreviation, std::string_view expansion);
  // Entries of `other` override entries of this dictionary.
  void merge(const AbbreviationDictionary& other);

  std::optional<std::string> lookup(std::string_view abbreviation) const;
  bool contains(std::string_view abbreviation) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

enum class ExpansionStep {
  kNone = 0,
  kOldName = 1,
  kFileHistory = 2,
  kProjectHistory = 3,
  kDictionary = 4,
};

struct ExpansionContext {
  // Surface words of the identifier before it was renamed (step 1).
  std::span<const std::string> old_words;
  const ExpansionTable* file_history = nullptr;
  const ExpansionTable* project_history = nullptr;
  const AbbreviationDictionary* dictionary = nullptr;
};

struct Expansion {
  std::string word;
  ExpansionStep step = ExpansionStep::kNone;

  friend bool operator==(const Expansion&, const Expansion&) = default;
};

// True if `word` is short, unknown to the lexicon and not a conventional
// abbreviation; only such words are expanded.
bool is_abbreviation_candidate(std::string_view word);

// True if `full` could be the unabbreviated form of `abbreviation`: it is
// longer, starts with the same letter and contains the abbreviation as a
// prefix or as a character subsequence.
bool could_abbreviate(std::string_view abbreviation, std::string_view full);

// Tries the old name, the file history, the project history and the
// dictionary, in that order. Non-candidates come back unchanged.
Expansion expand_abbreviation(std::string_view word, const ExpansionContext& context);

}  // namespace renas::lexical
