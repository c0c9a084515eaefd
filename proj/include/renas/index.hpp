#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "renas/graph.hpp"
#include "renas/lexical/abbreviation.hpp"
#include "renas/scoring.hpp"
#include "renas/source_model.hpp"

namespace renas {

// A project ready for recommendation: entities with history-aware
// normalized names, the relationship graph and the expansion history.
struct Index {
  SourceModel model;
  RelationshipGraph graph;
  lexical::ExpansionHistory history;
  lexical::AbbreviationDictionary dictionary;
  std::string fingerprint;  // hash of the sources and dictionary
};

inline constexpr int kIndexFormatVersion = 1;

// Records, for every abbreviation candidate in an entity name, the words of
// directly related entities it could abbreviate, then renormalizes every
// entity using the file history, project history and dictionary.
void expand_with_history(SourceModel& model, const RelationshipGraph& graph, lexical::ExpansionHistory& history,
                         const lexical::AbbreviationDictionary& dictionary);

// `extra` entries override the built-in dictionary.
Index build_index(std::vector<SourceFile> files, const lexical::AbbreviationDictionary* extra = nullptr);
Index build_index(const std::string& root, const lexical::AbbreviationDictionary* extra = nullptr);

// Uses $RENAS_CACHE_DIR/<fingerprint>.json when the variable is set,
// building and storing the index on a miss.
Index load_or_build_index(const std::string& root, const lexical::AbbreviationDictionary* extra = nullptr);

std::string serialize_index(const Index& index);
// Throws Error(kFormat) for unreadable input and Error(kVersionMismatch)
// for another format version.
Index deserialize_index(std::string_view text);
void save_index(const Index& index, const std::string& path);
Index load_index(const std::string& path);

// Normalizes the new name of `seed`, expanding abbreviations from the old
// name first, then the histories and the dictionary.
lexical::NormalizedName normalize_new_name(const Index& index, const Entity& seed, std::string_view new_name);

struct SeedQuery {
  std::string file;
  int line = 0;
  std::string old_name;
  std::string new_name;
  std::optional<EntityKind> kind;
};

struct SeededResult {
  const Entity* seed = nullptr;
  lexical::NormalizedName new_name;
  RecommendResult result;
};

// Resolves the seed declaration and recommends co-renamings for it.
SeededResult recommend_for(const Index& index, const SeedQuery& query, const ScoreConfig& config);

}  // namespace renas
