#include "renas/index.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "renas/error.hpp"
#include "renas/serialize.hpp"

namespace renas {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Fnv1a {
 public:
  void add(std::string_view text) {
    for (unsigned char c : text) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
    hash_ ^= 0xff;  // field separator
    hash_ *= 0x100000001b3ULL;
  }
  std::string hex() const {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << hash_;
    return out.str();
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::string fingerprint(const std::vector<SourceFile>& files, const lexical::AbbreviationDictionary& dictionary) {
  Fnv1a h;
  h.add("renas-index/" + std::to_string(kIndexFormatVersion));
  for (const auto& f : files) {
    h.add(f.path);
    h.add(f.text);
  }
  for (const auto& [abbr, exp] : dictionary.entries()) {
    h.add(abbr);
    h.add(exp);
  }
  return h.hex();
}

lexical::AbbreviationDictionary merged_dictionary(const lexical::AbbreviationDictionary* extra) {
  lexical::AbbreviationDictionary dict = lexical::AbbreviationDictionary::builtin();
  if (extra) dict.merge(*extra);
  return dict;
}

std::vector<std::string> split_or_empty(std::string_view name) {
  try {
    return lexical::split_identifier(name);
  } catch (const Error&) {
    return {};
  }
}

}  // namespace

void expand_with_history(SourceModel& model, const RelationshipGraph& graph, lexical::ExpansionHistory& history,
                         const lexical::AbbreviationDictionary& dictionary) {
  std::vector<std::vector<std::string>> words(model.entities.size());
  for (std::size_t i = 0; i < model.entities.size(); ++i) words[i] = split_or_empty(model.entities[i].name);

  // One-hop neighbourhoods, ignoring edge direction.
  std::vector<std::set<std::size_t>> neighbours(model.entities.size());
  for (std::size_t n = 0; n < graph.node_count(); ++n) {
    auto from = model.index_of(graph.id(n));
    if (!from) continue;
    for (const Edge& e : graph.out_edges(n)) {
      auto to = model.index_of(graph.id(e.to));
      if (!to) continue;
      neighbours[*from].insert(*to);
      neighbours[*to].insert(*from);
    }
  }

  for (std::size_t i = 0; i < model.entities.size(); ++i) {
    for (const auto& w : words[i]) {
      if (!lexical::is_abbreviation_candidate(w)) continue;
      std::map<std::string, int> support;
      for (std::size_t n : neighbours[i]) {
        for (const auto& full : words[n]) {
          if (lexical::could_abbreviate(w, full) && !lexical::is_abbreviation_candidate(full)) ++support[full];
        }
      }
      const std::string* best = nullptr;
      int best_count = 0;
      for (const auto& [full, count] : support) {
        if (!best || std::make_tuple(count, full.size()) > std::make_tuple(best_count, best->size())) {
          best = &full;
          best_count = count;
        }
      }
      if (best) history.add(w, *best, model.entities[i].location.file);
    }
  }

  for (auto& e : model.entities) {
    lexical::ExpansionContext context;
    context.file_history = &history.file_table(e.location.file);
    context.project_history = &history.project_table();
    context.dictionary = &dictionary;
    try {
      e.normalized = lexical::normalize(e.name, context);
    } catch (const Error&) {
      e.normalized = lexical::NormalizedName{e.name, {}};
    }
  }
}

Index build_index(std::vector<SourceFile> files, const lexical::AbbreviationDictionary* extra) {
  Index index;
  index.dictionary = merged_dictionary(extra);
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  index.fingerprint = fingerprint(files, index.dictionary);
  index.model = build_source_model(std::move(files), &index.dictionary);
  index.graph = build_graph(index.model);
  expand_with_history(index.model, index.graph, index.history, index.dictionary);
  return index;
}

Index build_index(const std::string& root, const lexical::AbbreviationDictionary* extra) {
  return build_index(read_java_sources(root), extra);
}

Index load_or_build_index(const std::string& root, const lexical::AbbreviationDictionary* extra) {
  const char* dir = std::getenv("RENAS_CACHE_DIR");
  if (!dir || !*dir) return build_index(root, extra);
  auto files = read_java_sources(root);
  const std::string key = fingerprint(files, merged_dictionary(extra));
  const fs::path path = fs::path(dir) / (key + ".json");
  std::error_code ec;
  if (fs::exists(path, ec)) return load_index(path.string());
  Index index = build_index(std::move(files), extra);
  fs::create_directories(dir, ec);
  save_index(index, path.string());
  return index;
}

std::string serialize_index(const Index& index) {
  json edges = json::array();
  for (const Edge& e : index.graph.edges()) {
    edges.push_back({index.graph.id(e.from), std::string(to_string(e.relationship)), index.graph.id(e.to)});
  }
  json history = json::array();
  for (const auto& r : index.history.records()) {
    history.push_back({{"abbreviation", r.abbreviation},
                       {"expansion", r.expansion},
                       {"sourceFile", r.source_file},
                       {"count", r.count}});
  }
  json doc = {{"format", "renas-index"},
              {"version", kIndexFormatVersion},
              {"fingerprint", index.fingerprint},
              {"dictionary", index.dictionary.entries()},
              {"model", index.model},
              {"graph", {{"nodes", index.model.entities.size()}, {"edges", edges}}},
              {"expansionHistory", history}};
  return doc.dump(1) + "\n";
}

Index deserialize_index(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("index is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != "renas-index") {
    throw Error(ErrorCode::kFormat, "not a renas index file");
  }
  const int version = doc.value("version", -1);
  if (version != kIndexFormatVersion) {
    throw Error(ErrorCode::kVersionMismatch, "index format version " + std::to_string(version) +
                                                 " is not supported (expected " +
                                                 std::to_string(kIndexFormatVersion) + "); rebuild the index");
  }
  Index index;
  try {
    index.fingerprint = doc.at("fingerprint").get<std::string>();
    for (const auto& [abbr, exp] : doc.at("dictionary").items()) index.dictionary.set(abbr, exp.get<std::string>());
    index.model = doc.at("model").get<SourceModel>();
    for (const auto& e : index.model.entities) index.graph.add_node(e.id);
    for (const auto& e : doc.at("graph").at("edges")) {
      auto from = index.graph.node_of(e.at(0).get<std::string>());
      auto to = index.graph.node_of(e.at(2).get<std::string>());
      auto rel = parse_relationship(e.at(1).get<std::string>());
      if (!from || !to || !rel) throw Error(ErrorCode::kFormat, "index edge refers to unknown data: " + e.dump());
      index.graph.connect(*from, *to, *rel);
    }
    for (const auto& r : doc.at("expansionHistory")) {
      index.history.add(r.at("abbreviation").get<std::string>(), r.at("expansion").get<std::string>(),
                        r.at("sourceFile").get<std::string>(), r.at("count").get<int>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("malformed index: ") + e.what());
  }
  return index;
}

void save_index(const Index& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << serialize_index(index);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
}

Index load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return deserialize_index(text.str());
}

lexical::NormalizedName normalize_new_name(const Index& index, const Entity& seed, std::string_view new_name) {
  const auto old_words = split_or_empty(seed.name);
  lexical::ExpansionContext context;
  context.old_words = old_words;
  context.file_history = &index.history.file_table(seed.location.file);
  context.project_history = &index.history.project_table();
  context.dictionary = &index.dictionary;
  return lexical::normalize(new_name, context);
}

SeededResult recommend_for(const Index& index, const SeedQuery& query, const ScoreConfig& config) {
  SeededResult out;
  out.seed = &resolve_entity(index.model, query.file, query.line, query.old_name, query.kind);
  out.new_name = normalize_new_name(index, *out.seed, query.new_name);
  out.result = recommend(index.model, index.graph, *out.seed, out.new_name, config);
  return out;
}

}  // namespace renas
