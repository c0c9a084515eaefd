#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "renas/lexical/normalize.hpp"

namespace renas {

enum class EntityKind {
  kClass,
  kInterface,
  kMethod,
  kField,
  kParameter,
  kLocalVariable,
};

const char* to_string(EntityKind kind);
// Accepts the names produced by to_string ("class", "localVariable", ...).
std::optional<EntityKind> parse_entity_kind(std::string_view text);

struct Location {
  std::string file;  // relative to the project root, '/'-separated
  int line = 0;
  int column = 0;

  friend bool operator==(const Location&, const Location&) = default;
};

struct Entity {
  std::string id;
  EntityKind kind = EntityKind::kClass;
  std::string name;
  lexical::NormalizedName normalized;
  Location location;  // position of the declared name
  int begin_line = 0;  // span of the whole declaration
  int end_line = 0;
  std::string enclosing;  // id of the enclosing class or method, "" if top-level
  bool constructor = false;
  std::string declared_type;  // type as written (field/parameter/local type, method return type)

  bool is_type() const { return kind == EntityKind::kClass || kind == EntityKind::kInterface; }
  friend bool operator==(const Entity&, const Entity&) = default;
};

// Facts refer to entities by id; only entities declared in the project appear.
struct InheritanceFact {
  std::string subtype;
  std::string supertype;
  friend bool operator==(const InheritanceFact&, const InheritanceFact&) = default;
};

struct TypingFact {
  std::string entity;
  std::string type_name;    // as written, without type arguments
  std::string type_entity;  // resolved project type, "" if external or unresolved
  friend bool operator==(const TypingFact&, const TypingFact&) = default;
};

struct AssignmentFact {
  std::string lhs;
  std::vector<std::string> rhs;
  friend bool operator==(const AssignmentFact&, const AssignmentFact&) = default;
};

struct InvocationFact {
  std::string caller;  // enclosing method, "" outside method bodies
  std::string method;
  // Entities referenced by each argument expression, by position.
  std::vector<std::vector<std::string>> arguments;
  friend bool operator==(const InvocationFact&, const InvocationFact&) = default;
};

struct OverloadGroup {
  std::string owner;
  std::string name;
  std::vector<std::string> methods;  // at least two
  friend bool operator==(const OverloadGroup&, const OverloadGroup&) = default;
};

struct Diagnostics {
  int files_parsed = 0;
  int files_failed = 0;
  int unresolved_references = 0;
  std::vector<std::string> warnings;
  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

class SourceModel {
 public:
  std::vector<Entity> entities;
  std::vector<InheritanceFact> inheritance;
  std::vector<TypingFact> typings;
  std::vector<AssignmentFact> assignments;
  std::vector<InvocationFact> invocations;
  std::vector<OverloadGroup> overloads;
  Diagnostics diagnostics;

  // Rebuilds the id lookup; call after mutating `entities`.
  void reindex();
  const Entity* find(std::string_view id) const;
  std::optional<std::size_t> index_of(std::string_view id) const;

  friend bool operator==(const SourceModel& a, const SourceModel& b) {
    return a.entities == b.entities && a.inheritance == b.inheritance && a.typings == b.typings &&
           a.assignments == b.assignments && a.invocations == b.invocations &&
           a.overloads == b.overloads && a.diagnostics == b.diagnostics;
  }

 private:
  std::unordered_map<std::string, std::size_t> by_id_;
};

struct SourceFile {
  std::string path;  // relative, '/'-separated
  std::string text;
};

// Builds a model from in-memory sources. Files that fail to parse are
// skipped with a warning. Names are normalized without expansion history.
SourceModel build_source_model(std::vector<SourceFile> files,
                               const lexical::AbbreviationDictionary* dictionary = nullptr);

// Reads every .java file under root. Throws Error(kIo) if root is not a
// readable directory.
std::vector<SourceFile> read_java_sources(const std::string& root);

SourceModel parse_project(const std::string& root,
                          const lexical::AbbreviationDictionary* dictionary = nullptr);

// The entity named `name` whose declaration spans `line` of `file`. When
// several match, one declared on `line` itself is preferred, then `kind`.
// Throws Error(kNotFound) or Error(kAmbiguous).
const Entity& resolve_entity(const SourceModel& model, std::string_view file, int line,
                             std::string_view name, std::optional<EntityKind> kind = std::nullopt);

}  // namespace renas
