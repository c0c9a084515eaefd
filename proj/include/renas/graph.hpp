#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "renas/source_model.hpp"

namespace renas {

enum class Relationship {
  kField,
  kMethod,
  kEnclosingClass,
  kParameter,
  kEnclosingMethod,
  kPass,
  kParent,
  kAncestor,
  kAssignmentEquation,
  kArgument,
  kType,
  kSiblingMembers,
  kParameterOverload,
};

struct RelationshipInfo {
  Relationship relationship;
  std::string_view name;
  int cost;
  bool symmetric;  // stored as two opposed edges
};

// All thirteen relationships in declaration order.
const std::array<RelationshipInfo, 13>& relationship_table();
const RelationshipInfo& info(Relationship relationship);
int edge_cost(Relationship relationship);
std::string_view to_string(Relationship relationship);
std::optional<Relationship> parse_relationship(std::string_view name);

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  Relationship relationship = Relationship::kField;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class RelationshipGraph {
 public:
  RelationshipGraph() = default;
  explicit RelationshipGraph(std::vector<std::string> node_ids);

  std::size_t add_node(std::string id);
  // Adds from->to, plus to->from for symmetric relationships. Self-loops and
  // exact duplicates are ignored.
  void connect(std::size_t from, std::size_t to, Relationship relationship);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::string& id(std::size_t node) const { return ids_[node]; }
  std::optional<std::size_t> node_of(std::string_view id) const;
  const std::vector<Edge>& out_edges(std::size_t node) const { return out_[node]; }
  // Every directed edge, ordered by (from id, relationship, to id).
  std::vector<Edge> edges() const;

  friend bool operator==(const RelationshipGraph& a, const RelationshipGraph& b) {
    return a.ids_ == b.ids_ && a.edges() == b.edges();
  }

 private:
  void add_directed(std::size_t from, std::size_t to, Relationship relationship);

  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::vector<std::vector<Edge>> out_;
  std::size_t edge_count_ = 0;
};

// Nodes are the model's entities, in model order.
RelationshipGraph build_graph(const SourceModel& model);

struct PathStep {
  Relationship relationship;
  std::size_t node;  // node reached by this step

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

struct DistanceResult {
  std::size_t node = 0;
  std::string id;
  long distance = 0;
  std::vector<PathStep> path;

  std::vector<Relationship> relationships() const;
  friend bool operator==(const DistanceResult&, const DistanceResult&) = default;
};

// Minimum-cost distances from `origin` to every node within `cap`, origin
// included at distance 0. Among minimum paths the witness is the one whose
// step sequence of (cost, relationship name, target id) is lexicographically
// smallest. Results are ordered by (distance, id). Throws Error(kNotFound)
// for an unknown origin and Error(kInvalidArgument) for a cap <= 0.
std::vector<DistanceResult> shortest_distances(const RelationshipGraph& graph, std::string_view origin,
                                               double cap);

// One line per directed edge: from id, relationship, to id, cost; tab-separated.
void dump_edges(const RelationshipGraph& graph, std::ostream& out);

}  // namespace renas
