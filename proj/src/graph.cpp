#include "renas/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "renas/error.hpp"

namespace renas {

namespace {

constexpr std::array<RelationshipInfo, 13> kTable = {{
    {Relationship::kField, "field", 4, false},
    {Relationship::kMethod, "method", 4, false},
    {Relationship::kEnclosingClass, "enclosingClass", 4, false},
    {Relationship::kParameter, "parameter", 3, false},
    {Relationship::kEnclosingMethod, "enclosingMethod", 3, false},
    {Relationship::kPass, "pass", 3, false},
    {Relationship::kParent, "parent", 3, true},
    {Relationship::kAncestor, "ancestor", 3, true},
    {Relationship::kAssignmentEquation, "assignmentEquation", 1, true},
    {Relationship::kArgument, "argument", 2, true},
    {Relationship::kType, "type", 3, true},
    {Relationship::kSiblingMembers, "siblingMembers", 1, true},
    {Relationship::kParameterOverload, "parameterOverload", 1, true},
}};

}  // namespace

const std::array<RelationshipInfo, 13>& relationship_table() { return kTable; }

const RelationshipInfo& info(Relationship relationship) {
  return kTable[static_cast<std::size_t>(relationship)];
}

int edge_cost(Relationship relationship) { return info(relationship).cost; }

std::string_view to_string(Relationship relationship) { return info(relationship).name; }

std::optional<Relationship> parse_relationship(std::string_view name) {
  for (const auto& row : kTable) {
    if (row.name == name) return row.relationship;
  }
  return std::nullopt;
}

std::vector<Relationship> DistanceResult::relationships() const {
  std::vector<Relationship> out;
  for (const auto& step : path) out.push_back(step.relationship);
  return out;
}

RelationshipGraph::RelationshipGraph(std::vector<std::string> node_ids) {
  for (auto& id : node_ids) add_node(std::move(id));
}

std::size_t RelationshipGraph::add_node(std::string id) {
  auto [it, inserted] = by_id_.emplace(id, ids_.size());
  if (!inserted) throw Error(ErrorCode::kInvalidArgument, "duplicate node id: " + id);
  ids_.push_back(std::move(id));
  out_.emplace_back();
  return ids_.size() - 1;
}

std::optional<std::size_t> RelationshipGraph::node_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

void RelationshipGraph::add_directed(std::size_t from, std::size_t to, Relationship relationship) {
  if (from == to) return;
  auto& list = out_[from];
  const Edge edge{from, to, relationship};
  if (std::find(list.begin(), list.end(), edge) != list.end()) return;
  list.push_back(edge);
  ++edge_count_;
}

void RelationshipGraph::connect(std::size_t from, std::size_t to, Relationship relationship) {
  add_directed(from, to, relationship);
  if (info(relationship).symmetric) add_directed(to, from, relationship);
}

std::vector<Edge> RelationshipGraph::edges() const {
  std::vector<Edge> all;
  all.reserve(edge_count_);
  for (const auto& list : out_) all.insert(all.end(), list.begin(), list.end());
  std::sort(all.begin(), all.end(), [&](const Edge& a, const Edge& b) {
    return std::forward_as_tuple(ids_[a.from], to_string(a.relationship), ids_[a.to]) <
           std::forward_as_tuple(ids_[b.from], to_string(b.relationship), ids_[b.to]);
  });
  return all;
}

RelationshipGraph build_graph(const SourceModel& model) {
  RelationshipGraph graph;
  for (const auto& e : model.entities) graph.add_node(e.id);
  auto node = [&](const std::string& id) { return graph.node_of(id); };

  // Inclusion.
  std::map<std::string, std::vector<std::size_t>> members;  // class id -> fields and methods
  std::map<std::string, std::vector<std::size_t>> params;   // method id -> parameters, in order
  for (std::size_t i = 0; i < model.entities.size(); ++i) {
    const Entity& e = model.entities[i];
    auto owner = e.enclosing.empty() ? std::nullopt : node(e.enclosing);
    if (!owner) continue;
    switch (e.kind) {
      case EntityKind::kField:
        graph.connect(*owner, i, Relationship::kField);
        graph.connect(i, *owner, Relationship::kEnclosingClass);
        members[e.enclosing].push_back(i);
        break;
      case EntityKind::kMethod:
        graph.connect(*owner, i, Relationship::kMethod);
        graph.connect(i, *owner, Relationship::kEnclosingClass);
        members[e.enclosing].push_back(i);
        break;
      case EntityKind::kParameter:
        graph.connect(*owner, i, Relationship::kParameter);
        graph.connect(i, *owner, Relationship::kEnclosingMethod);
        params[e.enclosing].push_back(i);
        break;
      case EntityKind::kLocalVariable:
        graph.connect(i, *owner, Relationship::kEnclosingMethod);
        break;
      default:
        break;  // nested types carry no inclusion edge
    }
  }

  // Sibling members.
  for (const auto& [owner, list] : members) {
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) graph.connect(list[a], list[b], Relationship::kSiblingMembers);
    }
  }

  // Inheritance: parent for direct supertypes, ancestor for depth >= 2.
  std::map<std::size_t, std::set<std::size_t>> supers;
  for (const auto& fact : model.inheritance) {
    auto sub = node(fact.subtype);
    auto super = node(fact.supertype);
    if (!sub || !super) continue;
    graph.connect(*sub, *super, Relationship::kParent);
    supers[*sub].insert(*super);
  }
  for (const auto& [start, direct] : supers) {
    std::set<std::size_t> seen(direct.begin(), direct.end());
    std::vector<std::size_t> frontier(direct.begin(), direct.end());
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (std::size_t c : frontier) {
        auto it = supers.find(c);
        if (it == supers.end()) continue;
        for (std::size_t s : it->second) {
          if (s == start || !seen.insert(s).second) continue;
          if (!direct.count(s)) graph.connect(start, s, Relationship::kAncestor);
          next.push_back(s);
        }
      }
      frontier = std::move(next);
    }
  }

  // Typing.
  for (const auto& fact : model.typings) {
    if (fact.type_entity.empty()) continue;
    auto a = node(fact.entity);
    auto t = node(fact.type_entity);
    if (a && t) graph.connect(*a, *t, Relationship::kType);
  }

  // Assignment.
  for (const auto& fact : model.assignments) {
    auto lhs = node(fact.lhs);
    if (!lhs) continue;
    for (const auto& r : fact.rhs) {
      if (auto rhs = node(r)) graph.connect(*lhs, *rhs, Relationship::kAssignmentEquation);
    }
  }

  // Invocation: pass and argument.
  for (const auto& fact : model.invocations) {
    auto method = node(fact.method);
    if (!method) continue;
    const auto& formal = params[fact.method];
    for (std::size_t pos = 0; pos < fact.arguments.size(); ++pos) {
      std::optional<std::size_t> param;
      if (!formal.empty()) param = formal[std::min(pos, formal.size() - 1)];
      for (const auto& a : fact.arguments[pos]) {
        auto arg = node(a);
        if (!arg) continue;
        graph.connect(*arg, *method, Relationship::kPass);
        if (param) graph.connect(*param, *arg, Relationship::kArgument);
      }
    }
  }

  // Parameters of overloads, all pairs across signatures.
  for (const auto& group : model.overloads) {
    for (std::size_t a = 0; a < group.methods.size(); ++a) {
      for (std::size_t b = a + 1; b < group.methods.size(); ++b) {
        for (std::size_t p : params[group.methods[a]]) {
          for (std::size_t q : params[group.methods[b]]) graph.connect(p, q, Relationship::kParameterOverload);
        }
      }
    }
  }
  return graph;
}

namespace {

// Lexicographic order of witness steps: (cost, relationship name, target id).
int compare_steps(const RelationshipGraph& graph, const PathStep& a, const PathStep& b) {
  const int ca = edge_cost(a.relationship);
  const int cb = edge_cost(b.relationship);
  if (ca != cb) return ca < cb ? -1 : 1;
  if (int c = to_string(a.relationship).compare(to_string(b.relationship)); c != 0) return c < 0 ? -1 : 1;
  if (int c = graph.id(a.node).compare(graph.id(b.node)); c != 0) return c < 0 ? -1 : 1;
  return 0;
}

bool path_less(const RelationshipGraph& graph, const std::vector<PathStep>& a, const std::vector<PathStep>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare_steps(graph, a[i], b[i]); c != 0) return c < 0;
  }
  return a.size() < b.size();
}

}  // namespace

std::vector<DistanceResult> shortest_distances(const RelationshipGraph& graph, std::string_view origin,
                                               double cap) {
  auto start = graph.node_of(origin);
  if (!start) throw Error(ErrorCode::kNotFound, "unknown origin node: " + std::string(origin));
  if (!(cap > 0)) throw Error(ErrorCode::kInvalidArgument, "distance cap must be positive");

  constexpr long kInf = -1;
  std::vector<long> dist(graph.node_count(), kInf);
  std::vector<char> done(graph.node_count(), 0);
  std::vector<std::size_t> order;  // settled nodes, by distance
  using Item = std::pair<long, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[*start] = 0;
  queue.emplace(0, *start);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (done[u] || d != dist[u]) continue;
    done[u] = 1;
    order.push_back(u);
    for (const Edge& e : graph.out_edges(u)) {
      const long nd = d + edge_cost(e.relationship);
      if (static_cast<double>(nd) > cap) continue;
      if (dist[e.to] == kInf || nd < dist[e.to]) {
        dist[e.to] = nd;
        queue.emplace(nd, e.to);
      }
    }
  }

  // Witness paths: costs are positive, so every tight predecessor of a node
  // is settled earlier; pick the smallest extension among them.
  std::vector<std::vector<PathStep>> best(graph.node_count());
  std::vector<char> has(graph.node_count(), 0);
  has[*start] = 1;
  for (std::size_t u : order) {
    for (const Edge& e : graph.out_edges(u)) {
      if (!done[e.to] || e.to == *start) continue;
      if (dist[u] + edge_cost(e.relationship) != dist[e.to]) continue;
      std::vector<PathStep> candidate = best[u];
      candidate.push_back({e.relationship, e.to});
      if (!has[e.to] || path_less(graph, candidate, best[e.to])) {
        best[e.to] = std::move(candidate);
        has[e.to] = 1;
      }
    }
  }

  std::vector<DistanceResult> results;
  results.reserve(order.size());
  for (std::size_t v : order) results.push_back({v, graph.id(v), dist[v], std::move(best[v])});
  std::sort(results.begin(), results.end(), [](const DistanceResult& a, const DistanceResult& b) {
    return std::tie(a.distance, a.id) < std::tie(b.distance, b.id);
  });
  return results;
}

void dump_edges(const RelationshipGraph& graph, std::ostream& out) {
  for (const Edge& e : graph.edges()) {
    out << graph.id(e.from) << '\t' << to_string(e.relationship) << '\t' << graph.id(e.to) << '\t'
        << edge_cost(e.relationship) << '\n';
  }
}

}  // namespace renas
