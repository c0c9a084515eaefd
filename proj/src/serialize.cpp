#include "renas/serialize.hpp"

#include "renas/error.hpp"

namespace renas::lexical {

namespace {

Inflection parse_inflection(const std::string& text) {
  for (Inflection i : {Inflection::kNone, Inflection::kPlural, Inflection::kVerbConjugated, Inflection::kComparative}) {
    if (text == to_string(i)) return i;
  }
  throw Error(ErrorCode::kFormat, "unknown inflection: " + text);
}

}  // namespace

void to_json(nlohmann::json& j, const WordToken& t) {
  j = {{"surface", t.surface}, {"lemma", t.lemma}, {"inflection", to_string(t.inflection)}};
  if (t.expanded_from) {
    j["expandedFrom"] = *t.expanded_from;
    j["expansionStep"] = static_cast<int>(t.expansion_step);
  }
}

void from_json(const nlohmann::json& j, WordToken& t) {
  t.surface = j.at("surface").get<std::string>();
  t.lemma = j.at("lemma").get<std::string>();
  t.inflection = parse_inflection(j.at("inflection").get<std::string>());
  t.expanded_from.reset();
  t.expansion_step = ExpansionStep::kNone;
  if (j.contains("expandedFrom")) {
    t.expanded_from = j.at("expandedFrom").get<std::string>();
    t.expansion_step = static_cast<ExpansionStep>(j.at("expansionStep").get<int>());
  }
}

void to_json(nlohmann::json& j, const NormalizedName& n) { j = {{"raw", n.raw}, {"tokens", n.tokens}}; }

void from_json(const nlohmann::json& j, NormalizedName& n) {
  n.raw = j.at("raw").get<std::string>();
  n.tokens = j.at("tokens").get<std::vector<WordToken>>();
}

}  // namespace renas::lexical

namespace renas {

namespace {

EntityKind kind_from(const nlohmann::json& j) {
  auto kind = parse_entity_kind(j.get<std::string>());
  if (!kind) throw Error(ErrorCode::kFormat, "unknown entity kind: " + j.dump());
  return *kind;
}

Relationship relationship_from(const nlohmann::json& j) {
  auto rel = parse_relationship(j.get<std::string>());
  if (!rel) throw Error(ErrorCode::kFormat, "unknown relationship: " + j.dump());
  return *rel;
}

}  // namespace

void to_json(nlohmann::json& j, const Location& l) { j = {{"file", l.file}, {"line", l.line}, {"column", l.column}}; }

void from_json(const nlohmann::json& j, Location& l) {
  l.file = j.at("file").get<std::string>();
  l.line = j.at("line").get<int>();
  l.column = j.at("column").get<int>();
}

void to_json(nlohmann::json& j, const Entity& e) {
  j = {{"id", e.id},
       {"kind", to_string(e.kind)},
       {"name", e.name},
       {"normalized", e.normalized},
       {"location", e.location},
       {"beginLine", e.begin_line},
       {"endLine", e.end_line},
       {"enclosing", e.enclosing},
       {"constructor", e.constructor},
       {"declaredType", e.declared_type}};
}

void from_json(const nlohmann::json& j, Entity& e) {
  e.id = j.at("id").get<std::string>();
  e.kind = kind_from(j.at("kind"));
  e.name = j.at("name").get<std::string>();
  e.normalized = j.at("normalized").get<lexical::NormalizedName>();
  e.location = j.at("location").get<Location>();
  e.begin_line = j.at("beginLine").get<int>();
  e.end_line = j.at("endLine").get<int>();
  e.enclosing = j.at("enclosing").get<std::string>();
  e.constructor = j.at("constructor").get<bool>();
  e.declared_type = j.at("declaredType").get<std::string>();
}

void to_json(nlohmann::json& j, const SourceModel& m) {
  nlohmann::json inheritance = nlohmann::json::array();
  for (const auto& f : m.inheritance) inheritance.push_back({{"subtype", f.subtype}, {"supertype", f.supertype}});
  nlohmann::json typings = nlohmann::json::array();
  for (const auto& f : m.typings) {
    typings.push_back({{"entity", f.entity}, {"typeName", f.type_name}, {"typeEntity", f.type_entity}});
  }
  nlohmann::json assignments = nlohmann::json::array();
  for (const auto& f : m.assignments) assignments.push_back({{"lhs", f.lhs}, {"rhs", f.rhs}});
  nlohmann::json invocations = nlohmann::json::array();
  for (const auto& f : m.invocations) {
    invocations.push_back({{"caller", f.caller}, {"method", f.method}, {"arguments", f.arguments}});
  }
  nlohmann::json overloads = nlohmann::json::array();
  for (const auto& g : m.overloads) {
    overloads.push_back({{"owner", g.owner}, {"name", g.name}, {"methods", g.methods}});
  }
  j = {{"entities", m.entities},
       {"inheritance", inheritance},
       {"typings", typings},
       {"assignments", assignments},
       {"invocations", invocations},
       {"overloads", overloads},
       {"diagnostics",
        {{"filesParsed", m.diagnostics.files_parsed},
         {"filesFailed", m.diagnostics.files_failed},
         {"unresolvedReferences", m.diagnostics.unresolved_references},
         {"warnings", m.diagnostics.warnings}}}};
}

void from_json(const nlohmann::json& j, SourceModel& m) {
  m.entities = j.at("entities").get<std::vector<Entity>>();
  m.inheritance.clear();
  for (const auto& f : j.at("inheritance")) {
    m.inheritance.push_back({f.at("subtype").get<std::string>(), f.at("supertype").get<std::string>()});
  }
  m.typings.clear();
  for (const auto& f : j.at("typings")) {
    m.typings.push_back({f.at("entity").get<std::string>(), f.at("typeName").get<std::string>(),
                         f.at("typeEntity").get<std::string>()});
  }
  m.assignments.clear();
  for (const auto& f : j.at("assignments")) {
    m.assignments.push_back({f.at("lhs").get<std::string>(), f.at("rhs").get<std::vector<std::string>>()});
  }
  m.invocations.clear();
  for (const auto& f : j.at("invocations")) {
    m.invocations.push_back({f.at("caller").get<std::string>(), f.at("method").get<std::string>(),
                             f.at("arguments").get<std::vector<std::vector<std::string>>>()});
  }
  m.overloads.clear();
  for (const auto& g : j.at("overloads")) {
    m.overloads.push_back({g.at("owner").get<std::string>(), g.at("name").get<std::string>(),
                           g.at("methods").get<std::vector<std::string>>()});
  }
  const auto& d = j.at("diagnostics");
  m.diagnostics.files_parsed = d.at("filesParsed").get<int>();
  m.diagnostics.files_failed = d.at("filesFailed").get<int>();
  m.diagnostics.unresolved_references = d.at("unresolvedReferences").get<int>();
  m.diagnostics.warnings = d.at("warnings").get<std::vector<std::string>>();
  m.reindex();
}

void to_json(nlohmann::json& j, const RenameOperation& op) {
  j = {{"kind", to_string(op.kind)}, {"before", op.before}, {"after", op.after}, {"description", describe(op)}};
  if (op.left_anchor) j["leftAnchor"] = *op.left_anchor;
  if (op.right_anchor) j["rightAnchor"] = *op.right_anchor;
  if (!op.before_written.empty()) j["beforeWritten"] = op.before_written;
  if (!op.after_written.empty()) j["afterWritten"] = op.after_written;
}

void from_json(const nlohmann::json& j, RenameOperation& op) {
  auto kind = parse_op_kind(j.at("kind").get<std::string>());
  if (!kind) throw Error(ErrorCode::kFormat, "unknown operation kind: " + j.at("kind").dump());
  op.kind = *kind;
  op.before = j.at("before").get<std::vector<std::string>>();
  op.after = j.at("after").get<std::vector<std::string>>();
  op.left_anchor.reset();
  op.right_anchor.reset();
  if (j.contains("leftAnchor")) op.left_anchor = j.at("leftAnchor").get<std::string>();
  if (j.contains("rightAnchor")) op.right_anchor = j.at("rightAnchor").get<std::string>();
  op.before_written = j.value("beforeWritten", std::vector<std::string>{});
  op.after_written = j.value("afterWritten", std::vector<std::string>{});
}

void to_json(nlohmann::json& j, const Recommendation& r) {
  nlohmann::json path = nlohmann::json::array();
  for (Relationship rel : r.path) path.push_back(std::string(to_string(rel)));
  j = {{"candidate", r.candidate},
       {"name", r.name},
       {"kind", to_string(r.kind)},
       {"location", r.location},
       {"scoreSim", r.score_sim},
       {"scoreRel", r.score_rel},
       {"score", r.score},
       {"distance", r.distance},
       {"path", path},
       {"appliedOp", r.applied_op}};
  j["suggestedName"] = r.suggested_name ? nlohmann::json(*r.suggested_name) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, Recommendation& r) {
  r.candidate = j.at("candidate").get<std::string>();
  r.name = j.at("name").get<std::string>();
  r.kind = kind_from(j.at("kind"));
  r.location = j.at("location").get<Location>();
  r.score_sim = j.at("scoreSim").get<double>();
  r.score_rel = j.at("scoreRel").get<double>();
  r.score = j.at("score").get<double>();
  r.distance = j.at("distance").get<long>();
  r.path.clear();
  for (const auto& rel : j.at("path")) r.path.push_back(relationship_from(rel));
  r.applied_op = j.at("appliedOp").get<RenameOperation>();
  r.suggested_name.reset();
  if (!j.at("suggestedName").is_null()) r.suggested_name = j.at("suggestedName").get<std::string>();
}

}  // namespace renas
