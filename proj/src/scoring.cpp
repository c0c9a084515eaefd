#include "renas/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "renas/error.hpp"

namespace renas {

const char* to_string(Mode mode) { return mode == Mode::kThreshold ? "threshold" : "ranked"; }

double ScoreConfig::effective_cap() const {
  if (cap) return *cap;
  if (mode == Mode::kRanked) return kDefaultRankedCap;
  if (beta <= alpha) return std::numeric_limits<double>::infinity();
  return std::ceil((1 - alpha) / (beta - alpha));
}

void ScoreConfig::validate() const {
  auto unit = [](double v) { return v >= 0 && v <= 1; };
  if (!unit(alpha)) throw Error(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  if (!unit(beta)) throw Error(ErrorCode::kInvalidArgument, "beta must lie in [0, 1]");
  if (cap && !(*cap > 0)) throw Error(ErrorCode::kInvalidArgument, "cap must be positive");
}

double score_sim(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kDegenerateName, "similarity of a name without words");
  std::map<std::string_view, int> counts;
  for (const auto& w : a) ++counts[w];
  std::size_t shared = 0;
  for (const auto& w : b) {
    auto it = counts.find(w);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++shared;
    }
  }
  return 2.0 * static_cast<double>(shared) / static_cast<double>(a.size() + b.size());
}

double score_sim(const lexical::NormalizedName& a, const lexical::NormalizedName& b) {
  return score_sim(a.lemmas(), b.lemmas());
}

double score_rel(long distance) {
  if (distance <= 0) throw Error(ErrorCode::kInvalidArgument, "distance must be positive");
  return 1.0 / static_cast<double>(distance);
}

double combined_score(double sim, double rel, double alpha) { return alpha * sim + (1 - alpha) * rel; }

RecommendResult recommend(const SourceModel& model, const RelationshipGraph& graph, const Entity& seed,
                          const lexical::NormalizedName& new_name, const ScoreConfig& config) {
  config.validate();
  RecommendResult result;
  result.ops = extract_ops(seed.normalized, new_name);
  const auto eligible = result.ops.recommend_eligible();
  if (result.ops.empty()) {
    result.notes.push_back("old and new names normalize to the same words; nothing to recommend");
    return result;
  }
  if (eligible.empty()) {
    result.notes.push_back("no recommendable operation (order, format_a and format_c are not propagated)");
    return result;
  }

  for (const auto& reached : shortest_distances(graph, seed.id, config.effective_cap())) {
    if (reached.distance == 0) continue;
    auto index = model.index_of(reached.id);
    if (!index) continue;
    const Entity& cand = model.entities[*index];
    if (cand.constructor || cand.normalized.empty()) continue;
    const RenameOperation* op = nullptr;
    for (const auto& e : eligible) {
      if (applicable(e, cand.normalized)) {
        op = &e;
        break;
      }
    }
    if (!op) continue;

    Recommendation rec;
    rec.candidate = cand.id;
    rec.name = cand.name;
    rec.kind = cand.kind;
    rec.location = cand.location;
    rec.score_sim = score_sim(seed.normalized, cand.normalized);
    rec.score_rel = score_rel(reached.distance);
    rec.score = combined_score(rec.score_sim, rec.score_rel, config.alpha);
    rec.distance = reached.distance;
    rec.path = reached.relationships();
    rec.applied_op = *op;
    try {
      rec.suggested_name = suggest_name(*op, cand.normalized);
    } catch (const Error&) {
      // Nothing left to suggest; the candidate is still reported.
    }
    if (config.mode == Mode::kThreshold && rec.score < config.beta) continue;
    if (rec.suggested_name && has_several_sites(*op, cand.normalized)) {
      result.notes.push_back(cand.id + ": " + describe(*op) + " matches more than once; the first match was edited");
    }
    result.items.push_back(std::move(rec));
  }
  std::sort(result.items.begin(), result.items.end(), [](const Recommendation& a, const Recommendation& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.candidate < b.candidate;
  });
  return result;
}

}  // namespace renas
