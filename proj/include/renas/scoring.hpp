#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renas/graph.hpp"
#include "renas/lexical/normalize.hpp"
#include "renas/rename_ops.hpp"
#include "renas/source_model.hpp"

namespace renas {

enum class Mode {
  kThreshold,  // every candidate scoring at least beta, as a set
  kRanked,     // every reachable candidate, best first
};

const char* to_string(Mode mode);

inline constexpr double kDefaultAlpha = 0.5;
inline constexpr double kDefaultBeta = 0.53;
inline constexpr double kDefaultRankedCap = 30;

struct ScoreConfig {
  double alpha = kDefaultAlpha;
  double beta = kDefaultBeta;
  Mode mode = Mode::kThreshold;
  std::optional<double> cap;  // distance cap; derived from alpha/beta when unset

  // The explicit cap, else the smallest cap that cannot drop a candidate
  // scoring at least beta (infinite when beta <= alpha), else the ranked
  // default.
  double effective_cap() const;
  // Throws Error(kInvalidArgument) for alpha/beta outside [0,1] or cap <= 0.
  void validate() const;
};

// Dice coefficient over lemma multisets. Throws Error(kDegenerateName) if
// either side is empty.
double score_sim(const std::vector<std::string>& a, const std::vector<std::string>& b);
double score_sim(const lexical::NormalizedName& a, const lexical::NormalizedName& b);
// 1 / distance. Throws Error(kInvalidArgument) for distance <= 0.
double score_rel(long distance);
double combined_score(double sim, double rel, double alpha);

struct Recommendation {
  std::string candidate;  // entity id
  std::string name;
  EntityKind kind = EntityKind::kClass;
  Location location;
  double score_sim = 0;
  double score_rel = 0;
  double score = 0;
  long distance = 0;
  std::vector<Relationship> path;
  RenameOperation applied_op;
  std::optional<std::string> suggested_name;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

struct RecommendResult {
  OpSet ops;
  std::vector<Recommendation> items;
  std::vector<std::string> notes;
};

// Candidates reachable from `seed` within the cap to which at least one
// recommendable operation of old->new applies. Similarity is measured
// against the seed's name before renaming. Results are ordered by score
// descending, then by entity id.
RecommendResult recommend(const SourceModel& model, const RelationshipGraph& graph, const Entity& seed,
                          const lexical::NormalizedName& new_name, const ScoreConfig& config);

}  // namespace renas
