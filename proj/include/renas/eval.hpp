#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "renas/index.hpp"
#include "renas/scoring.hpp"
#include "renas/source_model.hpp"

namespace renas {

struct RenameRecord {
  std::string file;  // relative to the project root
  int line = 0;
  EntityKind kind = EntityKind::kClass;
  std::string old_name;
  std::string new_name;
};

struct CoRenamedSet {
  std::string id;
  std::string project;
  std::string project_root;  // resolved against the dataset file's directory
  std::vector<RenameRecord> members;
};

// Parses a dataset document; `base_dir` anchors relative project roots.
// Throws Error(kSchema) naming the offending JSON path and, for members,
// the record it belongs to.
std::vector<CoRenamedSet> parse_dataset(std::string_view text, const std::string& base_dir);
std::vector<CoRenamedSet> load_dataset(const std::string& path);

// Mean over relevant items of the precision at their rank; relevant items
// missing from the ranking contribute 0. `relevant` must be non-empty.
double average_precision(const std::vector<std::string>& ranking, const std::set<std::string>& relevant);
double reciprocal_rank(const std::vector<std::string>& ranking, const std::set<std::string>& relevant);
// Fraction of relevant items within the first k of the ranking.
double top_k_recall(const std::vector<std::string>& ranking, const std::set<std::string>& relevant, std::size_t k);

struct SetScores {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Precision is 0 for an empty recommendation; F1 is 0 when both are 0.
SetScores set_scores(const std::set<std::string>& recommended, const std::set<std::string>& relevant);

struct QueryMetrics {
  std::string project;
  std::string set_id;
  std::string seed;  // entity id of the renamed member
  int relevant = 0;
  int recommended = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double average_precision = 0;
  double reciprocal_rank = 0;
  double top1 = 0;
  double top5 = 0;
  double top10 = 0;

  friend bool operator==(const QueryMetrics&, const QueryMetrics&) = default;
};

struct AggregateMetrics {
  int queries = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double map = 0;
  double mrr = 0;
  double top1 = 0;
  double top5 = 0;
  double top10 = 0;

  friend bool operator==(const AggregateMetrics&, const AggregateMetrics&) = default;
};

struct MetricsReport {
  double alpha = kDefaultAlpha;
  double beta = kDefaultBeta;
  std::vector<QueryMetrics> queries;
  std::map<std::string, AggregateMetrics> projects;
  AggregateMetrics overall;
  int skipped = 0;
  std::vector<std::string> diagnostics;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// Unweighted means over queries within a set, sets within a project, and
// projects overall.
void aggregate(MetricsReport& report);

// Supplies the index of a project root.
using IndexProvider = std::function<const Index&(const std::string& project_root)>;

// Seeds every member of every set in turn and scores the threshold set and
// the full ranking against the rest of the set. Throws Error(kIo) when a
// project root does not exist.
MetricsReport evaluate(const std::vector<CoRenamedSet>& sets, const ScoreConfig& config,
                       const IndexProvider& indexes);
// Builds each project's index once, honouring RENAS_CACHE_DIR.
MetricsReport evaluate(const std::vector<CoRenamedSet>& sets, const ScoreConfig& config,
                       const lexical::AbbreviationDictionary* extra = nullptr);

nlohmann::json report_to_json(const MetricsReport& report);
MetricsReport report_from_json(const nlohmann::json& j);
void print_report(const MetricsReport& report, std::ostream& out);

}  // namespace renas
