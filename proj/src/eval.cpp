#include "renas/eval.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "renas/error.hpp"

namespace renas {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// JSON pointer of every value in `text` -> 1-based line where it starts.
std::map<std::string, int> value_lines(std::string_view text) {
  struct Frame {
    bool array;
    int index = 0;
    std::string key;
    bool expect_key = true;
  };
  std::map<std::string, int> lines;
  std::vector<Frame> stack;
  int line = 1;
  auto pointer = [&] {
    std::string p;
    for (const auto& f : stack) p += "/" + (f.array ? std::to_string(f.index) : f.key);
    return p;
  };
  auto record = [&] { lines.emplace(pointer(), line); };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
    } else if (c == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        if (text[i] == '\n') ++line;
        s += text[i];
      }
      if (!stack.empty() && !stack.back().array && stack.back().expect_key) {
        stack.back().key = s;
        stack.back().expect_key = false;
      } else {
        record();
      }
    } else if (c == '{' || c == '[') {
      record();
      stack.push_back(Frame{c == '[', 0, "", true});
    } else if (c == '}' || c == ']') {
      if (!stack.empty()) stack.pop_back();
    } else if (c == ',') {
      if (!stack.empty()) {
        if (stack.back().array) {
          ++stack.back().index;
        } else {
          stack.back().expect_key = true;
        }
      }
    } else if (c == ':' || std::isspace(static_cast<unsigned char>(c))) {
      continue;
    } else {
      record();
      while (i + 1 < text.size() && std::string_view(",]}\n \t\r").find(text[i + 1]) == std::string_view::npos) ++i;
    }
  }
  return lines;
}

class DatasetReader {
 public:
  DatasetReader(std::string_view text, std::string base_dir, std::string source)
      : text_(text), base_dir_(std::move(base_dir)), source_(std::move(source)) {}

  std::vector<CoRenamedSet> read() {
    json doc;
    try {
      doc = json::parse(text_);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kSchema, source_ + ": not valid JSON: " + e.what());
    }
    std::vector<CoRenamedSet> sets;
    if (doc.is_array()) {
      for (std::size_t i = 0; i < doc.size(); ++i) project(doc[i], "/" + std::to_string(i), sets);
    } else {
      project(doc, "", sets);
    }
    return sets;
  }

 private:
  [[noreturn]] void fail(const std::string& pointer, const std::string& message, const std::string& context = "") {
    if (!lines_) lines_ = std::make_unique<std::map<std::string, int>>(value_lines(text_));
    std::string where = source_;
    // The nearest enclosing value that has a recorded line.
    for (std::string p = pointer;; p = p.substr(0, p.rfind('/'))) {
      if (auto it = lines_->find(p); it != lines_->end()) {
        where += ":" + std::to_string(it->second);
        break;
      }
      if (p.empty()) break;
    }
    std::string text = where + ": " + (pointer.empty() ? "/" : pointer) + ": " + message;
    if (!context.empty()) text += " (" + context + ")";
    throw Error(ErrorCode::kSchema, text);
  }

  std::string string_field(const json& obj, const std::string& pointer, const char* key,
                           const std::string& context = "") {
    if (!obj.contains(key)) fail(pointer, std::string("missing field '") + key + "'", context);
    const json& v = obj.at(key);
    if (!v.is_string() || v.get<std::string>().empty()) {
      fail(pointer + "/" + key, std::string("'") + key + "' must be a non-empty string", context);
    }
    return v.get<std::string>();
  }

  void project(const json& obj, const std::string& pointer, std::vector<CoRenamedSet>& out) {
    if (!obj.is_object()) fail(pointer, "expected an object with project, projectRoot and sets");
    const std::string name = string_field(obj, pointer, "project");
    const std::string root = string_field(obj, pointer, "projectRoot");
    const std::string resolved =
        fs::path(root).is_absolute() ? root : (fs::path(base_dir_) / root).lexically_normal().string();
    if (!obj.contains("sets") || !obj.at("sets").is_array()) fail(pointer, "'sets' must be an array");
    const json& sets = obj.at("sets");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const std::string sp = pointer + "/sets/" + std::to_string(i);
      const json& s = sets[i];
      if (!s.is_object()) fail(sp, "a set must be an object with id and members");
      CoRenamedSet set;
      set.project = name;
      set.project_root = resolved;
      if (!s.contains("id")) fail(sp, "missing field 'id'");
      if (s.at("id").is_string()) {
        set.id = s.at("id").get<std::string>();
      } else if (s.at("id").is_number_integer()) {
        set.id = std::to_string(s.at("id").get<long long>());
      } else {
        fail(sp + "/id", "'id' must be a string or an integer");
      }
      if (set.id.empty()) fail(sp + "/id", "'id' must not be empty");
      if (!ids.insert(set.id).second) fail(sp + "/id", "duplicate set id '" + set.id + "'");
      if (!s.contains("members") || !s.at("members").is_array()) fail(sp, "'members' must be an array");
      const json& members = s.at("members");
      if (members.size() < 2) fail(sp + "/members", "a co-renamed set needs at least two members");
      for (std::size_t k = 0; k < members.size(); ++k) set.members.push_back(member(members[k], sp + "/members/" + std::to_string(k)));
      out.push_back(std::move(set));
    }
  }

  RenameRecord member(const json& m, const std::string& pointer) {
    if (!m.is_object()) fail(pointer, "a member must be an object");
    RenameRecord r;
    r.file = string_field(m, pointer, "file");
    const std::string context = r.file + (m.contains("line") ? ":" + m.at("line").dump() : std::string());
    if (!m.contains("line")) fail(pointer, "missing field 'line'", context);
    if (!m.at("line").is_number_integer() || m.at("line").get<long long>() < 1) {
      fail(pointer + "/line", "'line' must be a positive integer", context);
    }
    r.line = static_cast<int>(m.at("line").get<long long>());
    const std::string kind = string_field(m, pointer, "kind", context);
    auto parsed = parse_entity_kind(kind);
    if (!parsed) {
      fail(pointer + "/kind",
           "unknown kind '" + kind + "' (expected class, interface, method, field, parameter or localVariable)",
           context);
    }
    r.kind = *parsed;
    r.old_name = string_field(m, pointer, "oldName", context);
    r.new_name = string_field(m, pointer, "newName", context);
    if (r.old_name == r.new_name) fail(pointer + "/newName", "newName must differ from oldName", context);
    return r;
  }

  std::string_view text_;
  std::string base_dir_;
  std::string source_;
  std::unique_ptr<std::map<std::string, int>> lines_;
};

std::string fmt(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << v;
  return out.str();
}

}  // namespace

std::vector<CoRenamedSet> parse_dataset(std::string_view text, const std::string& base_dir) {
  return DatasetReader(text, base_dir, "dataset").read();
}

std::vector<CoRenamedSet> load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read dataset " + path);
  std::ostringstream text;
  text << in.rdbuf();
  const std::string content = text.str();
  return DatasetReader(content, fs::path(path).parent_path().string(), path).read();
}

double average_precision(const std::vector<std::string>& ranking, const std::set<std::string>& relevant) {
  if (relevant.empty()) throw Error(ErrorCode::kInvalidArgument, "average precision needs a relevant item");
  double sum = 0;
  std::size_t hits = 0;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (relevant.count(ranking[i]) && seen.insert(ranking[i]).second) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

double reciprocal_rank(const std::vector<std::string>& ranking, const std::set<std::string>& relevant) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (relevant.count(ranking[i])) return 1.0 / static_cast<double>(i + 1);
  }
  return 0;
}

double top_k_recall(const std::vector<std::string>& ranking, const std::set<std::string>& relevant, std::size_t k) {
  if (relevant.empty()) return 0;
  std::set<std::string> found;
  for (std::size_t i = 0; i < std::min(k, ranking.size()); ++i) {
    if (relevant.count(ranking[i])) found.insert(ranking[i]);
  }
  return static_cast<double>(found.size()) / static_cast<double>(relevant.size());
}

SetScores set_scores(const std::set<std::string>& recommended, const std::set<std::string>& relevant) {
  std::size_t hits = 0;
  for (const auto& r : recommended) hits += relevant.count(r);
  SetScores s;
  s.precision = recommended.empty() ? 0 : static_cast<double>(hits) / static_cast<double>(recommended.size());
  s.recall = relevant.empty() ? 0 : static_cast<double>(hits) / static_cast<double>(relevant.size());
  s.f1 = s.precision + s.recall == 0 ? 0 : 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

namespace {

struct Accumulator {
  int queries = 0;
  int groups = 0;
  AggregateMetrics sum;

  void add(const AggregateMetrics& m, int query_count) {
    queries += query_count;
    ++groups;
    sum.precision += m.precision;
    sum.recall += m.recall;
    sum.f1 += m.f1;
    sum.map += m.map;
    sum.mrr += m.mrr;
    sum.top1 += m.top1;
    sum.top5 += m.top5;
    sum.top10 += m.top10;
  }

  AggregateMetrics mean() const {
    AggregateMetrics m;
    m.queries = queries;
    if (groups == 0) return m;
    const double n = groups;
    m.precision = sum.precision / n;
    m.recall = sum.recall / n;
    m.f1 = sum.f1 / n;
    m.map = sum.map / n;
    m.mrr = sum.mrr / n;
    m.top1 = sum.top1 / n;
    m.top5 = sum.top5 / n;
    m.top10 = sum.top10 / n;
    return m;
  }
};

AggregateMetrics as_aggregate(const QueryMetrics& q) {
  return {1, q.precision, q.recall, q.f1, q.average_precision, q.reciprocal_rank, q.top1, q.top5, q.top10};
}

}  // namespace

void aggregate(MetricsReport& report) {
  // project -> set -> accumulator over queries
  std::map<std::string, std::map<std::string, Accumulator>> sets;
  for (const auto& q : report.queries) sets[q.project][q.set_id].add(as_aggregate(q), 1);
  report.projects.clear();
  Accumulator overall;
  for (const auto& [project, by_set] : sets) {
    Accumulator acc;
    for (const auto& [id, queries] : by_set) acc.add(queries.mean(), queries.queries);
    report.projects[project] = acc.mean();
    overall.add(acc.mean(), acc.queries);
  }
  report.overall = overall.mean();
}

MetricsReport evaluate(const std::vector<CoRenamedSet>& sets, const ScoreConfig& config,
                       const IndexProvider& indexes) {
  config.validate();
  MetricsReport report;
  report.alpha = config.alpha;
  report.beta = config.beta;
  ScoreConfig threshold = config;
  threshold.mode = Mode::kThreshold;
  ScoreConfig ranked = config;
  ranked.mode = Mode::kRanked;

  for (const auto& set : sets) {
    const Index& index = indexes(set.project_root);
    std::vector<std::string> ids;
    std::vector<bool> resolved;
    for (std::size_t k = 0; k < set.members.size(); ++k) {
      const auto& m = set.members[k];
      try {
        ids.push_back(resolve_entity(index.model, m.file, m.line, m.old_name, m.kind).id);
        resolved.push_back(true);
      } catch (const Error& e) {
        // Still counted as relevant for the other queries; it can never be found.
        ids.push_back("unresolved:" + m.file + ":" + std::to_string(m.line) + ":" + m.old_name);
        resolved.push_back(false);
        report.diagnostics.push_back(set.project + "/" + set.id + " member " + std::to_string(k) + ": " + e.what());
      }
    }
    for (std::size_t k = 0; k < set.members.size(); ++k) {
      const std::string where = set.project + "/" + set.id + " member " + std::to_string(k);
      if (!resolved[k]) {
        ++report.skipped;
        continue;
      }
      std::set<std::string> relevant;
      for (std::size_t j = 0; j < ids.size(); ++j) {
        if (j != k && ids[j] != ids[k]) relevant.insert(ids[j]);
      }
      if (relevant.empty()) {
        ++report.skipped;
        report.diagnostics.push_back(where + ": no other member to find; query excluded");
        continue;
      }
      const Entity& seed = *index.model.find(ids[k]);
      QueryMetrics q;
      q.project = set.project;
      q.set_id = set.id;
      q.seed = seed.id;
      q.relevant = static_cast<int>(relevant.size());
      try {
        const auto new_name = normalize_new_name(index, seed, set.members[k].new_name);
        const auto chosen = recommend(index.model, index.graph, seed, new_name, threshold);
        const auto order = recommend(index.model, index.graph, seed, new_name, ranked);
        std::set<std::string> recommended;
        for (const auto& r : chosen.items) recommended.insert(r.candidate);
        std::vector<std::string> ranking;
        for (const auto& r : order.items) ranking.push_back(r.candidate);
        const SetScores s = set_scores(recommended, relevant);
        q.recommended = static_cast<int>(recommended.size());
        q.precision = s.precision;
        q.recall = s.recall;
        q.f1 = s.f1;
        q.average_precision = average_precision(ranking, relevant);
        q.reciprocal_rank = reciprocal_rank(ranking, relevant);
        q.top1 = top_k_recall(ranking, relevant, 1);
        q.top5 = top_k_recall(ranking, relevant, 5);
        q.top10 = top_k_recall(ranking, relevant, 10);
      } catch (const Error& e) {
        ++report.skipped;
        report.diagnostics.push_back(where + ": " + e.what());
        continue;
      }
      report.queries.push_back(std::move(q));
    }
  }
  aggregate(report);
  return report;
}

MetricsReport evaluate(const std::vector<CoRenamedSet>& sets, const ScoreConfig& config,
                       const lexical::AbbreviationDictionary* extra) {
  std::map<std::string, Index> cache;
  IndexProvider provider = [&](const std::string& root) -> const Index& {
    auto it = cache.find(root);
    if (it != cache.end()) return it->second;
    std::error_code ec;
    if (!fs::is_directory(root, ec)) throw Error(ErrorCode::kIo, "project root not found: " + root);
    return cache.emplace(root, load_or_build_index(root, extra)).first->second;
  };
  for (const auto& set : sets) provider(set.project_root);  // fail early on a missing project
  return evaluate(sets, config, provider);
}

namespace {

json aggregate_json(const AggregateMetrics& a) {
  return {{"queries", a.queries}, {"precision", a.precision}, {"recall", a.recall}, {"f1", a.f1},
          {"map", a.map},         {"mrr", a.mrr},             {"top1", a.top1},     {"top5", a.top5},
          {"top10", a.top10}};
}

AggregateMetrics aggregate_from(const json& j) {
  AggregateMetrics a;
  a.queries = j.at("queries").get<int>();
  a.precision = j.at("precision").get<double>();
  a.recall = j.at("recall").get<double>();
  a.f1 = j.at("f1").get<double>();
  a.map = j.at("map").get<double>();
  a.mrr = j.at("mrr").get<double>();
  a.top1 = j.at("top1").get<double>();
  a.top5 = j.at("top5").get<double>();
  a.top10 = j.at("top10").get<double>();
  return a;
}

}  // namespace

json report_to_json(const MetricsReport& report) {
  json queries = json::array();
  for (const auto& q : report.queries) {
    queries.push_back({{"project", q.project},
                       {"set", q.set_id},
                       {"seed", q.seed},
                       {"relevant", q.relevant},
                       {"recommended", q.recommended},
                       {"precision", q.precision},
                       {"recall", q.recall},
                       {"f1", q.f1},
                       {"averagePrecision", q.average_precision},
                       {"reciprocalRank", q.reciprocal_rank},
                       {"top1", q.top1},
                       {"top5", q.top5},
                       {"top10", q.top10}});
  }
  json projects = json::object();
  for (const auto& [name, agg] : report.projects) projects[name] = aggregate_json(agg);
  return {{"alpha", report.alpha},
          {"beta", report.beta},
          {"queries", queries},
          {"projects", projects},
          {"overall", aggregate_json(report.overall)},
          {"skipped", report.skipped},
          {"diagnostics", report.diagnostics}};
}

MetricsReport report_from_json(const json& j) {
  MetricsReport r;
  try {
    r.alpha = j.at("alpha").get<double>();
    r.beta = j.at("beta").get<double>();
    for (const auto& q : j.at("queries")) {
      QueryMetrics m;
      m.project = q.at("project").get<std::string>();
      m.set_id = q.at("set").get<std::string>();
      m.seed = q.at("seed").get<std::string>();
      m.relevant = q.at("relevant").get<int>();
      m.recommended = q.at("recommended").get<int>();
      m.precision = q.at("precision").get<double>();
      m.recall = q.at("recall").get<double>();
      m.f1 = q.at("f1").get<double>();
      m.average_precision = q.at("averagePrecision").get<double>();
      m.reciprocal_rank = q.at("reciprocalRank").get<double>();
      m.top1 = q.at("top1").get<double>();
      m.top5 = q.at("top5").get<double>();
      m.top10 = q.at("top10").get<double>();
      r.queries.push_back(std::move(m));
    }
    for (const auto& [name, agg] : j.at("projects").items()) r.projects[name] = aggregate_from(agg);
    r.overall = aggregate_from(j.at("overall"));
    r.skipped = j.at("skipped").get<int>();
    r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("malformed report: ") + e.what());
  }
  return r;
}

void print_report(const MetricsReport& report, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"project", "set", "seed", "rel", "rec", "P", "R", "F1", "AP", "RR", "top1", "top5", "top10"});
  for (const auto& q : report.queries) {
    rows.push_back({q.project, q.set_id, q.seed, std::to_string(q.relevant), std::to_string(q.recommended),
                    fmt(q.precision), fmt(q.recall), fmt(q.f1), fmt(q.average_precision), fmt(q.reciprocal_rank),
                    fmt(q.top1), fmt(q.top5), fmt(q.top10)});
  }
  auto agg_row = [&](const std::string& label, const AggregateMetrics& a) {
    rows.push_back({label, "", std::to_string(a.queries) + " queries", "", "", fmt(a.precision), fmt(a.recall),
                    fmt(a.f1), fmt(a.map), fmt(a.mrr), fmt(a.top1), fmt(a.top5), fmt(a.top10)});
  };
  for (const auto& [name, agg] : report.projects) agg_row(name + " (mean)", agg);
  agg_row("overall (mean)", report.overall);

  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  out << "alpha=" << report.alpha << " beta=" << report.beta << "\n";
  const std::size_t query_rows = report.queries.size() + 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r == query_rows) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w + 2;
      out << std::string(total - 2, '-') << "\n";
    }
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      const bool numeric = c >= 3;
      if (numeric) {
        out << std::setw(static_cast<int>(width[c])) << std::right << rows[r][c];
      } else {
        out << std::setw(static_cast<int>(width[c])) << std::left << rows[r][c];
      }
      out << (c + 1 < rows[r].size() ? "  " : "\n");
    }
  }
  out << std::right;
  if (report.skipped) out << report.skipped << " queries skipped\n";
  for (const auto& d : report.diagnostics) out << "note: " << d << "\n";
}

}  // namespace renas
