#include "renas/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "renas/error.hpp"
#include "renas/eval.hpp"
#include "renas/index.hpp"
#include "renas/serialize.hpp"

namespace renas {

namespace {

using nlohmann::json;

struct Options {
  std::string root;
  std::string index_file;
  std::string dict_file;
  std::string out_file;
  bool json = false;

  // recommend
  std::string file;
  int line = 0;
  std::string old_name;
  std::string new_name;
  std::string kind;
  double alpha = kDefaultAlpha;
  std::string alphas = "0.5";
  double beta = kDefaultBeta;
  std::optional<double> cap;
  bool ranked = false;
  bool threshold = false;

  // graph
  std::string from;
  std::string dump_file;

  // eval
  std::string dataset;
};

std::string fixed(double v, int digits = 4) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

void print_table(const std::vector<std::vector<std::string>>& rows, std::ostream& out) {
  if (rows.empty()) return;
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      if (c + 1 < row.size()) cell.resize(width[c] + 2, ' ');
      line += cell;
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << "\n";
  }
}

// Destination of a command's report: --out when given, else stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error(ErrorCode::kIo, "cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }

 private:
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
};

std::optional<lexical::AbbreviationDictionary> load_dictionary(const Options& o) {
  if (o.dict_file.empty()) return std::nullopt;
  return lexical::AbbreviationDictionary::load(o.dict_file);
}

Index open_index(const Options& o) {
  if (!o.index_file.empty()) return load_index(o.index_file);
  auto dict = load_dictionary(o);
  return load_or_build_index(o.root, dict ? &*dict : nullptr);
}

ScoreConfig score_config(const Options& o, double alpha) {
  ScoreConfig config;
  config.alpha = alpha;
  config.beta = o.beta;
  config.mode = o.ranked ? Mode::kRanked : Mode::kThreshold;
  config.cap = o.cap;
  config.validate();
  return config;
}

json cap_json(double cap) { return std::isinf(cap) ? json(nullptr) : json(cap); }

std::string cap_text(double cap) {
  if (std::isinf(cap)) return "none";
  std::ostringstream out;
  out << cap;
  return out.str();
}

std::string path_text(const std::vector<Relationship>& path) {
  std::string text;
  for (Relationship r : path) {
    if (!text.empty()) text += " > ";
    text += std::string(to_string(r));
  }
  return text;
}

int cmd_index(const Options& o, std::ostream& out) {
  auto dict = load_dictionary(o);
  Index index = build_index(o.root, dict ? &*dict : nullptr);
  std::string path = o.out_file;
  if (path.empty()) {
    const char* dir = std::getenv("RENAS_CACHE_DIR");
    if (dir && *dir) {
      std::filesystem::create_directories(dir);
      path = (std::filesystem::path(dir) / (index.fingerprint + ".json")).string();
    } else {
      path = "renas-index.json";
    }
  }
  save_index(index, path);
  const auto& d = index.model.diagnostics;
  if (o.json) {
    json doc = {{"path", path},
                {"fingerprint", index.fingerprint},
                {"filesParsed", d.files_parsed},
                {"filesFailed", d.files_failed},
                {"entities", index.model.entities.size()},
                {"edges", index.graph.edge_count()},
                {"unresolvedReferences", d.unresolved_references},
                {"warnings", d.warnings}};
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "index written to " << path << "\n";
  print_table({{"files parsed", std::to_string(d.files_parsed)},
               {"files failed", std::to_string(d.files_failed)},
               {"entities", std::to_string(index.model.entities.size())},
               {"edges", std::to_string(index.graph.edge_count())},
               {"unresolved references", std::to_string(d.unresolved_references)},
               {"warnings", std::to_string(d.warnings.size())}},
              out);
  for (const auto& w : d.warnings) out << "warning: " << w << "\n";
  return kExitOk;
}

int cmd_graph(const Options& o, std::ostream& out) {
  Index index = open_index(o);
  if (!o.dump_file.empty()) {
    std::ofstream dump(o.dump_file, std::ios::binary);
    if (!dump) throw Error(ErrorCode::kIo, "cannot write " + o.dump_file);
    dump_edges(index.graph, dump);
    if (o.from.empty()) return kExitOk;
  }
  Sink sink(o.out_file, out);
  if (o.from.empty()) {
    if (o.json) {
      json edges = json::array();
      for (const Edge& e : index.graph.edges()) {
        edges.push_back({{"from", index.graph.id(e.from)},
                         {"relationship", std::string(to_string(e.relationship))},
                         {"to", index.graph.id(e.to)},
                         {"cost", edge_cost(e.relationship)}});
      }
      sink.stream() << json{{"nodes", index.graph.node_count()}, {"edges", edges}}.dump(2) << "\n";
    } else {
      dump_edges(index.graph, sink.stream());
    }
    return kExitOk;
  }
  const double cap = o.cap.value_or(std::numeric_limits<double>::infinity());
  const auto reached = shortest_distances(index.graph, o.from, cap);
  if (o.json) {
    json rows = json::array();
    for (const auto& r : reached) {
      json path = json::array();
      for (Relationship rel : r.relationships()) path.push_back(std::string(to_string(rel)));
      rows.push_back({{"id", r.id}, {"distance", r.distance}, {"path", path}});
    }
    sink.stream() << json{{"origin", o.from}, {"cap", cap_json(cap)}, {"reached", rows}}.dump(2) << "\n";
    return kExitOk;
  }
  std::vector<std::vector<std::string>> rows{{"distance", "id", "path"}};
  for (const auto& r : reached) rows.push_back({std::to_string(r.distance), r.id, path_text(r.relationships())});
  print_table(rows, sink.stream());
  return kExitOk;
}

int cmd_recommend(const Options& o, std::ostream& out, std::ostream& err) {
  std::optional<EntityKind> kind;
  if (!o.kind.empty()) {
    kind = parse_entity_kind(o.kind);
    if (!kind) throw Error(ErrorCode::kInvalidArgument, "unknown kind '" + o.kind + "'");
  }
  const ScoreConfig config = score_config(o, o.alpha);
  Index index = open_index(o);
  const Entity* seed = nullptr;
  try {
    seed = &resolve_entity(index.model, o.file, o.line, o.old_name, kind);
  } catch (const Error& e) {
    err << "renas: cannot resolve seed: " << e.what() << "\n";
    return kExitUnresolved;
  }
  const auto new_name = normalize_new_name(index, *seed, o.new_name);
  const RecommendResult result = recommend(index.model, index.graph, *seed, new_name, config);
  Sink sink(o.out_file, out);
  std::ostream& s = sink.stream();

  if (o.json) {
    json doc = {{"seed", seed->id},
                {"oldName", seed->name},
                {"newName", o.new_name},
                {"oldNormalized", seed->normalized},
                {"newNormalized", new_name},
                {"operations", result.ops.ops},
                {"config",
                 {{"alpha", config.alpha},
                  {"beta", config.beta},
                  {"mode", to_string(config.mode)},
                  {"cap", cap_json(config.effective_cap())}}},
                {"recommendations", result.items},
                {"notes", result.notes}};
    s << doc.dump(2) << "\n";
    return kExitOk;
  }

  std::vector<std::string> ops;
  for (const auto& op : result.ops.ops) ops.push_back(describe(op));
  std::string op_text;
  for (const auto& op : ops) op_text += (op_text.empty() ? "" : "; ") + op;
  std::ostringstream mode;
  mode << to_string(config.mode) << " (alpha=" << config.alpha << ", beta=" << config.beta
       << ", cap=" << cap_text(config.effective_cap()) << ")";
  print_table({{"seed", seed->id},
               {"rename", seed->name + " -> " + o.new_name},
               {"operations", op_text.empty() ? "none" : op_text},
               {"mode", mode.str()}},
              s);
  s << "\n";
  if (result.items.empty()) {
    s << "no recommendations\n";
  } else {
    std::vector<std::vector<std::string>> rows{
        {"rank", "score", "sim", "rel", "dist", "kind", "name", "location", "suggestion", "path"}};
    for (std::size_t i = 0; i < result.items.size(); ++i) {
      const auto& r = result.items[i];
      rows.push_back({std::to_string(i + 1), fixed(r.score), fixed(r.score_sim), fixed(r.score_rel),
                      std::to_string(r.distance), std::string(to_string(r.kind)), r.name,
                      r.location.file + ":" + std::to_string(r.location.line),
                      r.suggested_name.value_or("-"), path_text(r.path)});
    }
    print_table(rows, s);
  }
  for (const auto& n : result.notes) s << "note: " << n << "\n";
  return kExitOk;
}

std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> alphas;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw Error(ErrorCode::kInvalidArgument, "--alpha expects comma-separated numbers, got '" + text + "'");
    }
    alphas.push_back(v);
  }
  if (alphas.empty()) throw Error(ErrorCode::kInvalidArgument, "--alpha needs at least one value");
  return alphas;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const auto alphas = parse_alphas(o.alphas);
  std::vector<ScoreConfig> configs;
  for (double a : alphas) configs.push_back(score_config(o, a));
  const auto sets = load_dataset(o.dataset);
  auto dict = load_dictionary(o);

  std::map<std::string, Index> cache;
  IndexProvider provider = [&](const std::string& root) -> const Index& {
    auto it = cache.find(root);
    if (it != cache.end()) return it->second;
    std::error_code ec;
    if (!std::filesystem::is_directory(root, ec)) throw Error(ErrorCode::kIo, "project root not found: " + root);
    return cache.emplace(root, load_or_build_index(root, dict ? &*dict : nullptr)).first->second;
  };
  for (const auto& set : sets) provider(set.project_root);

  std::vector<MetricsReport> reports;
  for (const auto& config : configs) reports.push_back(evaluate(sets, config, provider));

  Sink sink(o.out_file, out);
  std::ostream& s = sink.stream();
  if (o.json) {
    if (reports.size() == 1) {
      s << report_to_json(reports.front()).dump(2) << "\n";
    } else {
      json all = json::array();
      for (const auto& r : reports) all.push_back(report_to_json(r));
      s << all.dump(2) << "\n";
    }
    return kExitOk;
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) s << "\n";
    print_report(reports[i], s);
  }
  return kExitOk;
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_flag("--json", o.json, "Emit structured JSON instead of a table");
  cmd->add_option("--out", o.out_file, "Write the report to this file");
}

void add_scoring_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--beta", o.beta, "Score threshold")->capture_default_str();
  cmd->add_option("--cap", o.cap, "Distance cap (default: derived from alpha and beta, 30 when ranked)");
  auto* rank = cmd->add_flag("--rank", o.ranked, "Rank every reachable candidate");
  auto* threshold = cmd->add_flag("--threshold", o.threshold, "Keep candidates scoring at least beta (default)");
  rank->excludes(threshold);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recommends identifiers to rename together with a renamed one.", "renas"};
  app.require_subcommand(1);
  Options o;

  auto* index = app.add_subcommand("index", "Parse a project and write its index");
  index->add_option("root", o.root, "Project source root")->required();
  index->add_option("--dict", o.dict_file, "Extra abbreviation dictionary (abbr=expansion lines)");
  index->add_flag("--json", o.json, "Emit a JSON summary");
  index->add_option("--out", o.out_file, "Index file (default: $RENAS_CACHE_DIR/<fingerprint>.json or renas-index.json)");

  auto* graph = app.add_subcommand("graph", "Print the relationship graph or distances from one entity");
  graph->add_option("root", o.root, "Project source root");
  graph->add_option("--index", o.index_file, "Read a saved index instead of parsing root");
  graph->add_option("--dict", o.dict_file, "Extra abbreviation dictionary");
  graph->add_option("--from", o.from, "Entity id to measure distances from");
  graph->add_option("--cap", o.cap, "Distance cap for --from");
  graph->add_option("--dump", o.dump_file, "Write the edge list (from, relationship, to, cost; tab-separated) to a file");
  add_output_flags(graph, o);

  auto* rec = app.add_subcommand("recommend", "Recommend co-renamings for one renamed identifier");
  rec->add_option("root", o.root, "Project source root");
  rec->add_option("--index", o.index_file, "Read a saved index instead of parsing root");
  rec->add_option("--dict", o.dict_file, "Extra abbreviation dictionary");
  rec->add_option("--file", o.file, "File declaring the renamed identifier, relative to root")->required();
  rec->add_option("--line", o.line, "Line within the declaration")->required()->check(CLI::PositiveNumber);
  rec->add_option("--old", o.old_name, "Name before renaming")->required();
  rec->add_option("--new", o.new_name, "Name after renaming")->required();
  rec->add_option("--kind", o.kind, "class, interface, method, field, parameter or localVariable");
  rec->add_option("--alpha", o.alpha, "Weight of name similarity")->capture_default_str();
  add_scoring_flags(rec, o);
  add_output_flags(rec, o);

  auto* eval = app.add_subcommand("eval", "Evaluate the recommender on a dataset of co-renamed sets");
  eval->add_option("dataset", o.dataset, "Dataset file")->required();
  eval->add_option("--dict", o.dict_file, "Extra abbreviation dictionary");
  eval->add_option("--alpha", o.alphas, "Weight of name similarity; a comma list runs a sweep")->capture_default_str();
  add_scoring_flags(eval, o);
  add_output_flags(eval, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitFailure;
  }

  try {
    if (*index) return cmd_index(o, out);
    if ((*graph || *rec) && o.root.empty() && o.index_file.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "a project root or --index is required");
    }
    if (*graph) return cmd_graph(o, out);
    if (*rec) return cmd_recommend(o, out, err);
    return cmd_eval(o, out);
  } catch (const Error& e) {
    err << "renas: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "renas: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace renas
