#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "graph_oracle.hpp"
#include "properties.hpp"
#include "renas/cli.hpp"
#include "renas/eval.hpp"
#include "renas/index.hpp"
#include "renas/rename_ops.hpp"
#include "renas/scoring.hpp"
#include "support.hpp"
#include "table2.hpp"

using namespace renas;
using Problems = std::vector<std::string>;

namespace {

constexpr double kTolerance = 1e-9;
const std::string kCallContext = "org/restlet/ext/jaxrs/CallContext.java";
const std::string kUriInfo = "org/restlet/ext/jaxrs/ThreadLocalizedUriInfo.java";

bool near(double a, double b) { return std::fabs(a - b) <= kTolerance; }

void expect(Problems& problems, bool ok, const std::string& what) {
  if (!ok) problems.push_back(what);
}

const Recommendation* find_item(const RecommendResult& r, const std::string& name, const std::string& file = "") {
  for (const auto& item : r.items) {
    if (item.name == name && (file.empty() || item.location.file == file)) return &item;
  }
  return nullptr;
}

Problems worked_example() {
  Problems p;
  const Index index = build_index(test::fixture("restlet"));
  const SeedQuery seed{kCallContext, 18, "getAncestorResources", "getMatchedResources", {}};
  const auto result = recommend_for(index, seed, ScoreConfig{});
  const auto& items = result.result.items;
  expect(p, items.size() == 2, "threshold set has " + std::to_string(items.size()) + " items, expected 2");
  const auto* add = find_item(result.result, "addForAncestor");
  const auto* other = find_item(result.result, "getAncestorResources", kUriInfo);
  expect(p, add && other, "threshold set is not {addForAncestor, ThreadLocalizedUriInfo.getAncestorResources}");
  if (add) {
    expect(p, near(add->score_sim, 2.0 / 6), "addForAncestor similarity");
    expect(p, add->distance == 1, "addForAncestor distance");
    expect(p, near(add->score_rel, 1.0), "addForAncestor relationship score");
    expect(p, near(add->score, 2.0 / 3), "addForAncestor score");
  }
  if (other) {
    expect(p, near(other->score_sim, 1.0), "getAncestorResources similarity");
    expect(p, other->distance == 8, "getAncestorResources distance");
    expect(p, near(other->score_rel, 0.125), "getAncestorResources relationship score");
    expect(p, near(other->score, 0.5625), "getAncestorResources score");
  }
  expect(p, !find_item(result.result, "findInAncestors"), "findInAncestors is in the threshold set");
  ScoreConfig ranked;
  ranked.mode = Mode::kRanked;
  const auto all = recommend_for(index, seed, ranked);
  const auto* find = find_item(all.result, "findInAncestors");
  expect(p, find && find->score <= 0.229, "findInAncestors is unranked or scores above 0.229");
  return p;
}

Problems thunderbird_example() {
  Problems p;
  const Index index = build_index(test::fixture("thunderbird"));
  const auto result = recommend_for(index, {"AccountLoader.java", 6, "prefs", "storage", EntityKind::kParameter}, {});
  const auto& ops = result.result.ops.ops;
  expect(p, ops.size() == 1 && describe(ops[0]) == "replace([preference], [storage])",
         "operations differ from replace([preference], [storage])");
  std::set<std::pair<std::string, int>> got;
  for (const auto& item : result.result.items) got.insert({item.name, item.location.line});
  expect(p, got.count({"prefs", 2}) && got.count({"prefs", 3}), "a prefs parameter is missing");
  const auto* method = find_item(result.result, "getPreferences");
  expect(p, method != nullptr, "getPreferences is missing");
  if (method) {
    expect(p, method->suggested_name == std::optional<std::string>("getStorage"), "getPreferences is not renamed getStorage");
  }
  return p;
}

Problems dijkstra_matches_enumeration() {
  Problems p;
  std::mt19937 rng(200);
  for (int round = 0; round < 200; ++round) {
    const auto g = test::random_graph(rng);
    std::uniform_int_distribution<std::size_t> pick(0, g.node_count() - 1);
    const std::size_t origin = pick(rng);
    const auto expected = test::brute_force_distances(g, origin);
    const auto got = shortest_distances(g, g.id(origin), std::numeric_limits<double>::infinity());
    bool ok = got.size() == expected.size();
    for (const auto& r : got) {
      const auto it = expected.find(r.id);
      if (it == expected.end() || it->second.distance != r.distance) {
        ok = false;
        continue;
      }
      std::vector<test::StepKey> witness;
      for (const auto& s : r.path) {
        witness.emplace_back(edge_cost(s.relationship), std::string(to_string(s.relationship)), g.id(s.node));
      }
      ok = ok && witness == it->second.witness;
    }
    expect(p, ok, "graph " + std::to_string(round) + " differs from path enumeration");
  }
  return p;
}

Problems single_edit_round_trip() {
  Problems p;
  std::mt19937 rng(1000);
  for (int i = 0; i < 1000; ++i) {
    const auto pair = test::random_single_edit(rng);
    const auto ops = extract_ops(test::plain_name(pair.before), test::plain_name(pair.after));
    const bool ok = ops.ops.size() == 1 && apply_op(ops.ops[0], test::plain_name(pair.before)) == pair.after;
    expect(p, ok, "round trip " + std::to_string(i) + " fails");
  }
  return p;
}

Problems dice_properties() {
  Problems p;
  std::mt19937 rng(1001);
  for (int i = 0; i < 1000; ++i) {
    const auto a = test::random_words(rng);
    const auto b = test::random_words(rng);
    const double s = score_sim(a, b);
    const bool ok = s == score_sim(b, a) && s >= 0 && s <= 1 && score_sim(a, a) == 1.0 &&
                    near(s, test::dice_oracle(a, b));
    expect(p, ok, "dice pair " + std::to_string(i) + " violates a property");
  }
  return p;
}

Problems alpha_endpoints() {
  Problems p;
  std::mt19937 rng(50);
  for (int i = 0; i < 50; ++i) {
    for (const auto& problem : test::alpha_endpoint_violations(rng)) p.push_back("fixture " + std::to_string(i) + ": " + problem);
  }
  return p;
}

Problems metrics_match_oracle() {
  Problems p;
  std::mt19937 rng(100);
  for (int batch = 0; batch < 100; ++batch) {
    double map = 0, mrr = 0, f1 = 0, oracle_map = 0, oracle_mrr = 0, oracle_f1 = 0;
    for (int i = 0; i < 5; ++i) {
      const auto q = test::random_query(rng);
      map += average_precision(q.ranking, q.relevant);
      mrr += reciprocal_rank(q.ranking, q.relevant);
      f1 += set_scores(q.recommended, q.relevant).f1;
      oracle_map += test::ap_oracle(q.ranking, q.relevant);
      oracle_mrr += test::rr_oracle(q.ranking, q.relevant);
      oracle_f1 += test::f1_oracle(q.recommended, q.relevant);
    }
    expect(p, near(map, oracle_map) && near(mrr, oracle_mrr) && near(f1, oracle_f1),
           "batch " + std::to_string(batch) + " differs from the oracle");
  }
  return p;
}

Problems property_suite() {
  Problems all;
  const std::vector<std::pair<std::string, std::function<Problems()>>> parts{
      {"(a) shortest paths", dijkstra_matches_enumeration},
      {"(b) op round trip", single_edit_round_trip},
      {"(c) dice", dice_properties},
      {"(d) alpha endpoints", alpha_endpoints},
      {"(e) metrics", metrics_match_oracle}};
  for (const auto& [name, check] : parts) {
    const auto problems = check();
    std::cout << "  " << name << ": " << problems.size() << " violation(s)\n";
    for (const auto& problem : problems) all.push_back(name + " " + problem);
  }
  return all;
}

std::string cli_output(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str() + err.str();
}

// Runs index, recommend and eval against an empty cache directory and returns
// everything they wrote, including the cache files.
std::string pipeline_bytes(const test::TempDir& dir, Problems& p) {
  std::filesystem::remove_all(dir.path());
  std::filesystem::create_directories(dir.path());
  const std::string cache = dir.str("cache");
  setenv("RENAS_CACHE_DIR", cache.c_str(), 1);
  std::string bytes;
  int code = 0;
  bytes += cli_output({"index", test::fixture("restlet"), "--out", dir.str("index.json")}, code);
  expect(p, code == kExitOk, "index failed");
  bytes += test::read_file(dir.str("index.json"));
  bytes += cli_output({"recommend", test::fixture("restlet"), "--file", kCallContext, "--line", "18", "--old",
                       "getAncestorResources", "--new", "getMatchedResources", "--rank", "--json"},
                      code);
  expect(p, code == kExitOk, "recommend failed");
  bytes += cli_output({"eval", test::fixture("corpus.json"), "--json"}, code);
  expect(p, code == kExitOk, "eval failed");
  bytes += cli_output({"eval", test::fixture("corpus.json")}, code);
  std::vector<std::string> cached;
  for (const auto& e : std::filesystem::directory_iterator(cache)) cached.push_back(e.path().filename().string());
  std::sort(cached.begin(), cached.end());
  for (const auto& f : cached) bytes += f + "\n" + test::read_file(cache + "/" + f);
  unsetenv("RENAS_CACHE_DIR");
  return bytes;
}

Problems determinism() {
  Problems p;
  test::TempDir dir;
  const auto first = pipeline_bytes(dir, p);
  const auto second = pipeline_bytes(dir, p);
  expect(p, first == second, "the two runs differ");
  expect(p, first.find("getMatchedResources") != std::string::npos, "the runs produced no recommendation output");
  return p;
}

struct Criterion {
  std::string name;
  std::string description;
  double time_limit_seconds;
  std::function<Problems()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "worked example scores and threshold set", 5, worked_example},
      {"AC2", "thunderbird prefs rename", 5, thunderbird_example},
      {"AC3", "property suite", 60, property_suite},
      {"AC4", "index, recommend and eval are byte-identical across runs", 0, determinism},
      {"AC5", "relationship costs and directions", 0, test::table_two_violations},
  };
  bool all_pass = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Problems problems;
    try {
      problems = c.check();
    } catch (const std::exception& e) {
      problems.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_seconds > 0 && seconds >= c.time_limit_seconds) {
      std::ostringstream limit;
      limit << "runtime exceeds " << c.time_limit_seconds << " s";
      problems.push_back(limit.str());
    }
    const bool pass = problems.empty();
    all_pass = all_pass && pass;
    std::ostringstream runtime;
    runtime.precision(3);
    runtime << std::fixed << seconds;
    std::cout << c.name << " " << (pass ? "PASS" : "FAIL") << " " << c.description << " (" << runtime.str() << " s)\n";
    for (const auto& problem : problems) std::cout << "  " << problem << "\n";
  }
  return all_pass ? 0 : 1;
}
