#include <doctest.h>

#include <random>
#include <sstream>

#include "generators.hpp"
#include "renas/error.hpp"
#include "renas/eval.hpp"
#include "support.hpp"

using namespace renas;
using Ids = std::vector<std::string>;
using IdSet = std::set<std::string>;

namespace {

const char* kTwoSets = R"({
  "project": "demo",
  "projectRoot": "thunderbird",
  "sets": [
    {"id": "one", "members": [
      {"file": "AccountLoader.java", "line": 6, "kind": "parameter", "oldName": "prefs", "newName": "storage"},
      {"file": "AccountLoader.java", "line": 3, "kind": "parameter", "oldName": "prefs", "newName": "storage"}
    ]},
    {"id": 2, "members": [
      {"file": "AccountLoader.java", "line": 2, "kind": "method", "oldName": "getPreferences", "newName": "getStorage"},
      {"file": "AccountLoader.java", "line": 2, "kind": "parameter", "oldName": "prefs", "newName": "storage"}
    ]}
  ]
}
)";

Error schema_error(const std::string& text) {
  try {
    parse_dataset(text, "/base");
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected a schema error");
  return Error(ErrorCode::kSchema, "");
}

QueryMetrics query(const std::string& project, const std::string& set, double value) {
  QueryMetrics q;
  q.project = project;
  q.set_id = set;
  q.seed = project + "/" + set;
  q.precision = q.recall = q.f1 = q.average_precision = q.reciprocal_rank = q.top1 = q.top5 = q.top10 = value;
  return q;
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("metric examples") {
    const auto s = set_scores({"a", "b"}, {"b", "c"});
    CHECK(s.precision == 0.5);
    CHECK(s.recall == 0.5);
    CHECK(s.f1 == 0.5);
    const Ids ranking{"x", "b"};
    CHECK(average_precision(ranking, {"b"}) == 0.5);
    CHECK(reciprocal_rank(ranking, {"b"}) == 0.5);
    CHECK(top_k_recall(ranking, {"b"}, 1) == 0);
    CHECK(top_k_recall(ranking, {"b"}, 5) == 1);
    CHECK(average_precision({"a", "b"}, {"a", "b"}) == 1);
    CHECK(average_precision({"a", "x", "b"}, {"a", "b"}) == doctest::Approx((1 + 2.0 / 3) / 2).epsilon(1e-12));
    CHECK(average_precision({"x"}, {"a"}) == 0);
    CHECK_THROWS_AS(average_precision({"a"}, {}), Error);
    CHECK(set_scores({}, {"a"}).precision == 0);
    CHECK(set_scores({}, {"a"}).f1 == 0);
  }

  TEST_CASE("metrics equal the straight-line oracles") {
    std::mt19937 rng(31);
    for (int batch = 0; batch < 60; ++batch) {
      double map = 0, oracle_map = 0;
      for (int i = 0; i < 5; ++i) {
        const auto q = test::random_query(rng);
        const double ap = average_precision(q.ranking, q.relevant);
        CHECK(ap == doctest::Approx(test::ap_oracle(q.ranking, q.relevant)).epsilon(1e-12));
        CHECK(reciprocal_rank(q.ranking, q.relevant) == test::rr_oracle(q.ranking, q.relevant));
        const auto s = set_scores(q.recommended, q.relevant);
        CHECK(s.f1 == doctest::Approx(test::f1_oracle(q.recommended, q.relevant)).epsilon(1e-12));
        for (double v : {ap, s.precision, s.recall, s.f1, top_k_recall(q.ranking, q.relevant, 5)}) {
          CHECK(v >= 0);
          CHECK(v <= 1);
        }
        if (s.precision + s.recall > 0) {
          CHECK(s.f1 == doctest::Approx(2 * s.precision * s.recall / (s.precision + s.recall)));
        }
        map += ap;
        oracle_map += test::ap_oracle(q.ranking, q.relevant);
      }
      CHECK(map / 5 == doctest::Approx(oracle_map / 5).epsilon(1e-12));
    }
  }

  TEST_CASE("average precision ignores the order of trailing irrelevant items") {
    std::mt19937 rng(12);
    for (int i = 0; i < 200; ++i) {
      auto q = test::random_query(rng);
      std::size_t last = 0;
      for (std::size_t k = 0; k < q.ranking.size(); ++k) {
        if (q.relevant.count(q.ranking[k])) last = k + 1;
      }
      const double before = average_precision(q.ranking, q.relevant);
      std::shuffle(q.ranking.begin() + static_cast<std::ptrdiff_t>(last), q.ranking.end(), rng);
      CHECK(average_precision(q.ranking, q.relevant) == before);
    }
  }

  TEST_CASE("datasets load") {
    const auto sets = parse_dataset(kTwoSets, "/data");
    REQUIRE(sets.size() == 2);
    CHECK(sets[0].id == "one");
    CHECK(sets[1].id == "2");
    CHECK(sets[0].project == "demo");
    CHECK(sets[0].project_root == "/data/thunderbird");
    CHECK(sets[1].members[0].kind == EntityKind::kMethod);
    CHECK(sets[1].members[0].new_name == "getStorage");
    CHECK(parse_dataset(std::string("[") + kTwoSets + "," + kTwoSets + "]", "/d").size() == 4);
  }

  TEST_CASE("schema violations name the place") {
    std::string same = kTwoSets;
    same.replace(same.find("\"newName\": \"getStorage\""), 23, "\"newName\": \"getPreferences\"");
    const Error e = schema_error(same);
    CHECK(e.code() == ErrorCode::kSchema);
    const std::string message = e.what();
    CHECK(message.find("dataset:10") != std::string::npos);
    CHECK(message.find("/sets/1/members/0/newName") != std::string::npos);
    CHECK(message.find("AccountLoader.java:2") != std::string::npos);

    CHECK(std::string(schema_error(R"({"project": "p", "projectRoot": "r", "sets": [{"id": "a", "members": []}]})").what())
              .find("at least two") != std::string::npos);
    CHECK(std::string(schema_error(R"({"projectRoot": "r", "sets": []})").what()).find("project") != std::string::npos);
    CHECK(std::string(schema_error("{ not json").what()).find("JSON") != std::string::npos);
    std::string bad_kind = kTwoSets;
    bad_kind.replace(bad_kind.find("\"kind\": \"method\""), 16, "\"kind\": \"lambda\"");
    CHECK(std::string(schema_error(bad_kind).what()).find("unknown kind") != std::string::npos);
    std::string bad_line = kTwoSets;
    bad_line.replace(bad_line.find("\"line\": 3"), 9, "\"line\": 0");
    CHECK(std::string(schema_error(bad_line).what()).find("positive") != std::string::npos);
    std::string duplicate = kTwoSets;
    duplicate.replace(duplicate.find("\"id\": 2"), 7, "\"id\": \"one\"");
    CHECK(std::string(schema_error(duplicate).what()).find("duplicate") != std::string::npos);
  }

  TEST_CASE("a missing project root fails at evaluation, not at load") {
    test::TempDir dir;
    std::string text = kTwoSets;
    text.replace(text.find("\"thunderbird\""), 13, "\"absent\"");
    test::write_file(dir.path() / "data.json", text);
    const auto sets = load_dataset(dir.str("data.json"));
    CHECK(sets.size() == 2);
    try {
      evaluate(sets, ScoreConfig{});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kIo);
    }
  }

  TEST_CASE("evaluation of the fixture corpus") {
    const auto sets = load_dataset(test::fixture("corpus.json"));
    const auto report = evaluate(sets, ScoreConfig{});
    CHECK(report.queries.size() == 9);
    CHECK(report.skipped == 0);
    CHECK(report.projects.size() == 3);
    const auto& first = report.queries[0];
    CHECK(first.seed == "org/restlet/ext/jaxrs/CallContext.java#CallContext#method#getAncestorResources()");
    CHECK(first.relevant == 2);
    CHECK(first.recommended == 2);
    CHECK(first.precision == 1);
    CHECK(first.recall == 1);
    CHECK(first.average_precision == 1);
    for (const auto& q : report.queries) {
      for (double v : {q.precision, q.recall, q.f1, q.average_precision, q.reciprocal_rank, q.top1, q.top5, q.top10}) {
        CHECK(v >= 0);
        CHECK(v <= 1);
      }
    }
    CHECK(report_to_json(evaluate(sets, ScoreConfig{})) == report_to_json(report));
  }

  TEST_CASE("unresolved members are skipped as seeds and missed as targets") {
    std::string text = kTwoSets;
    text.replace(text.find("\"line\": 3"), 9, "\"line\": 9");
    const auto sets = parse_dataset(text, test::fixture(""));
    const auto report = evaluate(sets, ScoreConfig{});
    CHECK(report.skipped == 1);
    REQUIRE(report.queries.size() == 3);
    CHECK(report.queries[0].relevant == 1);
    CHECK(report.queries[0].recall == 0);
    CHECK(report.diagnostics.size() == 1);
  }

  TEST_CASE("aggregation averages queries, then sets, then projects") {
    MetricsReport r;
    r.queries = {query("p", "s1", 1.0), query("p", "s1", 0.0), query("p", "s2", 1.0), query("q", "t", 0.25)};
    aggregate(r);
    CHECK(r.projects.at("p").precision == 0.75);
    CHECK(r.projects.at("p").queries == 3);
    CHECK(r.projects.at("q").map == 0.25);
    CHECK(r.overall.mrr == 0.5);
    CHECK(r.overall.queries == 4);

    // A project listed twice keeps its weight.
    MetricsReport twice = r;
    twice.queries.push_back(query("q", "t", 0.25));
    aggregate(twice);
    CHECK(twice.projects.at("q").precision == 0.25);
    CHECK(twice.overall.precision == r.overall.precision);
  }

  TEST_CASE("reports round-trip through JSON") {
    const auto report = evaluate(load_dataset(test::fixture("corpus.json")), ScoreConfig{});
    const auto text = report_to_json(report).dump(2);
    CHECK(report_from_json(nlohmann::json::parse(text)) == report);
    CHECK_THROWS_AS(report_from_json(nlohmann::json::object()), Error);
  }

  TEST_CASE("the table lists every query and the means") {
    const auto report = evaluate(load_dataset(test::fixture("corpus.json")), ScoreConfig{});
    std::ostringstream out;
    print_report(report, out);
    const std::string text = out.str();
    CHECK(text.find("alpha=0.5 beta=0.53") == 0);
    CHECK(text.find("overall (mean)") != std::string::npos);
    CHECK(text.find("restlet (mean)") != std::string::npos);
  }

  TEST_CASE("an index provider can stand in for the file system") {
    const Index index = build_index(test::fixture("thunderbird"));
    int calls = 0;
    IndexProvider provider = [&](const std::string&) -> const Index& {
      ++calls;
      return index;
    };
    const auto report = evaluate(parse_dataset(kTwoSets, "/nowhere"), ScoreConfig{}, provider);
    CHECK(report.queries.size() == 4);
    CHECK(calls == 2);
  }
}
