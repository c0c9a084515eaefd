#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "renas/cli.hpp"
#include "support.hpp"

using namespace renas;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const std::string kCallContext = "org/restlet/ext/jaxrs/CallContext.java";

std::vector<std::string> restlet_recommend(std::vector<std::string> extra = {}) {
  std::vector<std::string> args{"recommend", test::fixture("restlet"), "--file", kCallContext, "--line", "18",
                                "--old", "getAncestorResources", "--new", "getMatchedResources"};
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

// Unsets RENAS_CACHE_DIR for the lifetime of the guard, or points it at `dir`.
class CacheDirGuard {
 public:
  explicit CacheDirGuard(const std::string& dir = "") {
    if (const char* v = std::getenv("RENAS_CACHE_DIR")) saved_ = v;
    if (dir.empty()) {
      unsetenv("RENAS_CACHE_DIR");
    } else {
      setenv("RENAS_CACHE_DIR", dir.c_str(), 1);
    }
  }
  ~CacheDirGuard() {
    if (saved_) {
      setenv("RENAS_CACHE_DIR", saved_->c_str(), 1);
    } else {
      unsetenv("RENAS_CACHE_DIR");
    }
  }

 private:
  std::optional<std::string> saved_;
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("recommend prints the two co-renamings") {
    CacheDirGuard guard;
    const auto r = run(restlet_recommend());
    CHECK(r.code == kExitOk);
    CHECK(r.err.empty());
    CHECK(r.out.find("replace([ancestor], [matched])") != std::string::npos);
    CHECK(r.out.find("0.6667") != std::string::npos);
    CHECK(r.out.find("0.5625") != std::string::npos);
    CHECK(r.out.find("addForMatched") != std::string::npos);
    CHECK(r.out.find("findInAncestors") == std::string::npos);
  }

  TEST_CASE("recommend JSON parses and matches the table") {
    CacheDirGuard guard;
    const auto r = run(restlet_recommend({"--json"}));
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["config"]["cap"] == 17);
    CHECK(doc["config"]["mode"] == "threshold");
    REQUIRE(doc["recommendations"].size() == 2);
    CHECK(doc["recommendations"][0]["name"] == "addForAncestor");
    CHECK(doc["recommendations"][0]["suggestedName"] == "addForMatched");
    CHECK(doc["recommendations"][1]["distance"] == 8);

    const auto ranked = nlohmann::json::parse(run(restlet_recommend({"--json", "--rank"})).out);
    CHECK(ranked["config"]["cap"] == 30);
    CHECK(ranked["recommendations"].size() > 2);
    CHECK(run(restlet_recommend({"--rank", "--threshold"})).code == kExitFailure);
  }

  TEST_CASE("a seed without an applicable operation still succeeds") {
    CacheDirGuard guard;
    test::TempDir dir;
    test::write_file(dir.path() / "Keys.java", "class Keys {\n  int keyWord;\n  int keyWordCount;\n}\n");
    const auto r = run({"recommend", dir.str(), "--file", "Keys.java", "--line", "2", "--old", "keyWord", "--new",
                        "wordKey"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("note:") != std::string::npos);
  }

  TEST_CASE("seed and root failures map to exit codes") {
    CacheDirGuard guard;
    auto missing_file = restlet_recommend();
    missing_file[3] = "Nope.java";
    const auto r = run(missing_file);
    CHECK(r.code == kExitUnresolved);
    CHECK(r.err.find("cannot resolve seed") != std::string::npos);

    auto wrong_line = restlet_recommend();
    wrong_line[5] = "400";
    CHECK(run(wrong_line).code == kExitUnresolved);

    auto missing_root = restlet_recommend();
    missing_root[1] = "/nonexistent/renas/root";
    CHECK(run(missing_root).code == kExitFailure);

    CHECK(run({"recommend", test::fixture("restlet")}).code == kExitFailure);
    CHECK(run({"frobnicate"}).code == kExitFailure);
    CHECK(run({"--help"}).code == kExitOk);
  }

  TEST_CASE("index writes a reproducible cache file") {
    test::TempDir dir;
    CacheDirGuard guard(dir.str("cache"));
    const auto first = run({"index", test::fixture("restlet")});
    REQUIRE(first.code == kExitOk);
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir.path() / "cache")) files.push_back(e.path());
    REQUIRE(files.size() == 1);
    const std::string bytes = test::read_file(files[0].string());
    std::filesystem::remove(files[0]);
    const auto second = run({"index", test::fixture("restlet")});
    CHECK(second.out == first.out);
    CHECK(test::read_file(files[0].string()) == bytes);

    const auto explicit_out = run({"index", test::fixture("restlet"), "--out", dir.str("idx.json")});
    CHECK(explicit_out.code == kExitOk);
    CHECK(test::read_file(dir.str("idx.json")) == bytes);

    // A saved index answers the same query as the sources.
    CacheDirGuard no_cache;
    auto from_index = restlet_recommend();
    from_index[1] = "--index";
    from_index.insert(from_index.begin() + 2, dir.str("idx.json"));
    CHECK(run(from_index).out == run(restlet_recommend()).out);
  }

  TEST_CASE("index reports files that fail to parse") {
    test::TempDir dir;
    CacheDirGuard guard;
    const auto r = run({"index", test::fixture("broken"), "--json", "--out", dir.str("b.json")});
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["filesFailed"] == 1);
    CHECK(doc["filesParsed"] == 1);
    CHECK(doc["warnings"].size() == 1);
    const auto table = run({"index", test::fixture("broken"), "--out", dir.str("b.json")});
    CHECK(table.out.find("warning: ") != std::string::npos);
  }

  TEST_CASE("graph dumps edges and distances") {
    test::TempDir dir;
    CacheDirGuard guard;
    const auto dumped = run({"graph", test::fixture("restlet"), "--dump", dir.str("edges.tsv")});
    CHECK(dumped.code == kExitOk);
    const std::string edges = test::read_file(dir.str("edges.tsv"));
    CHECK(edges.find("\tsiblingMembers\t") != std::string::npos);
    CHECK(run({"graph", test::fixture("restlet")}).out == edges);

    const std::string origin = kCallContext + "#CallContext#method#getAncestorResources()";
    const auto distances = run({"graph", test::fixture("restlet"), "--from", origin, "--json"});
    REQUIRE(distances.code == kExitOk);
    const auto doc = nlohmann::json::parse(distances.out);
    CHECK(doc["reached"][0]["id"] == origin);
    CHECK(doc["reached"][0]["distance"] == 0);
    CHECK(doc["cap"].is_null());
  }

  TEST_CASE("eval runs the corpus and sweeps alpha") {
    CacheDirGuard guard;
    const auto r = run({"eval", test::fixture("corpus.json")});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("overall (mean)") != std::string::npos);

    const auto sweep = run({"eval", test::fixture("corpus.json"), "--alpha", "0,0.5,1", "--json"});
    REQUIRE(sweep.code == kExitOk);
    const auto doc = nlohmann::json::parse(sweep.out);
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 3);
    CHECK(doc[1]["alpha"] == 0.5);
    CHECK(nlohmann::json::parse(run({"eval", test::fixture("corpus.json"), "--json"}).out) == doc[1]);

    CHECK(run({"eval", test::fixture("corpus.json"), "--alpha", "0,x"}).code == kExitFailure);
  }

  TEST_CASE("eval rejects bad datasets") {
    CacheDirGuard guard;
    test::TempDir dir;
    test::write_file(dir.path() / "same.json", R"({"project": "p", "projectRoot": "r", "sets": [{"id": "a", "members": [
  {"file": "A.java", "line": 1, "kind": "class", "oldName": "A", "newName": "A"},
  {"file": "B.java", "line": 1, "kind": "class", "oldName": "B", "newName": "C"}]}]}
)");
    const auto schema = run({"eval", dir.str("same.json")});
    CHECK(schema.code == kExitFailure);
    CHECK(schema.err.find(":2:") != std::string::npos);

    test::write_file(dir.path() / "absent.json", R"({"project": "p", "projectRoot": "absent", "sets": [{"id": "a", "members": [
  {"file": "A.java", "line": 1, "kind": "class", "oldName": "A", "newName": "B"},
  {"file": "B.java", "line": 1, "kind": "class", "oldName": "B", "newName": "C"}]}]}
)");
    const auto missing = run({"eval", dir.str("absent.json")});
    CHECK(missing.code == kExitFailure);
    CHECK(missing.err.find("not found") != std::string::npos);
    CHECK(run({"eval", dir.str("nothing.json")}).code == kExitFailure);
  }

  TEST_CASE("output is identical across runs") {
    CacheDirGuard guard;
    CHECK(run(restlet_recommend({"--rank"})).out == run(restlet_recommend({"--rank"})).out);
    CHECK(run({"eval", test::fixture("corpus.json"), "--json"}).out ==
          run({"eval", test::fixture("corpus.json"), "--json"}).out);
  }
}
