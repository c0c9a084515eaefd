#include <doctest.h>

#include <algorithm>
#include <set>

#include "renas/error.hpp"
#include "renas/java/syntax.hpp"
#include "renas/serialize.hpp"
#include "renas/source_model.hpp"
#include "support.hpp"

using namespace renas;

namespace {

using KindName = std::pair<EntityKind, std::string>;

// Declarations read straight off the syntax tree.
void collect(const java::TypeDecl& type, std::multiset<KindName>& out) {
  out.insert({type.kind == java::TypeDecl::Kind::kInterface || type.kind == java::TypeDecl::Kind::kAnnotation
                  ? EntityKind::kInterface
                  : EntityKind::kClass,
              type.name});
  for (const auto& f : type.fields) out.insert({EntityKind::kField, f.name});
  auto locals = [&](auto&& self, const std::vector<java::Stmt>& stmts) -> void {
    for (const auto& s : stmts) {
      if (s.kind == java::Stmt::Kind::kLocalDecl) {
        for (const auto& v : s.vars) out.insert({EntityKind::kLocalVariable, v.name});
      }
      self(self, s.children);
    }
  };
  for (const auto& m : type.methods) {
    out.insert({EntityKind::kMethod, m.name});
    for (const auto& p : m.params) out.insert({EntityKind::kParameter, p.name});
    locals(locals, m.body);
  }
  for (const auto& n : type.nested) collect(n, out);
}

std::multiset<KindName> declared(const SourceModel& model) {
  std::multiset<KindName> out;
  for (const auto& e : model.entities) out.insert({e.kind, e.name});
  return out;
}

const Entity& only(const SourceModel& model, EntityKind kind, const std::string& name) {
  const Entity* found = nullptr;
  for (const auto& e : model.entities) {
    if (e.kind == kind && e.name == name) {
      REQUIRE_MESSAGE(found == nullptr, name);
      found = &e;
    }
  }
  REQUIRE_MESSAGE(found != nullptr, name);
  return *found;
}

}  // namespace

TEST_SUITE("source_model") {
  TEST_CASE("small class: entities and the assignment fact") {
    const std::string source = "class A { int x; void f(int y){ int z = x; } }";
    const auto model = build_source_model({{"A.java", source}});
    std::multiset<KindName> expected;
    for (const auto& t : java::parse_compilation_unit(source).types) collect(t, expected);
    CHECK(declared(model) == expected);
    CHECK(expected.size() == 5);

    const Entity& z = only(model, EntityKind::kLocalVariable, "z");
    const Entity& x = only(model, EntityKind::kField, "x");
    const Entity& f = only(model, EntityKind::kMethod, "f");
    CHECK(z.enclosing == f.id);
    CHECK(only(model, EntityKind::kParameter, "y").enclosing == f.id);
    CHECK(x.enclosing == only(model, EntityKind::kClass, "A").id);
    REQUIRE(model.assignments.size() == 1);
    CHECK(model.assignments[0].lhs == z.id);
    CHECK(model.assignments[0].rhs == std::vector<std::string>{x.id});
  }

  TEST_CASE("entity ids follow file, enclosing chain, kind and key") {
    const auto model = build_source_model({{"p/A.java", "class A { int x; void f(int y){ int z = x; } class In {} }"}});
    CHECK(model.find("p/A.java#A#class#A"));
    CHECK(model.find("p/A.java#A#field#x"));
    CHECK(model.find("p/A.java#A#method#f(int)"));
    CHECK(model.find("p/A.java#A.f(int)#parameter#y"));
    CHECK(model.find("p/A.java#A.f(int)#localVariable#z"));
    CHECK(model.find("p/A.java#A.In#class#In"));
  }

  TEST_CASE("ids are unique even for repeated local names") {
    const auto model = build_source_model(
        {{"A.java", "class A { void f() { { int i = 0; } { int i = 1; } for (int i = 0; i < 2; i++) {} } }"}});
    std::set<std::string> ids;
    for (const auto& e : model.entities) CHECK(ids.insert(e.id).second);
    CHECK(std::count_if(model.entities.begin(), model.entities.end(), [](const Entity& e) { return e.name == "i"; }) == 3);
  }

  TEST_CASE("the restlet fixture declares getAncestorResources twice") {
    const auto model = parse_project(test::fixture("restlet"));
    int count = 0;
    std::set<std::string> owners;
    for (const auto& e : model.entities) {
      if (e.kind == EntityKind::kMethod && e.name == "getAncestorResources") {
        ++count;
        owners.insert(model.find(e.enclosing)->name);
      }
    }
    CHECK(count == 2);
    CHECK(owners == std::set<std::string>{"CallContext", "ThreadLocalizedUriInfo"});
    CHECK(model.diagnostics.files_parsed == 3);
    CHECK(model.diagnostics.files_failed == 0);
  }

  TEST_CASE("an empty directory has no entities") {
    test::TempDir dir;
    const auto model = parse_project(dir.str());
    CHECK(model.entities.empty());
    CHECK(model.diagnostics.files_parsed == 0);
  }

  TEST_CASE("an unreadable root is an error") {
    CHECK_THROWS_AS(parse_project("/nonexistent/renas/root"), Error);
  }

  TEST_CASE("a file that fails to parse is skipped with a warning") {
    const auto model = parse_project(test::fixture("broken"));
    CHECK(model.diagnostics.files_parsed == 1);
    CHECK(model.diagnostics.files_failed == 1);
    REQUIRE(model.diagnostics.warnings.size() == 1);
    CHECK(model.diagnostics.warnings[0].find("Broken.java") != std::string::npos);
    for (const auto& e : model.entities) CHECK(e.location.file == "Good.java");
  }

  TEST_CASE("resolve_entity picks the declaration spanning the line") {
    const auto model = build_source_model({{"C.java", R"(class C {
  int count;
  void tally() {
    int count = 0;
    count++;
  }
}
)"}});
    CHECK(resolve_entity(model, "C.java", 2, "count").kind == EntityKind::kField);
    CHECK(resolve_entity(model, "C.java", 4, "count").kind == EntityKind::kLocalVariable);
    CHECK(resolve_entity(model, "C.java", 3, "tally").kind == EntityKind::kMethod);
    CHECK(resolve_entity(model, "C.java", 4, "count", EntityKind::kLocalVariable).location.line == 4);
    CHECK_THROWS_AS(resolve_entity(model, "C.java", 4, "count", EntityKind::kField), Error);
    try {
      resolve_entity(model, "C.java", 2, "missing");
      FAIL("expected not found");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotFound);
    }
    CHECK_THROWS_AS(resolve_entity(model, "D.java", 2, "count"), Error);
  }

  TEST_CASE("resolve_entity reports ambiguity") {
    const auto model = build_source_model({{"C.java", "class C { void f(int a) {} void g(int a) {} }"}});
    try {
      resolve_entity(model, "C.java", 1, "a");
      FAIL("expected ambiguity");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kAmbiguous);
    }
  }

  TEST_CASE("the seed of the worked example resolves") {
    const auto model = parse_project(test::fixture("restlet"));
    const Entity& seed = resolve_entity(model, "org/restlet/ext/jaxrs/CallContext.java", 18, "getAncestorResources");
    CHECK(seed.id == "org/restlet/ext/jaxrs/CallContext.java#CallContext#method#getAncestorResources()");
  }

  TEST_CASE("facts: inheritance, typing, invocations and overloads") {
    const auto model = build_source_model({
        {"Base.java", "class Base { void g(int a) {} void g(int a, int b) {} }"},
        {"Leaf.java", R"(import java.util.List;
class Leaf extends Base implements Runnable {
  Base other;
  List<String> names;
  public void run() {
    int n = 1;
    other.g(n);
    g(n, n);
    names.add("x");
  }
}
)"},
    });
    CHECK(model.inheritance.size() == 1);
    CHECK(model.inheritance[0].subtype == "Leaf.java#Leaf#class#Leaf");
    CHECK(model.inheritance[0].supertype == "Base.java#Base#class#Base");

    const auto typing = std::find_if(model.typings.begin(), model.typings.end(),
                                     [](const TypingFact& t) { return t.entity == "Leaf.java#Leaf#field#other"; });
    REQUIRE(typing != model.typings.end());
    CHECK(typing->type_entity == "Base.java#Base#class#Base");
    const auto names = std::find_if(model.typings.begin(), model.typings.end(),
                                    [](const TypingFact& t) { return t.entity == "Leaf.java#Leaf#field#names"; });
    REQUIRE(names != model.typings.end());
    CHECK(names->type_entity.empty());

    // names.add(...) targets a library type and is dropped.
    REQUIRE(model.invocations.size() == 2);
    CHECK(model.invocations[0].method == "Base.java#Base#method#g(int)");
    CHECK(model.invocations[0].arguments ==
          std::vector<std::vector<std::string>>{{"Leaf.java#Leaf.run()#localVariable#n"}});
    CHECK(model.invocations[1].method == "Base.java#Base#method#g(int,int)");

    REQUIRE(model.overloads.size() == 1);
    CHECK(model.overloads[0].methods.size() == 2);
  }

  TEST_CASE("external types produce no entities") {
    const auto model = build_source_model({{"A.java", "import java.util.Map; class A extends java.util.HashMap<String, String> { Map<String, String> m; }"}});
    for (const auto& e : model.entities) CHECK(e.location.file == "A.java");
    CHECK(model.inheritance.empty());
  }

  TEST_CASE("parsing is deterministic") {
    const auto a = nlohmann::json(parse_project(test::fixture("restlet"))).dump();
    const auto b = nlohmann::json(parse_project(test::fixture("restlet"))).dump();
    CHECK(a == b);
  }

  TEST_CASE("serialized models round-trip") {
    const auto model = parse_project(test::fixture("thunderbird"));
    const nlohmann::json j = model;
    const auto back = j.get<SourceModel>();
    CHECK(nlohmann::json(back) == j);
  }
}
