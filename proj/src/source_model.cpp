#include "renas/source_model.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "renas/error.hpp"
#include "renas/java/syntax.hpp"

namespace renas {

namespace fs = std::filesystem;

const char* to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::kClass: return "class";
    case EntityKind::kInterface: return "interface";
    case EntityKind::kMethod: return "method";
    case EntityKind::kField: return "field";
    case EntityKind::kParameter: return "parameter";
    case EntityKind::kLocalVariable: return "localVariable";
  }
  return "?";
}

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
  for (EntityKind k : {EntityKind::kClass, EntityKind::kInterface, EntityKind::kMethod, EntityKind::kField,
                       EntityKind::kParameter, EntityKind::kLocalVariable}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

void SourceModel::reindex() {
  by_id_.clear();
  for (std::size_t i = 0; i < entities.size(); ++i) by_id_.emplace(entities[i].id, i);
}

const Entity* SourceModel::find(std::string_view id) const {
  auto i = index_of(id);
  return i ? &entities[*i] : nullptr;
}

std::optional<std::size_t> SourceModel::index_of(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

namespace {

using java::Expr;
using java::Stmt;
using java::TypeDecl;
using java::TypeRef;

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::string type_text(const TypeRef& t) {
  std::string s = t.qualified;
  for (int i = 0; i < t.dims; ++i) s += "[]";
  return s;
}

// What an expression's static type is known to be.
struct TypeInfo {
  enum class Kind { kUnknown, kProject, kExternal };
  Kind kind = Kind::kUnknown;
  int cls = -1;      // project class when kProject
  int dims = 0;
  std::string name;  // simple type name when known

  static TypeInfo project(int c, int d, std::string n) { return {Kind::kProject, c, d, std::move(n)}; }
  static TypeInfo external(std::string n, int d = 0) { return {Kind::kExternal, -1, d, std::move(n)}; }
  bool is_class() const { return kind == Kind::kProject && dims == 0; }
};

struct MethodInfo {
  std::size_t entity = kNone;
  const java::MethodDecl* decl = nullptr;
  std::vector<std::size_t> params;
  std::string chain;  // "A.f(int)"
  int owner = -1;

  bool accepts(std::size_t argc) const {
    const std::size_t n = decl->params.size();
    if (n > 0 && decl->params.back().varargs) return argc + 1 >= n;
    return argc == n;
  }
};

struct ClassInfo {
  std::size_t entity = kNone;
  const TypeDecl* decl = nullptr;
  int file = -1;
  int outer = -1;
  std::string chain;
  std::vector<int> supers;
  std::map<std::string, int> nested;
  std::map<std::string, std::size_t> fields;
  std::vector<MethodInfo> methods;
};

struct FileUnit {
  std::string path;
  java::CompilationUnit unit;
};

class ModelBuilder {
 public:
  explicit ModelBuilder(const lexical::AbbreviationDictionary* dictionary) {
    context_.dictionary = dictionary ? dictionary : &lexical::AbbreviationDictionary::builtin();
  }

  SourceModel build(std::vector<SourceFile> files) {
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
    parse_all(files);
    for (std::size_t f = 0; f < units_.size(); ++f) {
      for (const auto& t : units_[f].unit.types) declare_type(static_cast<int>(f), t, -1);
    }
    for (std::size_t c = 0; c < classes_.size(); ++c) link_supers(static_cast<int>(c));
    for (std::size_t c = 0; c < classes_.size(); ++c) type_members(static_cast<int>(c));
    for (std::size_t c = 0; c < classes_.size(); ++c) walk_bodies(static_cast<int>(c));
    for (std::size_t c = 0; c < classes_.size(); ++c) group_overloads(static_cast<int>(c));
    model_.reindex();
    return std::move(model_);
  }

  // --- parsing ---------------------------------------------------------------

  void parse_all(const std::vector<SourceFile>& files) {
    std::vector<std::optional<java::CompilationUnit>> parsed(files.size());
    std::vector<std::string> errors(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < files.size(); i = next++) {
        try {
          parsed[i] = java::parse_compilation_unit(files[i].text);
        } catch (const Error& e) {
          errors[i] = e.what();
        }
      }
    };
    const std::size_t threads =
        std::min<std::size_t>(files.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < files.size(); ++i) {
      if (parsed[i]) {
        ++model_.diagnostics.files_parsed;
        units_.push_back(FileUnit{files[i].path, std::move(*parsed[i])});
      } else {
        ++model_.diagnostics.files_failed;
        model_.diagnostics.warnings.push_back(files[i].path + ": skipped: " + errors[i]);
      }
    }
  }

  // --- declarations ------------------------------------------------------------

  std::size_t add_entity(EntityKind kind, const std::string& name, int file, int line, int column,
                         int begin, int end, const std::string& enclosing, const std::string& chain,
                         const std::string& key, std::string declared_type) {
    Entity e;
    e.kind = kind;
    e.name = name;
    e.location = Location{units_[file].path, line, column};
    e.begin_line = begin;
    e.end_line = std::max(end, line);
    e.enclosing = enclosing;
    e.declared_type = std::move(declared_type);
    std::string id = units_[file].path + "#" + chain + "#" + to_string(kind) + "#" + key;
    if (!used_ids_.insert(id).second) {
      for (int n = 2;; ++n) {
        std::string candidate = id + "#" + std::to_string(n);
        if (used_ids_.insert(candidate).second) {
          id = std::move(candidate);
          break;
        }
      }
    }
    e.id = std::move(id);
    try {
      e.normalized = lexical::normalize(name, context_);
    } catch (const Error&) {
      e.normalized.raw = name;  // degenerate names are never candidates
    }
    model_.entities.push_back(std::move(e));
    return model_.entities.size() - 1;
  }

  const std::string& id_of(std::size_t entity) const { return model_.entities[entity].id; }

  static std::string signature(const java::MethodDecl& m) {
    std::string s = m.name + "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      if (i) s += ",";
      s += m.params[i].type.name;
      for (int d = 0; d < m.params[i].type.dims; ++d) s += "[]";
      if (m.params[i].varargs) s += "...";
    }
    return s + ")";
  }

  void declare_type(int file, const TypeDecl& t, int outer) {
    const int index = static_cast<int>(classes_.size());
    classes_.emplace_back();
    ClassInfo info;
    info.decl = &t;
    info.file = file;
    info.outer = outer;
    info.chain = outer < 0 ? t.name : classes_[outer].chain + "." + t.name;
    const bool interface = t.kind == TypeDecl::Kind::kInterface || t.kind == TypeDecl::Kind::kAnnotation;
    const std::string enclosing = outer < 0 ? std::string() : id_of(classes_[outer].entity);
    info.entity = add_entity(interface ? EntityKind::kInterface : EntityKind::kClass, t.name, file, t.line,
                             t.column, t.begin_line, t.end_line, enclosing, info.chain, t.name, "");
    const std::string class_id = id_of(info.entity);
    if (outer >= 0) classes_[outer].nested.emplace(t.name, index);

    const std::string& package = units_[file].unit.package;
    const std::string qualified = package.empty() ? info.chain : package + "." + info.chain;
    by_qualified_.emplace(qualified, index);
    by_simple_[t.name].push_back(index);

    for (const auto& f : t.fields) {
      const std::size_t e = add_entity(EntityKind::kField, f.name, file, f.line, f.column, f.begin_line,
                                       f.end_line, class_id, info.chain, f.name, type_text(f.type));
      info.fields.emplace(f.name, e);
      field_owner_.emplace(e, std::make_pair(index, &f));
    }
    for (const auto& m : t.methods) {
      MethodInfo mi;
      mi.decl = &m;
      mi.owner = index;
      const std::string sig = signature(m);
      mi.entity = add_entity(EntityKind::kMethod, m.name, file, m.line, m.column, m.begin_line, m.end_line,
                             class_id, info.chain, sig, m.constructor ? "" : type_text(m.return_type));
      model_.entities[mi.entity].constructor = m.constructor;
      mi.chain = info.chain + "." + sig;
      const std::string method_id = id_of(mi.entity);
      for (const auto& p : m.params) {
        TypeRef pt = p.type;
        if (p.varargs) ++pt.dims;
        mi.params.push_back(add_entity(EntityKind::kParameter, p.name, file, p.line, p.column, p.line, p.line,
                                       method_id, mi.chain, p.name, type_text(pt)));
      }
      info.methods.push_back(std::move(mi));
    }
    classes_[index] = std::move(info);
    for (const auto& n : t.nested) declare_type(file, n, index);
  }

  // --- type resolution ------------------------------------------------------------

  int lookup_qualified(const std::string& name) const {
    auto it = by_qualified_.find(name);
    return it == by_qualified_.end() ? -1 : it->second;
  }

  // Member type `name` of `cls` or of its supertypes.
  int member_type(int cls, const std::string& name, int depth = 0) const {
    if (depth > 32) return -1;
    const auto& info = classes_[cls];
    if (auto it = info.nested.find(name); it != info.nested.end()) return it->second;
    for (int s : info.supers) {
      if (int found = member_type(s, name, depth + 1); found >= 0) return found;
    }
    return -1;
  }

  static bool has_type_param(const std::vector<std::string>& params, const std::string& name) {
    return std::find(params.begin(), params.end(), name) != params.end();
  }

  // Resolves a simple type name as seen from inside `cls`.
  TypeInfo resolve_simple(const std::string& name, int cls, const std::vector<std::string>* method_params,
                          int dims) const {
    if (method_params && has_type_param(*method_params, name)) return {};
    for (int c = cls; c >= 0; c = classes_[c].outer) {
      if (classes_[c].decl->name == name) return TypeInfo::project(c, dims, name);
      if (has_type_param(classes_[c].decl->type_params, name)) return {};
      if (int m = member_type(c, name); m >= 0) return TypeInfo::project(m, dims, name);
    }
    const auto& unit = units_[classes_[cls].file].unit;
    for (const auto& imp : unit.imports) {
      if (imp.size() > name.size() && imp.ends_with("." + name)) {
        int found = lookup_qualified(imp);
        return found >= 0 ? TypeInfo::project(found, dims, name) : TypeInfo::external(name, dims);
      }
    }
    if (int found = lookup_qualified(unit.package.empty() ? name : unit.package + "." + name); found >= 0) {
      return TypeInfo::project(found, dims, name);
    }
    for (const auto& imp : unit.imports) {
      if (imp.ends_with(".*")) {
        if (int found = lookup_qualified(imp.substr(0, imp.size() - 1) + name); found >= 0) {
          return TypeInfo::project(found, dims, name);
        }
      }
    }
    if (auto it = by_simple_.find(name); it != by_simple_.end() && it->second.size() == 1) {
      return TypeInfo::project(it->second.front(), dims, name);
    }
    return TypeInfo::external(name, dims);
  }

  TypeInfo resolve_type(const TypeRef& t, int cls, const std::vector<std::string>* method_params) const {
    if (t.empty() || t.name == "var") return {};
    if (t.primitive) return TypeInfo::external(t.name, t.dims);
    if (t.qualified.find('.') == std::string::npos) return resolve_simple(t.name, cls, method_params, t.dims);
    if (int found = lookup_qualified(t.qualified); found >= 0) return TypeInfo::project(found, t.dims, t.name);
    // Outer.Inner written relative to the current scope.
    std::size_t start = 0;
    std::size_t dot = t.qualified.find('.');
    TypeInfo head = resolve_simple(t.qualified.substr(0, dot), cls, method_params, 0);
    if (!head.is_class()) return TypeInfo::external(t.name, t.dims);
    int current = head.cls;
    start = dot + 1;
    while (start <= t.qualified.size()) {
      dot = t.qualified.find('.', start);
      const std::string part = t.qualified.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      current = member_type(current, part);
      if (current < 0) return TypeInfo::external(t.name, t.dims);
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    return TypeInfo::project(current, t.dims, t.name);
  }

  void link_supers(int cls) {
    auto& info = classes_[cls];
    std::vector<const TypeRef*> refs;
    for (const auto& t : info.decl->extends) refs.push_back(&t);
    for (const auto& t : info.decl->implements) refs.push_back(&t);
    for (const TypeRef* t : refs) {
      // Supertypes of nested classes are resolved from the enclosing scope.
      TypeInfo r = resolve_type(*t, info.outer >= 0 ? info.outer : cls, nullptr);
      if (!r.is_class() || r.cls == cls) continue;
      if (std::find(info.supers.begin(), info.supers.end(), r.cls) != info.supers.end()) continue;
      info.supers.push_back(r.cls);
      model_.inheritance.push_back({id_of(info.entity), id_of(classes_[r.cls].entity)});
    }
  }

  void add_typing(std::size_t entity, const TypeRef& t, const TypeInfo& r) {
    if (t.empty() || (t.primitive && t.name == "void" && t.dims == 0)) return;
    model_.typings.push_back(
        {id_of(entity), type_text(t), r.kind == TypeInfo::Kind::kProject ? id_of(classes_[r.cls].entity) : ""});
  }

  void type_members(int cls) {
    const auto& info = classes_[cls];
    for (const auto& f : info.decl->fields) {
      add_typing(info.fields.at(f.name), f.type, resolve_type(f.type, cls, nullptr));
    }
    for (const auto& m : info.methods) {
      if (!m.decl->constructor) {
        add_typing(m.entity, m.decl->return_type, resolve_type(m.decl->return_type, cls, &m.decl->type_params));
      }
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        TypeRef t = m.decl->params[i].type;
        if (m.decl->params[i].varargs) ++t.dims;
        add_typing(m.params[i], t, resolve_type(t, cls, &m.decl->type_params));
      }
    }
  }

  void group_overloads(int cls) {
    const auto& info = classes_[cls];
    std::map<std::string, std::vector<std::string>> by_name;
    std::vector<std::string> order;
    for (const auto& m : info.methods) {
      auto& group = by_name[m.decl->name];
      if (group.empty()) order.push_back(m.decl->name);
      group.push_back(id_of(m.entity));
    }
    for (const auto& name : order) {
      if (by_name[name].size() >= 2) model_.overloads.push_back({id_of(info.entity), name, by_name[name]});
    }
  }

  // --- member lookup ------------------------------------------------------------

  std::size_t find_field(int cls, const std::string& name, int depth = 0) const {
    if (cls < 0 || depth > 32) return kNone;
    const auto& info = classes_[cls];
    if (auto it = info.fields.find(name); it != info.fields.end()) return it->second;
    for (int s : info.supers) {
      if (std::size_t f = find_field(s, name, depth + 1); f != kNone) return f;
    }
    return kNone;
  }

  void collect_methods(int cls, const std::string& name, std::vector<const MethodInfo*>& out,
                       std::set<int>& seen) const {
    if (cls < 0 || !seen.insert(cls).second) return;
    for (const auto& m : classes_[cls].methods) {
      if (!m.decl->constructor && m.decl->name == name) out.push_back(&m);
    }
    for (int s : classes_[cls].supers) collect_methods(s, name, out, seen);
  }

  TypeInfo field_type(std::size_t field) const {
    auto it = field_owner_.find(field);
    if (it == field_owner_.end()) return {};
    return resolve_type(it->second.second->type, it->second.first, nullptr);
  }

  TypeInfo return_type(const MethodInfo& m) const {
    return resolve_type(m.decl->return_type, m.owner, &m.decl->type_params);
  }

  // Picks one overload for the given argument types; nullptr if none or ambiguous.
  const MethodInfo* choose(const std::vector<const MethodInfo*>& candidates,
                           const std::vector<TypeInfo>& args) const {
    std::vector<const MethodInfo*> by_arity;
    for (const MethodInfo* m : candidates) {
      if (m->accepts(args.size())) by_arity.push_back(m);
    }
    if (by_arity.size() <= 1) return by_arity.empty() ? nullptr : by_arity.front();
    std::vector<const MethodInfo*> compatible;
    for (const MethodInfo* m : by_arity) {
      bool ok = m->decl->params.size() == args.size();
      for (std::size_t i = 0; ok && i < args.size(); ++i) {
        const auto& p = m->decl->params[i].type;
        if (args[i].name.empty()) continue;
        ok = p.name == args[i].name && p.dims == args[i].dims;
      }
      if (ok) compatible.push_back(m);
    }
    return compatible.size() == 1 ? compatible.front() : nullptr;
  }

  const MethodInfo* find_constructor(int cls, const std::vector<TypeInfo>& args) const {
    std::vector<const MethodInfo*> ctors;
    for (const auto& m : classes_[cls].methods) {
      if (m.decl->constructor) ctors.push_back(&m);
    }
    return choose(ctors, args);
  }

  // --- bodies -----------------------------------------------------------------

  struct Binding {
    std::size_t entity = kNone;
    TypeInfo type;
  };

  struct Value {
    std::vector<std::size_t> refs;
    TypeInfo type;
    int class_ref = -1;  // the expression names a class (static access)
  };

  class BodyWalker {
   public:
    BodyWalker(ModelBuilder& b, int cls, const MethodInfo* method) : b_(b), cls_(cls), method_(method) {
      scopes_.emplace_back();
      if (method_) {
        for (std::size_t i = 0; i < method_->params.size(); ++i) {
          TypeRef t = method_->decl->params[i].type;
          if (method_->decl->params[i].varargs) ++t.dims;
          declare(method_->decl->params[i].name, Binding{method_->params[i], resolve(t)});
        }
      }
    }

    void statements(const std::vector<Stmt>& stmts) {
      for (const auto& s : stmts) statement(s);
    }

    Value expression(const Expr& e) { return eval(e); }

    // Constructor invocation of `target` (-1 if unknown) with `operands`.
    void construct(int target, const std::vector<java::ExprPtr>& operands) {
      std::vector<TypeInfo> types;
      auto args = arguments(operands, types);
      if (target < 0) return;
      if (const MethodInfo* ctor = b_.find_constructor(target, types)) invoke(ctor, args);
    }

   private:
    TypeInfo resolve(const TypeRef& t) const {
      return b_.resolve_type(t, cls_, method_ ? &method_->decl->type_params : nullptr);
    }

    void declare(const std::string& name, Binding binding) { scopes_.back()[name] = std::move(binding); }

    const Binding* lookup(const std::string& name) const {
      for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
        if (auto found = it->find(name); found != it->end()) return &found->second;
      }
      return nullptr;
    }

    std::string caller() const { return method_ ? b_.id_of(method_->entity) : std::string(); }

    void statement(const Stmt& s) {
      switch (s.kind) {
        case Stmt::Kind::kBlock:
          scopes_.emplace_back();
          statements(s.children);
          scopes_.pop_back();
          break;
        case Stmt::Kind::kLocalDecl:
          local_declaration(s);
          break;
        case Stmt::Kind::kExpr:
          if (s.expr) eval(*s.expr);
          break;
        case Stmt::Kind::kCompound:
          if (s.scoped) scopes_.emplace_back();
          statements(s.children);
          if (s.scoped) scopes_.pop_back();
          break;
      }
    }

    void local_declaration(const Stmt& s) {
      for (const auto& v : s.vars) {
        Value init;
        if (v.init) init = eval(*v.init);
        TypeRef t = s.type;
        t.dims += v.dims;
        TypeInfo type = t.name == "var" ? init.type : resolve(t);
        Binding binding{kNone, type};
        if (method_ && lambda_depth_ == 0) {
          const int file = b_.classes_[cls_].file;
          binding.entity =
              b_.add_entity(EntityKind::kLocalVariable, v.name, file, v.line, v.column, s.line,
                            std::max(s.end_line, v.line), b_.id_of(method_->entity), method_->chain, v.name,
                            type_text(t));
          b_.add_typing(binding.entity, t, type);
          if (!init.refs.empty()) b_.assign(binding.entity, init.refs);
        }
        declare(v.name, std::move(binding));
      }
    }

    static TypeInfo literal_type(const std::string& text) {
      if (text.empty() || text == "null") return {};
      if (text == "true" || text == "false") return TypeInfo::external("boolean");
      if (text.front() == '"') return TypeInfo::external("String");
      if (text.front() == '\'') return TypeInfo::external("char");
      const char last = static_cast<char>(std::tolower(static_cast<unsigned char>(text.back())));
      if (last == 'l') return TypeInfo::external("long");
      if (last == 'f') return TypeInfo::external("float");
      const bool hex = text.size() > 1 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
      if (last == 'd' && !hex) return TypeInfo::external("double");
      if (!hex && text.find_first_of(".eE") != std::string::npos) return TypeInfo::external("double");
      return TypeInfo::external("int");
    }

    Value name_value(const std::string& name) {
      Value v;
      if (const Binding* binding = lookup(name)) {
        if (binding->entity != kNone) v.refs.push_back(binding->entity);
        v.type = binding->type;
        return v;
      }
      for (int c = cls_; c >= 0; c = b_.classes_[c].outer) {
        if (std::size_t f = b_.find_field(c, name); f != kNone) {
          v.refs.push_back(f);
          v.type = b_.field_type(f);
          return v;
        }
      }
      TypeInfo t = b_.resolve_simple(name, cls_, method_ ? &method_->decl->type_params : nullptr, 0);
      if (t.is_class()) {
        v.class_ref = t.cls;
        v.type = t;
      } else if (t.kind == TypeInfo::Kind::kExternal && std::isupper(static_cast<unsigned char>(name[0]))) {
        v.type = t;  // likely a library class used statically
      } else {
        ++b_.model_.diagnostics.unresolved_references;
      }
      return v;
    }

    Value field_access(const Expr& e) {
      Value target = eval(*e.target);
      Value v;
      if (target.type.is_class()) {
        if (std::size_t f = b_.find_field(target.type.cls, e.name); f != kNone) {
          v.refs.push_back(f);
          v.type = b_.field_type(f);
          return v;
        }
        if (target.class_ref >= 0) {
          if (int m = b_.member_type(target.class_ref, e.name); m >= 0) {
            v.class_ref = m;
            v.type = TypeInfo::project(m, 0, e.name);
            return v;
          }
        }
      }
      if (target.type.kind == TypeInfo::Kind::kUnknown && target.class_ref < 0) {
        ++b_.model_.diagnostics.unresolved_references;
      }
      return v;
    }

    std::vector<std::vector<std::size_t>> arguments(const std::vector<java::ExprPtr>& operands,
                                                    std::vector<TypeInfo>& types) {
      std::vector<std::vector<std::size_t>> refs;
      for (const auto& arg : operands) {
        Value v = eval(*arg);
        refs.push_back(std::move(v.refs));
        types.push_back(v.type);
      }
      return refs;
    }

    void invoke(const MethodInfo* m, const std::vector<std::vector<std::size_t>>& args) {
      InvocationFact fact;
      fact.caller = caller();
      fact.method = b_.id_of(m->entity);
      for (const auto& refs : args) {
        std::vector<std::string> ids;
        for (std::size_t r : refs) ids.push_back(b_.id_of(r));
        fact.arguments.push_back(std::move(ids));
      }
      b_.model_.invocations.push_back(std::move(fact));
    }

    Value call(const Expr& e) {
      std::vector<const MethodInfo*> candidates;
      bool known_receiver = false;
      if (!e.target) {
        for (int c = cls_; c >= 0 && candidates.empty(); c = b_.classes_[c].outer) {
          std::set<int> seen;
          b_.collect_methods(c, e.name, candidates, seen);
        }
        known_receiver = true;
      } else {
        Value target = eval(*e.target);
        if (target.type.is_class()) {
          std::set<int> seen;
          b_.collect_methods(target.type.cls, e.name, candidates, seen);
          known_receiver = true;
        } else if (target.type.kind != TypeInfo::Kind::kUnknown) {
          known_receiver = true;  // library or array receiver
        }
      }
      std::vector<TypeInfo> types;
      auto args = arguments(e.operands, types);
      if (!known_receiver) candidates = b_.methods_named(e.name);
      Value v;
      const MethodInfo* m = b_.choose(candidates, types);
      if (!m) {
        if (!candidates.empty() || !known_receiver) ++b_.model_.diagnostics.unresolved_references;
        return v;
      }
      invoke(m, args);
      v.refs.push_back(m->entity);
      v.type = b_.return_type(*m);
      return v;
    }

    Value creation(const Expr& e) {
      if (e.target) eval(*e.target);
      std::vector<TypeInfo> types;
      auto args = arguments(e.operands, types);
      Value v;
      v.type = resolve(e.type);
      if (v.type.is_class()) {
        if (const MethodInfo* ctor = b_.find_constructor(v.type.cls, types)) invoke(ctor, args);
      }
      return v;
    }

    Value explicit_constructor_call(const Expr& e) {
      int target = cls_;
      if (e.name == "super") {
        target = -1;
        for (int s : b_.classes_[cls_].supers) {
          if (b_.model_.entities[b_.classes_[s].entity].kind == EntityKind::kClass) target = s;
        }
      }
      construct(target, e.operands);
      return {};
    }

    Value eval(const Expr& e) {
      Value v;
      switch (e.kind) {
        case Expr::Kind::kName:
          return name_value(e.name);
        case Expr::Kind::kFieldAccess:
          return field_access(e);
        case Expr::Kind::kCall:
          return call(e);
        case Expr::Kind::kNew:
          return creation(e);
        case Expr::Kind::kLiteral:
          v.type = literal_type(e.name);
          return v;
        case Expr::Kind::kThis:
          v.type = TypeInfo::project(cls_, 0, b_.classes_[cls_].decl->name);
          return v;
        case Expr::Kind::kSuper:
          for (int s : b_.classes_[cls_].supers) {
            if (b_.model_.entities[b_.classes_[s].entity].kind == EntityKind::kClass) {
              v.type = TypeInfo::project(s, 0, b_.classes_[s].decl->name);
            }
          }
          return v;
        case Expr::Kind::kBinary: {
          for (const auto& op : e.operands) {
            Value part = eval(*op);
            v.refs.insert(v.refs.end(), part.refs.begin(), part.refs.end());
          }
          return v;
        }
        case Expr::Kind::kAssign: {
          Value lhs = eval(*e.target);
          Value rhs = eval(*e.operands[0]);
          if (lhs.refs.size() == 1 && !rhs.refs.empty()) b_.assign(lhs.refs[0], rhs.refs);
          return lhs;
        }
        case Expr::Kind::kConditional: {
          eval(*e.target);
          for (const auto& op : e.operands) {
            Value part = eval(*op);
            if (v.type.kind == TypeInfo::Kind::kUnknown) v.type = part.type;
            v.refs.insert(v.refs.end(), part.refs.begin(), part.refs.end());
          }
          return v;
        }
        case Expr::Kind::kCast: {
          v = eval(*e.operands[0]);
          v.type = resolve(e.type);
          v.class_ref = -1;
          return v;
        }
        case Expr::Kind::kUnary:
          v = eval(*e.operands[0]);
          v.class_ref = -1;
          return v;
        case Expr::Kind::kArrayAccess: {
          v = eval(*e.target);
          eval(*e.operands[0]);
          if (v.type.dims > 0) {
            --v.type.dims;
          } else {
            v.type = {};
          }
          return v;
        }
        case Expr::Kind::kLambda: {
          ++lambda_depth_;
          scopes_.emplace_back();
          for (const auto& p : e.params) declare(p, Binding{});
          for (const auto& op : e.operands) eval(*op);
          statements(e.body);
          scopes_.pop_back();
          --lambda_depth_;
          return v;
        }
        case Expr::Kind::kMethodRef:
          if (e.target) eval(*e.target);
          return v;
        case Expr::Kind::kArrayInit:
          for (const auto& op : e.operands) {
            Value part = eval(*op);
            v.refs.insert(v.refs.end(), part.refs.begin(), part.refs.end());
          }
          return v;
        case Expr::Kind::kInstanceOf:
          eval(*e.operands[0]);
          if (!e.name.empty()) declare(e.name, Binding{kNone, resolve(e.type)});
          v.type = TypeInfo::external("boolean");
          return v;
        case Expr::Kind::kSwitch:
          eval(*e.target);
          scopes_.emplace_back();
          statements(e.body);
          scopes_.pop_back();
          return v;
        case Expr::Kind::kOther:
          if (e.name == "this" || e.name == "super") return explicit_constructor_call(e);
          if (e.target) eval(*e.target);
          for (const auto& op : e.operands) eval(*op);
          return v;
      }
      return v;
    }

    ModelBuilder& b_;
    int cls_;
    const MethodInfo* method_;
    int lambda_depth_ = 0;
    std::vector<std::map<std::string, Binding>> scopes_;
  };

  void assign(std::size_t lhs, const std::vector<std::size_t>& rhs) {
    AssignmentFact fact;
    fact.lhs = id_of(lhs);
    for (std::size_t r : rhs) {
      const std::string& id = id_of(r);
      if (std::find(fact.rhs.begin(), fact.rhs.end(), id) == fact.rhs.end()) fact.rhs.push_back(id);
    }
    model_.assignments.push_back(std::move(fact));
  }

  std::vector<const MethodInfo*> methods_named(const std::string& name) const {
    std::vector<const MethodInfo*> out;
    for (const auto& c : classes_) {
      for (const auto& m : c.methods) {
        if (!m.decl->constructor && m.decl->name == name) out.push_back(&m);
      }
    }
    return out;
  }

  void walk_bodies(int cls) {
    const auto& info = classes_[cls];
    for (const auto& f : info.decl->fields) {
      BodyWalker walker(*this, cls, nullptr);
      if (f.init) {
        Value init = walker.expression(*f.init);
        if (!init.refs.empty()) assign(info.fields.at(f.name), init.refs);
      }
      if (f.enum_constant) walker.construct(cls, f.constant_args);
    }
    for (const auto& m : info.methods) {
      BodyWalker walker(*this, cls, &m);
      walker.statements(m.decl->body);
    }
    for (const auto& block : info.decl->initializers) {
      BodyWalker walker(*this, cls, nullptr);
      walker.statements(block);
    }
  }

  SourceModel model_;
  lexical::ExpansionContext context_;
  std::vector<FileUnit> units_;
  std::vector<ClassInfo> classes_;
  std::map<std::string, int> by_qualified_;
  std::map<std::string, std::vector<int>> by_simple_;
  std::unordered_set<std::string> used_ids_;
  std::unordered_map<std::size_t, std::pair<int, const java::FieldDecl*>> field_owner_;
};

}  // namespace

SourceModel build_source_model(std::vector<SourceFile> files, const lexical::AbbreviationDictionary* dictionary) {
  return ModelBuilder(dictionary).build(std::move(files));
}

std::vector<SourceFile> read_java_sources(const std::string& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(ErrorCode::kIo, "not a readable directory: " + root);
  std::vector<SourceFile> files;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot read directory " + root + ": " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw Error(ErrorCode::kIo, "cannot read directory " + root + ": " + ec.message());
    if (!it->is_regular_file(ec) || it->path().extension() != ".java") continue;
    std::ifstream in(it->path(), std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read " + it->path().string());
    std::ostringstream text;
    text << in.rdbuf();
    files.push_back({fs::relative(it->path(), root).generic_string(), text.str()});
  }
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
  return files;
}

SourceModel parse_project(const std::string& root, const lexical::AbbreviationDictionary* dictionary) {
  return build_source_model(read_java_sources(root), dictionary);
}

const Entity& resolve_entity(const SourceModel& model, std::string_view file, int line, std::string_view name,
                             std::optional<EntityKind> kind) {
  const std::string wanted = fs::path(std::string(file)).lexically_normal().generic_string();
  std::vector<const Entity*> matches;
  for (const auto& e : model.entities) {
    if (e.name == name && e.location.file == wanted && e.begin_line <= line && line <= e.end_line) {
      matches.push_back(&e);
    }
  }
  auto narrow = [&](auto pred) {
    std::vector<const Entity*> kept;
    for (const Entity* e : matches) {
      if (pred(*e)) kept.push_back(e);
    }
    if (!kept.empty()) matches = std::move(kept);
  };
  if (kind) {
    std::erase_if(matches, [&](const Entity* e) { return e->kind != *kind; });
  }
  if (matches.size() > 1) narrow([&](const Entity& e) { return e.location.line == line; });
  if (matches.size() > 1) {
    // Prefer the innermost declaration.
    auto span = [](const Entity* e) { return e->end_line - e->begin_line; };
    const int tightest = span(*std::min_element(matches.begin(), matches.end(),
                                                [&](auto a, auto b) { return span(a) < span(b); }));
    narrow([&](const Entity& e) { return span(&e) == tightest; });
  }
  const std::string where = std::string(file) + ":" + std::to_string(line);
  if (matches.empty()) throw Error(ErrorCode::kNotFound, "no declaration of '" + std::string(name) + "' at " + where);
  if (matches.size() > 1) {
    std::string ids;
    for (const Entity* e : matches) ids += " " + e->id;
    throw Error(ErrorCode::kAmbiguous,
                "several declarations of '" + std::string(name) + "' at " + where + ":" + ids);
  }
  return *matches.front();
}

}  // namespace renas
