#include <algorithm>
#include <optional>

#include "renas/error.hpp"
#include "renas/java/lexer.hpp"
#include "renas/java/syntax.hpp"

namespace renas::java {
namespace {

constexpr std::string_view kPrimitives[] = {"boolean", "byte", "char",   "short", "int",
                                            "long",    "float", "double", "void"};

constexpr std::string_view kModifiers[] = {"public",   "protected", "private",      "static",
                                           "abstract", "final",     "native",       "synchronized",
                                           "transient", "volatile", "strictfp",     "default"};

constexpr std::string_view kAssignOps[] = {"=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="};

constexpr std::string_view kBinaryOps[] = {"||", "&&", "|", "^",  "&", "==", "!=", "<",
                                           "<=", ">=", "<<", "+", "-", "*",  "/",  "%"};

template <std::size_t N>
bool one_of(std::string_view s, const std::string_view (&list)[N]) {
  return std::find(std::begin(list), std::end(list), s) != std::end(list);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  CompilationUnit parse_unit() {
    CompilationUnit unit;
    if (cur().is_identifier() && (cur().text == "module" || (cur().text == "open" && la(1).text == "module"))) {
      return unit;
    }
    const std::size_t start = pos_;
    parse_modifiers();
    if (accept("package")) {
      unit.package = parse_qualified_name();
      expect(";");
    } else {
      pos_ = start;
    }
    while (at("import")) {
      advance();
      const bool is_static = accept("static");
      std::string name = parse_qualified_name();
      if (accept(".")) {
        expect("*");
        name += ".*";
      }
      expect(";");
      if (!is_static) unit.imports.push_back(std::move(name));
    }
    while (cur().kind != TokenKind::kEnd) {
      if (accept(";")) continue;
      const int begin = cur().line;
      parse_modifiers();
      if (!is_type_decl_start()) fail("expected a type declaration");
      unit.types.push_back(parse_type_decl(begin));
    }
    return unit;
  }

 private:
  // --- token helpers -------------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& la(std::size_t n) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }
  bool at(std::string_view s) const { return cur().is(s); }
  void advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  bool accept(std::string_view s) {
    if (!at(s)) return false;
    advance();
    return true;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kFormat, "line " + std::to_string(cur().line) + ": " + what + " near '" +
                                        cur().text + "'");
  }
  const Token& expect_identifier() {
    if (!cur().is_identifier()) fail("expected identifier");
    const Token& t = cur();
    advance();
    return t;
  }
  bool adjacent(const Token& a, const Token& b) const {
    return a.line == b.line && a.column + static_cast<int>(a.text.size()) == b.column;
  }

  std::string parse_qualified_name() {
    std::string name = expect_identifier().text;
    while (at(".") && la(1).is_identifier()) {
      advance();
      name += "." + cur().text;
      advance();
    }
    return name;
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    int depth = 0;
    do {
      if (cur().kind == TokenKind::kEnd) fail("unbalanced '" + std::string(open) + "'");
      if (at(open)) ++depth;
      if (at(close)) --depth;
      advance();
    } while (depth > 0);
  }

  // --- declarations --------------------------------------------------------

  void skip_annotation() {
    expect("@");
    parse_qualified_name();
    if (at("(")) skip_balanced("(", ")");
  }

  void parse_modifiers() {
    while (true) {
      if (at("@") && !la(1).is("interface")) {
        skip_annotation();
      } else if (cur().kind == TokenKind::kKeyword && one_of(cur().text, kModifiers) && !la(1).is(":")) {
        advance();
      } else if (cur().is_identifier() && cur().text == "sealed" && !la(1).is("=") && !la(1).is("(")) {
        advance();
      } else if (cur().is_identifier() && cur().text == "non" && la(1).is("-") && la(2).text == "sealed") {
        advance();
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  bool is_type_decl_start() const {
    if (at("class") || at("interface") || at("enum")) return true;
    if (at("@") && la(1).is("interface")) return true;
    return cur().is_identifier() && cur().text == "record" && la(1).is_identifier() &&
           (la(2).is("(") || la(2).is("<"));
  }

  std::vector<std::string> parse_type_params() {
    std::vector<std::string> names;
    expect("<");
    while (!at(">")) {
      while (at("@")) skip_annotation();
      names.push_back(expect_identifier().text);
      if (accept("extends")) {
        do {
          TypeRef ignored;
          if (!parse_type_into(ignored)) fail("expected bound type");
        } while (accept("&"));
      }
      if (!accept(",")) break;
    }
    expect(">");
    return names;
  }

  std::vector<TypeRef> parse_type_list() {
    std::vector<TypeRef> types;
    do {
      TypeRef t;
      if (!parse_type_into(t)) fail("expected type");
      types.push_back(std::move(t));
    } while (accept(","));
    return types;
  }

  TypeDecl parse_type_decl(int begin_line) {
    TypeDecl d;
    d.begin_line = begin_line;
    if (accept("class")) {
      d.kind = TypeDecl::Kind::kClass;
    } else if (accept("interface")) {
      d.kind = TypeDecl::Kind::kInterface;
    } else if (accept("enum")) {
      d.kind = TypeDecl::Kind::kEnum;
    } else if (at("@")) {
      advance();
      expect("interface");
      d.kind = TypeDecl::Kind::kAnnotation;
    } else {
      advance();  // record
      d.kind = TypeDecl::Kind::kRecord;
    }
    const Token& name = expect_identifier();
    d.name = name.text;
    d.line = name.line;
    d.column = name.column;
    if (at("<")) d.type_params = parse_type_params();
    if (d.kind == TypeDecl::Kind::kRecord) parse_record_components(d);
    if (accept("extends")) d.extends = parse_type_list();
    if (accept("implements")) d.implements = parse_type_list();
    if (cur().is_identifier() && cur().text == "permits") {
      advance();
      parse_type_list();
    }
    parse_class_body(d);
    return d;
  }

  void parse_record_components(TypeDecl& d) {
    expect("(");
    while (!at(")")) {
      parse_modifiers();
      FieldDecl f;
      f.begin_line = cur().line;
      if (!parse_type_into(f.type)) fail("expected record component type");
      accept("...");
      const Token& name = expect_identifier();
      f.name = name.text;
      f.line = f.end_line = name.line;
      f.column = name.column;
      d.fields.push_back(std::move(f));
      if (!accept(",")) break;
    }
    expect(")");
  }

  void parse_class_body(TypeDecl& d) {
    expect("{");
    if (d.kind == TypeDecl::Kind::kEnum) parse_enum_constants(d);
    while (!at("}")) {
      if (cur().kind == TokenKind::kEnd) fail("unterminated class body");
      parse_member(d);
    }
    d.end_line = cur().line;
    expect("}");
  }

  void parse_enum_constants(TypeDecl& d) {
    while (!at("}")) {
      if (accept(";")) return;
      const int begin = cur().line;
      while (at("@")) skip_annotation();
      const Token& name = expect_identifier();
      FieldDecl f;
      f.enum_constant = true;
      f.name = name.text;
      f.begin_line = begin;
      f.line = name.line;
      f.column = name.column;
      f.type = TypeRef{d.name, d.name, false, 0};
      if (at("(")) f.constant_args = parse_args();
      if (at("{")) skip_balanced("{", "}");
      f.end_line = toks_[pos_ - 1].line;
      d.fields.push_back(std::move(f));
      if (!accept(",")) {
        accept(";");
        return;
      }
    }
  }

  void parse_member(TypeDecl& d) {
    if (accept(";")) return;
    const int begin = cur().line;
    if (at("{") || (at("static") && la(1).is("{"))) {
      accept("static");
      d.initializers.push_back(parse_block_body());
      return;
    }
    parse_modifiers();
    if (is_type_decl_start()) {
      d.nested.push_back(parse_type_decl(begin));
      return;
    }
    std::vector<std::string> type_params;
    if (at("<")) type_params = parse_type_params();

    if (cur().is_identifier() && cur().text == d.name && la(1).is("{")) {
      advance();  // compact canonical constructor
      d.initializers.push_back(parse_block_body());
      return;
    }
    if (cur().is_identifier() && cur().text == d.name && la(1).is("(")) {
      const Token& name = cur();
      advance();
      MethodDecl m;
      m.constructor = true;
      m.name = name.text;
      m.begin_line = begin;
      m.line = name.line;
      m.column = name.column;
      m.type_params = std::move(type_params);
      parse_method_rest(m);
      d.methods.push_back(std::move(m));
      return;
    }
    TypeRef type;
    if (!parse_type_into(type)) fail("expected member declaration");
    const Token& name = expect_identifier();
    if (at("(")) {
      MethodDecl m;
      m.name = name.text;
      m.begin_line = begin;
      m.line = name.line;
      m.column = name.column;
      m.return_type = std::move(type);
      m.type_params = std::move(type_params);
      parse_method_rest(m);
      d.methods.push_back(std::move(m));
      return;
    }
    const std::size_t first = d.fields.size();
    const Token* current = &name;
    while (true) {
      FieldDecl f;
      f.type = type;
      f.name = current->text;
      f.begin_line = begin;
      f.line = current->line;
      f.column = current->column;
      f.type.dims += parse_dims();
      if (accept("=")) f.init = parse_var_init();
      d.fields.push_back(std::move(f));
      if (!accept(",")) break;
      current = &expect_identifier();
    }
    const int end = cur().line;
    expect(";");
    for (std::size_t i = first; i < d.fields.size(); ++i) d.fields[i].end_line = end;
  }

  void parse_method_rest(MethodDecl& m) {
    m.params = parse_params();
    m.return_type.dims += parse_dims();
    if (accept("throws")) parse_type_list();
    if (accept("default")) {
      while (!at(";")) {
        if (cur().kind == TokenKind::kEnd) fail("unterminated annotation default");
        if (at("(")) {
          skip_balanced("(", ")");
        } else if (at("{")) {
          skip_balanced("{", "}");
        } else {
          advance();
        }
      }
    }
    if (at("{")) {
      m.body = parse_block_body();
      m.end_line = last_close_line_;
    } else {
      m.end_line = cur().line;
      expect(";");
    }
  }

  std::vector<Param> parse_params() {
    std::vector<Param> params;
    expect("(");
    while (!at(")")) {
      parse_modifiers();
      Param p;
      if (!parse_type_into(p.type)) fail("expected parameter type");
      while (at("@")) skip_annotation();
      p.varargs = accept("...");
      if (accept("this")) {  // receiver parameter
        if (!accept(",")) break;
        continue;
      }
      const Token& name = expect_identifier();
      if (at(".") && la(1).is("this")) {  // Outer.this receiver
        advance();
        advance();
        if (!accept(",")) break;
        continue;
      }
      p.name = name.text;
      p.line = name.line;
      p.column = name.column;
      p.type.dims += parse_dims();
      params.push_back(std::move(p));
      if (!accept(",")) break;
    }
    expect(")");
    return params;
  }

  int parse_dims() {
    int dims = 0;
    while (true) {
      const std::size_t save = pos_;
      while (at("@")) skip_annotation();
      if (at("[") && la(1).is("]")) {
        advance();
        advance();
        ++dims;
      } else {
        pos_ = save;
        return dims;
      }
    }
  }

  // --- types ----------------------------------------------------------------

  bool parse_type_args() {
    if (!accept("<")) return false;
    if (accept(">")) return true;  // diamond
    while (true) {
      while (at("@")) skip_annotation();
      if (accept("?")) {
        if (accept("extends") || accept("super")) {
          TypeRef bound;
          if (!parse_type_into(bound)) return false;
        }
      } else {
        TypeRef arg;
        if (!parse_type_into(arg)) return false;
      }
      if (!accept(",")) break;
    }
    return accept(">");
  }

  // Leaves the position unspecified on failure; callers restore it.
  bool parse_type_into(TypeRef& t) {
    while (at("@")) {
      if (!la(1).is_identifier()) return false;
      skip_annotation();
    }
    if (cur().kind == TokenKind::kKeyword && one_of(cur().text, kPrimitives)) {
      t.name = t.qualified = cur().text;
      t.primitive = true;
      advance();
    } else if (cur().is_identifier()) {
      t.name = t.qualified = cur().text;
      advance();
      if (at("<") && !parse_type_args()) return false;
      while (at(".") && (la(1).is_identifier() || la(1).is("@"))) {
        advance();
        while (at("@")) skip_annotation();
        if (!cur().is_identifier()) return false;
        t.name = cur().text;
        t.qualified += "." + cur().text;
        advance();
        if (at("<") && !parse_type_args()) return false;
      }
    } else {
      return false;
    }
    t.dims = parse_dims();
    return true;
  }

  // --- statements -----------------------------------------------------------

  std::vector<Stmt> parse_block_body() {
    std::vector<Stmt> stmts;
    expect("{");
    while (!at("}")) {
      if (cur().kind == TokenKind::kEnd) fail("unterminated block");
      stmts.push_back(parse_statement());
    }
    last_close_line_ = cur().line;
    advance();
    return stmts;
  }

  static Stmt compound(int line, bool scoped = false) {
    Stmt s;
    s.kind = Stmt::Kind::kCompound;
    s.line = line;
    s.scoped = scoped;
    return s;
  }

  static Stmt expr_stmt(ExprPtr e) {
    Stmt s;
    s.kind = Stmt::Kind::kExpr;
    s.line = e ? e->line : 0;
    s.expr = std::move(e);
    return s;
  }

  ExprPtr parse_paren_expression() {
    expect("(");
    ExprPtr e = parse_expression();
    expect(")");
    return e;
  }

  bool is_yield_statement() const {
    if (!cur().is_identifier() || cur().text != "yield") return false;
    const Token& next = la(1);
    if (next.is_identifier() || next.kind == TokenKind::kNumber || next.kind == TokenKind::kString ||
        next.kind == TokenKind::kChar) {
      return true;
    }
    return next.is("new") || next.is("this") || next.is("null") || next.is("true") || next.is("false") ||
           next.is("super") || next.is("-") || next.is("!") || next.is("switch");
  }

  Stmt parse_statement() {
    const int line = cur().line;
    if (at("{")) {
      Stmt s;
      s.kind = Stmt::Kind::kBlock;
      s.line = line;
      s.scoped = true;
      s.children = parse_block_body();
      s.end_line = last_close_line_;
      return s;
    }
    if (accept(";")) return compound(line);
    if (accept("if")) {
      Stmt s = compound(line);
      s.children.push_back(expr_stmt(parse_paren_expression()));
      s.children.push_back(parse_statement());
      if (accept("else")) s.children.push_back(parse_statement());
      return s;
    }
    if (accept("while")) {
      Stmt s = compound(line);
      s.children.push_back(expr_stmt(parse_paren_expression()));
      s.children.push_back(parse_statement());
      return s;
    }
    if (accept("do")) {
      Stmt s = compound(line);
      s.children.push_back(parse_statement());
      expect("while");
      s.children.push_back(expr_stmt(parse_paren_expression()));
      expect(";");
      return s;
    }
    if (at("for")) return parse_for();
    if (at("try")) return parse_try();
    if (at("switch")) {
      advance();
      Stmt s = compound(line, true);
      s.children.push_back(expr_stmt(parse_paren_expression()));
      parse_switch_body(s.children);
      return s;
    }
    if (accept("return") || accept("throw") || is_yield_statement()) {
      if (cur().is_identifier() && cur().text == "yield") advance();
      Stmt s = compound(line);
      if (!at(";")) s.children.push_back(expr_stmt(parse_expression()));
      expect(";");
      return s;
    }
    if (accept("break") || accept("continue")) {
      if (cur().is_identifier()) advance();
      expect(";");
      return compound(line);
    }
    if (accept("synchronized")) {
      Stmt s = compound(line);
      s.children.push_back(expr_stmt(parse_paren_expression()));
      s.children.push_back(parse_statement());
      return s;
    }
    if (accept("assert")) {
      Stmt s = compound(line);
      s.children.push_back(expr_stmt(parse_expression()));
      if (accept(":")) s.children.push_back(expr_stmt(parse_expression()));
      expect(";");
      return s;
    }
    if (cur().is_identifier() && la(1).is(":") ) {  // label
      advance();
      advance();
      return parse_statement();
    }
    {
      const std::size_t save = pos_;
      parse_modifiers();
      if (is_type_decl_start()) {  // local class: no entities
        parse_type_decl(line);
        return compound(line);
      }
      pos_ = save;
    }
    if (auto decl = try_local_decl()) {
      decl->end_line = cur().line;
      expect(";");
      return std::move(*decl);
    }
    Stmt s = expr_stmt(parse_expression());
    expect(";");
    return s;
  }

  // Parses `[final] Type name [= init] {, name [= init]}` without the
  // terminator. Restores the position and returns nullopt if the tokens do
  // not form a declaration.
  std::optional<Stmt> try_local_decl(bool allow_colon = false) {
    const std::size_t save = pos_;
    const int line = cur().line;
    parse_modifiers();
    Stmt s;
    s.kind = Stmt::Kind::kLocalDecl;
    s.line = line;
    if (!parse_type_into(s.type) || !cur().is_identifier()) {
      pos_ = save;
      return std::nullopt;
    }
    const Token& after = la(1);
    if (!(after.is("=") || after.is(";") || after.is(",") || after.is("[") ||
          (allow_colon && after.is(":")) || after.is(")"))) {
      pos_ = save;
      return std::nullopt;
    }
    while (true) {
      const Token& name = expect_identifier();
      VarDecl v;
      v.name = name.text;
      v.line = name.line;
      v.column = name.column;
      v.dims = parse_dims();
      if (accept("=")) v.init = parse_var_init();
      s.vars.push_back(std::move(v));
      if (!at(",") || !la(1).is_identifier()) break;
      advance();
    }
    return s;
  }

  Stmt parse_for() {
    const int line = cur().line;
    expect("for");
    expect("(");
    Stmt s = compound(line, true);
    if (auto decl = try_local_decl(true)) {
      if (accept(":")) {
        s.children.push_back(std::move(*decl));
        s.children.push_back(expr_stmt(parse_expression()));
        expect(")");
        s.children.push_back(parse_statement());
        return s;
      }
      s.children.push_back(std::move(*decl));
    } else {
      while (!at(";")) {
        s.children.push_back(expr_stmt(parse_expression()));
        if (!accept(",")) break;
      }
    }
    expect(";");
    if (!at(";")) s.children.push_back(expr_stmt(parse_expression()));
    expect(";");
    while (!at(")")) {
      s.children.push_back(expr_stmt(parse_expression()));
      if (!accept(",")) break;
    }
    expect(")");
    s.children.push_back(parse_statement());
    return s;
  }

  Stmt parse_try() {
    const int line = cur().line;
    expect("try");
    Stmt s = compound(line, true);
    if (accept("(")) {
      while (!at(")")) {
        if (auto decl = try_local_decl()) {
          s.children.push_back(std::move(*decl));
        } else {
          s.children.push_back(expr_stmt(parse_expression()));
        }
        if (!accept(";")) break;
      }
      expect(")");
    }
    s.children.push_back(parse_statement());
    while (at("catch")) {
      const int catch_line = cur().line;
      advance();
      expect("(");
      Stmt c = compound(catch_line, true);
      Stmt decl;
      decl.kind = Stmt::Kind::kLocalDecl;
      decl.line = cur().line;
      parse_modifiers();
      if (!parse_type_into(decl.type)) fail("expected exception type");
      while (accept("|")) {
        TypeRef alt;
        if (!parse_type_into(alt)) fail("expected exception type");
        decl.type = TypeRef{};  // union: no single type
      }
      const Token& name = expect_identifier();
      decl.vars.push_back(VarDecl{name.text, name.line, name.column, 0, nullptr});
      decl.end_line = name.line;
      expect(")");
      c.children.push_back(std::move(decl));
      c.children.push_back(parse_statement());
      s.children.push_back(std::move(c));
    }
    if (accept("finally")) s.children.push_back(parse_statement());
    return s;
  }

  // Appends the statements of a switch block (`{ case ...: ... }`).
  void parse_switch_body(std::vector<Stmt>& out) {
    expect("{");
    while (!at("}")) {
      if (cur().kind == TokenKind::kEnd) fail("unterminated switch");
      if (at("case") || at("default")) {
        advance();
        int depth = 0;
        while (!(depth == 0 && (at(":") || at("->")))) {
          if (cur().kind == TokenKind::kEnd) fail("unterminated case label");
          if (at("(") || at("{") || at("[")) ++depth;
          if (at(")") || at("}") || at("]")) --depth;
          advance();
        }
        if (accept("->")) {
          if (at("{") || at("throw")) {
            out.push_back(parse_statement());
          } else {
            out.push_back(expr_stmt(parse_expression()));
            expect(";");
          }
        } else {
          expect(":");
        }
        continue;
      }
      out.push_back(parse_statement());
    }
    advance();
  }

  // --- expressions ------------------------------------------------------------

  ExprPtr make(Expr::Kind kind, const Token& at_token) {
    return std::make_unique<Expr>(kind, at_token.line, at_token.column);
  }

  ExprPtr parse_var_init() {
    if (at("{")) return parse_array_init();
    return parse_expression();
  }

  ExprPtr parse_array_init() {
    ExprPtr e = make(Expr::Kind::kArrayInit, cur());
    expect("{");
    while (!at("}")) {
      e->operands.push_back(parse_var_init());
      if (!accept(",")) break;
    }
    expect("}");
    return e;
  }

  std::vector<ExprPtr> parse_args() {
    std::vector<ExprPtr> args;
    expect("(");
    while (!at(")")) {
      args.push_back(parse_expression());
      if (!accept(",")) break;
    }
    expect(")");
    return args;
  }

  bool is_lambda_start() const {
    if (cur().is_identifier() && la(1).is("->")) return true;
    if (!at("(")) return false;
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      if (toks_[i].is("(")) ++depth;
      if (toks_[i].is(")") && --depth == 0) {
        return i + 1 < toks_.size() && toks_[i + 1].is("->");
      }
      if (toks_[i].kind == TokenKind::kEnd) return false;
    }
    return false;
  }

  ExprPtr parse_lambda() {
    ExprPtr e = make(Expr::Kind::kLambda, cur());
    if (cur().is_identifier()) {
      e->params.push_back(cur().text);
      advance();
    } else {
      advance();  // (
      int depth = 1;
      while (depth > 0) {
        if (at("(")) ++depth;
        if (at(")")) --depth;
        if (depth == 1 && cur().is_identifier() && (la(1).is(",") || la(1).is(")"))) {
          e->params.push_back(cur().text);
        }
        advance();
      }
    }
    expect("->");
    if (at("{")) {
      e->body = parse_block_body();
    } else {
      e->operands.push_back(parse_expression());
    }
    return e;
  }

  ExprPtr parse_expression() {
    if (is_lambda_start()) return parse_lambda();
    ExprPtr lhs = parse_ternary();
    std::string op;
    if (cur().kind == TokenKind::kOperator && one_of(cur().text, kAssignOps)) {
      op = cur().text;
      advance();
    } else if (at(">") && la(1).is(">=") && adjacent(cur(), la(1))) {
      op = ">>=";
      advance();
      advance();
    } else if (at(">") && la(1).is(">") && la(2).is(">=") && adjacent(cur(), la(1))) {
      op = ">>>=";
      advance();
      advance();
      advance();
    } else {
      return lhs;
    }
    auto e = std::make_unique<Expr>(Expr::Kind::kAssign, lhs->line, lhs->column);
    e->name = op;
    e->target = std::move(lhs);
    e->operands.push_back(at("{") ? parse_array_init() : parse_expression());
    return e;
  }

  ExprPtr parse_ternary() {
    ExprPtr c = parse_binary();
    if (!at("?")) return c;
    advance();
    auto e = std::make_unique<Expr>(Expr::Kind::kConditional, c->line, c->column);
    e->target = std::move(c);
    e->operands.push_back(parse_expression());
    expect(":");
    e->operands.push_back(is_lambda_start() ? parse_lambda() : parse_ternary());
    return e;
  }

  // Consumes one binary operator; `>` runs form shifts unless they end in
  // a shift-assignment.
  bool accept_binary_operator() {
    if (at(">")) {
      if (la(1).is(">=") && adjacent(cur(), la(1))) return false;
      if (la(1).is(">") && la(2).is(">=") && adjacent(cur(), la(1))) return false;
      const Token* prev = &cur();
      advance();
      while (at(">") && adjacent(*prev, cur()) && !(la(1).is(">=") && adjacent(cur(), la(1)))) {
        prev = &cur();
        advance();
      }
      return true;
    }
    if (cur().kind == TokenKind::kOperator && one_of(cur().text, kBinaryOps)) {
      advance();
      return true;
    }
    return false;
  }

  ExprPtr parse_binary() {
    ExprPtr left = parse_unary();
    while (true) {
      if (accept("instanceof")) {
        auto e = std::make_unique<Expr>(Expr::Kind::kInstanceOf, left->line, left->column);
        accept("final");
        if (!parse_type_into(e->type)) fail("expected type after instanceof");
        if (at("(")) {
          skip_balanced("(", ")");  // record pattern
        } else if (cur().is_identifier()) {
          e->name = cur().text;
          e->line = cur().line;
          e->column = cur().column;
          advance();
        }
        e->operands.push_back(std::move(left));
        left = std::move(e);
        continue;
      }
      if (!accept_binary_operator()) return left;
      auto e = std::make_unique<Expr>(Expr::Kind::kBinary, left->line, left->column);
      e->operands.push_back(std::move(left));
      e->operands.push_back(parse_unary());
      left = std::move(e);
    }
  }

  bool is_cast() {
    const std::size_t save = pos_;
    advance();  // (
    TypeRef t;
    bool ok = parse_type_into(t);
    while (ok && accept("&")) {
      TypeRef extra;
      ok = parse_type_into(extra);
    }
    ok = ok && at(")");
    if (ok) {
      advance();
      const Token& next = cur();
      if (t.primitive) {
        ok = !next.is(")") && !next.is(";") && !next.is(",") && !next.is(".");
      } else {
        ok = next.is_identifier() || next.kind == TokenKind::kNumber || next.kind == TokenKind::kString ||
             next.kind == TokenKind::kChar || next.is("(") || next.is("!") || next.is("~") ||
             next.is("this") || next.is("super") || next.is("new") || next.is("true") ||
             next.is("false") || next.is("null") || next.is("switch");
      }
    }
    pos_ = save;
    return ok;
  }

  ExprPtr parse_unary() {
    if (at("++") || at("--") || at("+") || at("-") || at("!") || at("~")) {
      ExprPtr e = make(Expr::Kind::kUnary, cur());
      advance();
      e->operands.push_back(parse_unary());
      return e;
    }
    if (at("(") && is_cast()) {
      ExprPtr e = make(Expr::Kind::kCast, cur());
      advance();
      parse_type_into(e->type);
      while (accept("&")) {
        TypeRef extra;
        parse_type_into(extra);
      }
      expect(")");
      e->operands.push_back(is_lambda_start() ? parse_lambda() : parse_unary());
      return e;
    }
    return parse_postfix(parse_primary());
  }

  ExprPtr parse_primary() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::kNumber:
      case TokenKind::kString:
      case TokenKind::kChar: {
        advance();
        ExprPtr e = make(Expr::Kind::kLiteral, t);
        e->name = t.text;
        return e;
      }
      case TokenKind::kIdentifier: {
        advance();
        if (at("(")) {
          ExprPtr e = make(Expr::Kind::kCall, t);
          e->name = t.text;
          e->operands = parse_args();
          return e;
        }
        ExprPtr e = make(Expr::Kind::kName, t);
        e->name = t.text;
        return e;
      }
      case TokenKind::kEnd:
        fail("unexpected end of input");
      default:
        break;
    }
    if (at("true") || at("false") || at("null")) {
      advance();
      ExprPtr e = make(Expr::Kind::kLiteral, t);
      e->name = t.text;
      return e;
    }
    if (at("this") || at("super")) {
      const bool is_this = at("this");
      advance();
      if (at("(")) {  // explicit constructor invocation
        ExprPtr e = make(Expr::Kind::kOther, t);
        e->name = t.text;
        e->operands = parse_args();
        return e;
      }
      return make(is_this ? Expr::Kind::kThis : Expr::Kind::kSuper, t);
    }
    if (at("new")) return parse_creator();
    if (at("(")) {
      advance();
      ExprPtr e = parse_expression();
      expect(")");
      return e;
    }
    if (at("switch")) {
      advance();
      ExprPtr e = make(Expr::Kind::kSwitch, t);
      e->target = parse_paren_expression();
      parse_switch_body(e->body);
      return e;
    }
    if (at("{")) return parse_array_init();
    if (t.kind == TokenKind::kKeyword && one_of(t.text, kPrimitives)) {
      TypeRef type;
      parse_type_into(type);
      ExprPtr e = make(Expr::Kind::kLiteral, t);
      if (accept(".")) expect("class");
      return e;
    }
    fail("unexpected token in expression");
  }

  ExprPtr parse_postfix(ExprPtr e) {
    while (true) {
      if (at(".")) {
        advance();
        if (at("<")) {
          if (!parse_type_args()) fail("bad type arguments");
        }
        const Token& t = cur();
        if (t.is_identifier()) {
          advance();
          ExprPtr next = make(at("(") ? Expr::Kind::kCall : Expr::Kind::kFieldAccess, t);
          next->name = t.text;
          next->target = std::move(e);
          if (next->kind == Expr::Kind::kCall) next->operands = parse_args();
          e = std::move(next);
        } else if (at("new")) {
          ExprPtr inner = parse_creator();
          inner->target = std::move(e);
          e = std::move(inner);
        } else if (at("this")) {
          advance();
          e = make(Expr::Kind::kThis, t);
        } else if (at("super")) {
          advance();
          e = make(Expr::Kind::kSuper, t);
        } else if (at("class")) {
          advance();
          e = make(Expr::Kind::kLiteral, t);
        } else {
          fail("unexpected token after '.'");
        }
      } else if (at("[")) {
        if (la(1).is("]")) {
          parse_dims();
          expect(".");
          expect("class");
          e = make(Expr::Kind::kLiteral, cur());
          continue;
        }
        ExprPtr access = std::make_unique<Expr>(Expr::Kind::kArrayAccess, e->line, e->column);
        advance();
        access->target = std::move(e);
        access->operands.push_back(parse_expression());
        expect("]");
        e = std::move(access);
      } else if (at("++") || at("--")) {
        ExprPtr u = std::make_unique<Expr>(Expr::Kind::kUnary, e->line, e->column);
        advance();
        u->operands.push_back(std::move(e));
        e = std::move(u);
      } else if (at("::")) {
        ExprPtr ref = std::make_unique<Expr>(Expr::Kind::kMethodRef, e->line, e->column);
        advance();
        if (at("<")) parse_type_args();
        ref->name = cur().text;
        advance();
        ref->target = std::move(e);
        e = std::move(ref);
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_creator() {
    const Token& t = cur();
    expect("new");
    if (at("<")) parse_type_args();
    TypeRef type;
    while (at("@")) skip_annotation();
    if (cur().kind == TokenKind::kKeyword && one_of(cur().text, kPrimitives)) {
      type.name = type.qualified = cur().text;
      type.primitive = true;
      advance();
    } else {
      type.name = type.qualified = expect_identifier().text;
      if (at("<") && !parse_type_args()) fail("bad type arguments");
      while (at(".") && la(1).is_identifier()) {
        advance();
        type.name = cur().text;
        type.qualified += "." + cur().text;
        advance();
        if (at("<") && !parse_type_args()) fail("bad type arguments");
      }
    }
    while (at("@")) skip_annotation();
    if (at("[")) {
      ExprPtr e = make(Expr::Kind::kOther, t);
      while (at("[")) {
        advance();
        if (!at("]")) e->operands.push_back(parse_expression());
        expect("]");
      }
      if (at("{")) e->operands.push_back(parse_array_init());
      return e;
    }
    ExprPtr e = make(Expr::Kind::kNew, t);
    e->type = std::move(type);
    e->operands = parse_args();
    if (at("{")) skip_balanced("{", "}");  // anonymous class body: no entities
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int last_close_line_ = 0;
};

}  // namespace

CompilationUnit parse_compilation_unit(std::string_view source) {
  return Parser(tokenize(source)).parse_unit();
}

}  // namespace renas::java
