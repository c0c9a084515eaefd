#pragma once

#include <memory>
#include <string>
#include <vector>

// Reduced Java syntax tree: declarations in full, bodies only as far as
// names, invocations, assignments and local declarations are concerned.

namespace renas::java {

struct TypeRef {
  std::string name;       // last segment of the raw type, "" if absent
  std::string qualified;  // dotted name as written, without type arguments
  bool primitive = false;
  int dims = 0;

  bool empty() const { return name.empty(); }
};

struct Stmt;
struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind {
    kName,          // name
    kFieldAccess,   // target.name
    kCall,          // [target.]name(operands)
    kNew,           // new type(operands)
    kLiteral,       // name holds the literal text where known
    kThis,
    kSuper,
    kBinary,        // operands[0] op operands[1]
    kAssign,        // target op= operands[0]
    kConditional,   // target ? operands[0] : operands[1]
    kCast,          // (type) operands[0]
    kUnary,         // operands[0]
    kArrayAccess,   // target[operands[0]]
    kLambda,        // params -> operands[0] | body
    kMethodRef,     // target::name
    kArrayInit,     // {operands}
    kInstanceOf,    // operands[0] instanceof type [name]
    kSwitch,        // switch (target) { body }
    kOther,         // operands are evaluated, value is opaque; name "this"/"super"
                    // marks an explicit constructor invocation
  };

  Kind kind = Kind::kOther;
  std::string name;
  int line = 0;
  int column = 0;
  ExprPtr target;
  std::vector<ExprPtr> operands;
  TypeRef type;
  std::vector<std::string> params;
  std::vector<Stmt> body;

  Expr(Kind k, int l, int c) : kind(k), line(l), column(c) {}
};

struct VarDecl {
  std::string name;
  int line = 0;
  int column = 0;
  int dims = 0;
  ExprPtr init;
};

struct Stmt {
  enum class Kind {
    kBlock,      // { children }
    kLocalDecl,  // type vars
    kExpr,       // expr
    kCompound,   // control statement; children in source order
  };

  Kind kind = Kind::kCompound;
  int line = 0;
  int end_line = 0;
  bool scoped = false;
  TypeRef type;
  std::vector<VarDecl> vars;
  ExprPtr expr;
  std::vector<Stmt> children;
};

struct Param {
  TypeRef type;
  std::string name;
  int line = 0;
  int column = 0;
  bool varargs = false;
};

struct MethodDecl {
  std::string name;
  int begin_line = 0;
  int line = 0;
  int column = 0;
  int end_line = 0;
  bool constructor = false;
  TypeRef return_type;
  std::vector<std::string> type_params;
  std::vector<Param> params;
  std::vector<Stmt> body;
};

struct FieldDecl {
  TypeRef type;
  std::string name;
  int begin_line = 0;
  int line = 0;
  int column = 0;
  int end_line = 0;
  bool enum_constant = false;
  ExprPtr init;
  std::vector<ExprPtr> constant_args;
};

struct TypeDecl {
  enum class Kind { kClass, kInterface, kEnum, kRecord, kAnnotation };

  Kind kind = Kind::kClass;
  std::string name;
  int begin_line = 0;
  int line = 0;
  int column = 0;
  int end_line = 0;
  std::vector<std::string> type_params;
  std::vector<TypeRef> extends;
  std::vector<TypeRef> implements;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  std::vector<TypeDecl> nested;
  std::vector<std::vector<Stmt>> initializers;
};

struct CompilationUnit {
  std::string package;
  std::vector<std::string> imports;  // "a.b.C" or "a.b.*"; static imports omitted
  std::vector<TypeDecl> types;
};

// Throws Error(kFormat) with a line number on syntax it cannot follow.
CompilationUnit parse_compilation_unit(std::string_view source);

}  // namespace renas::java
