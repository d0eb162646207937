#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "haltlab/errors.hpp"

namespace haltlab {

// Abstract syntax of the guarded-command language. Programs are modules of
// named declarations; a declaration is either a procedure (invoked as a
// statement) or an enquiry (invoked in expressions, returns a value, and is
// side-effect free by construction: all variables are frame-local).

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class BinOp : std::uint8_t {
  Add,
  Sub,
  Mul,
  Mod,
  Eq,
  Ne,
  Lt,
  Le,
  And,
  Or,
};

const char* bin_op_text(BinOp op);

struct IntLit {
  std::uint64_t value = 0;
};

struct BoolLit {
  bool value = false;
};

struct VarRef {
  std::string name;
};

struct BinaryExpr {
  BinOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};

struct NotExpr {
  ExprPtr operand;
};

/// Invocation of an enquiry (user-declared or intrinsic) in an expression.
struct EnquiryCall {
  std::string callee;
  std::vector<ExprPtr> args;
};

/// code(Name): evaluates to the encoding of declaration Name.
struct CodeLit {
  std::string decl_name;
};

struct Expr {
  std::variant<IntLit, BoolLit, VarRef, BinaryExpr, NotExpr, EnquiryCall, CodeLit> node;
  SourceLoc loc;
};

struct Stmt;

struct SkipStmt {};

struct AssignStmt {
  std::string target;
  ExprPtr value;
};

struct IfStmt {
  struct Arm {
    ExprPtr guard;
    std::vector<Stmt> body;
  };
  std::vector<Arm> arms;  // first arm is `if`, the rest `elseif`
  std::optional<std::vector<Stmt>> else_body;
};

struct WhileStmt {
  ExprPtr guard;
  std::vector<Stmt> body;
};

struct CallStmt {
  std::string callee;
  std::vector<ExprPtr> args;
};

struct ReturnStmt {
  ExprPtr value;
};

/// error("message"): stops the run and renders the three-line report.
struct ErrorStmt {
  std::string message;
};

struct Stmt {
  std::variant<SkipStmt, AssignStmt, IfStmt, WhileStmt, CallStmt, ReturnStmt, ErrorStmt> node;
  SourceLoc loc;
};

enum class DeclKind : std::uint8_t { Procedure, Enquiry };

struct Decl {
  std::string name;
  DeclKind kind = DeclKind::Procedure;
  std::vector<std::string> params;
  std::vector<Stmt> body;
  SourceLoc loc;
};

struct ModuleAst {
  std::vector<Decl> decls;
  std::optional<std::string> entry;
  std::string source_name = "<memory>";

  const Decl* find(const std::string& name) const {
    for (const auto& d : decls)
      if (d.name == name) return &d;
    return nullptr;
  }
};

// Structural equality, ignoring source locations.
bool equal(const Expr& a, const Expr& b);
bool equal(const Stmt& a, const Stmt& b);
bool equal(const Decl& a, const Decl& b);
bool equal(const ModuleAst& a, const ModuleAst& b);

Expr clone(const Expr& e);
Stmt clone(const Stmt& s);
Decl clone(const Decl& d);
ModuleAst clone(const ModuleAst& m);

// Convenience builders used by program constructions and tests.
ExprPtr make_expr(Expr e);
Expr int_lit(std::uint64_t v);
Expr bool_lit(bool v);
Expr var_ref(std::string name);
Expr binary(BinOp op, Expr lhs, Expr rhs);
Expr not_of(Expr e);
Expr enquiry_call(std::string callee, std::vector<Expr> args);
Expr code_lit(std::string decl_name);
Stmt skip_stmt();
Stmt assign_stmt(std::string target, Expr value);
Stmt call_stmt(std::string callee, std::vector<Expr> args);
Stmt return_stmt(Expr value);
Stmt error_stmt(std::string message);
Stmt while_stmt(Expr guard, std::vector<Stmt> body);
Stmt if_stmt(Expr guard, std::vector<Stmt> then_body);

/// True when `name` occurs anywhere in the declaration: as its name, a
/// parameter, a variable, a call target, or a code literal.
bool occurs_in(const Decl& d, const std::string& name);

}  // namespace haltlab
