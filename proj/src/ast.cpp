#include "haltlab/ast.hpp"

namespace haltlab {

const char* bin_op_text(BinOp op) {
  switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Mod: return "mod";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "<>";
    case BinOp::Lt: return "<";
    case BinOp::Le: return "<=";
    case BinOp::And: return "and";
    case BinOp::Or: return "or";
  }
  return "?";
}

namespace {

bool equal_bodies(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

bool equal_args(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!equal(*a[i], *b[i])) return false;
  return true;
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, IntLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          return equal(*x.operand, *y.operand);
        } else if constexpr (std::is_same_v<T, EnquiryCall>) {
          return x.callee == y.callee && equal_args(x.args, y.args);
        } else {
          static_assert(std::is_same_v<T, CodeLit>);
          return x.decl_name == y.decl_name;
        }
      },
      a.node);
}

bool equal(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, SkipStmt>) {
          return true;
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          return x.target == y.target && equal(*x.value, *y.value);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          if (x.arms.size() != y.arms.size()) return false;
          for (size_t i = 0; i < x.arms.size(); ++i) {
            if (!equal(*x.arms[i].guard, *y.arms[i].guard)) return false;
            if (!equal_bodies(x.arms[i].body, y.arms[i].body)) return false;
          }
          if (x.else_body.has_value() != y.else_body.has_value()) return false;
          if (x.else_body && !equal_bodies(*x.else_body, *y.else_body)) return false;
          return true;
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return equal(*x.guard, *y.guard) && equal_bodies(x.body, y.body);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          return x.callee == y.callee && equal_args(x.args, y.args);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          return equal(*x.value, *y.value);
        } else {
          static_assert(std::is_same_v<T, ErrorStmt>);
          return x.message == y.message;
        }
      },
      a.node);
}

bool equal(const Decl& a, const Decl& b) {
  return a.name == b.name && a.kind == b.kind && a.params == b.params &&
         equal_bodies(a.body, b.body);
}

// entry and source_name are harness metadata, not program text
bool equal(const ModuleAst& a, const ModuleAst& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (size_t i = 0; i < a.decls.size(); ++i)
    if (!equal(a.decls[i], b.decls[i])) return false;
  return true;
}

namespace {

std::vector<ExprPtr> clone_args(const std::vector<ExprPtr>& args) {
  std::vector<ExprPtr> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(std::make_unique<Expr>(clone(*a)));
  return out;
}

std::vector<Stmt> clone_body(const std::vector<Stmt>& body) {
  std::vector<Stmt> out;
  out.reserve(body.size());
  for (const auto& s : body) out.push_back(clone(s));
  return out;
}

}  // namespace

Expr clone(const Expr& e) {
  Expr out;
  out.loc = e.loc;
  out.node = std::visit(
      [&](const auto& x) -> decltype(out.node) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BinaryExpr>) {
          return BinaryExpr{x.op, std::make_unique<Expr>(clone(*x.lhs)),
                            std::make_unique<Expr>(clone(*x.rhs))};
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          return NotExpr{std::make_unique<Expr>(clone(*x.operand))};
        } else if constexpr (std::is_same_v<T, EnquiryCall>) {
          return EnquiryCall{x.callee, clone_args(x.args)};
        } else {
          return x;
        }
      },
      e.node);
  return out;
}

Stmt clone(const Stmt& s) {
  Stmt out;
  out.loc = s.loc;
  out.node = std::visit(
      [&](const auto& x) -> decltype(out.node) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          return AssignStmt{x.target, std::make_unique<Expr>(clone(*x.value))};
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          IfStmt y;
          for (const auto& arm : x.arms)
            y.arms.push_back(
                {std::make_unique<Expr>(clone(*arm.guard)), clone_body(arm.body)});
          if (x.else_body) y.else_body = clone_body(*x.else_body);
          return y;
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return WhileStmt{std::make_unique<Expr>(clone(*x.guard)), clone_body(x.body)};
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          return CallStmt{x.callee, clone_args(x.args)};
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          return ReturnStmt{std::make_unique<Expr>(clone(*x.value))};
        } else {
          return x;
        }
      },
      s.node);
  return out;
}

Decl clone(const Decl& d) {
  Decl out;
  out.name = d.name;
  out.kind = d.kind;
  out.params = d.params;
  out.body = clone_body(d.body);
  out.loc = d.loc;
  return out;
}

ModuleAst clone(const ModuleAst& m) {
  ModuleAst out;
  out.entry = m.entry;
  out.source_name = m.source_name;
  out.decls.reserve(m.decls.size());
  for (const auto& d : m.decls) out.decls.push_back(clone(d));
  return out;
}

ExprPtr make_expr(Expr e) { return std::make_unique<Expr>(std::move(e)); }

Expr int_lit(std::uint64_t v) { return Expr{IntLit{v}, {}}; }
Expr bool_lit(bool v) { return Expr{BoolLit{v}, {}}; }
Expr var_ref(std::string name) { return Expr{VarRef{std::move(name)}, {}}; }

Expr binary(BinOp op, Expr lhs, Expr rhs) {
  return Expr{BinaryExpr{op, make_expr(std::move(lhs)), make_expr(std::move(rhs))}, {}};
}

Expr not_of(Expr e) { return Expr{NotExpr{make_expr(std::move(e))}, {}}; }

Expr enquiry_call(std::string callee, std::vector<Expr> args) {
  EnquiryCall c{std::move(callee), {}};
  for (auto& a : args) c.args.push_back(make_expr(std::move(a)));
  return Expr{std::move(c), {}};
}

Expr code_lit(std::string decl_name) { return Expr{CodeLit{std::move(decl_name)}, {}}; }

Stmt skip_stmt() { return Stmt{SkipStmt{}, {}}; }

Stmt assign_stmt(std::string target, Expr value) {
  return Stmt{AssignStmt{std::move(target), make_expr(std::move(value))}, {}};
}

Stmt call_stmt(std::string callee, std::vector<Expr> args) {
  CallStmt c{std::move(callee), {}};
  for (auto& a : args) c.args.push_back(make_expr(std::move(a)));
  return Stmt{std::move(c), {}};
}

Stmt return_stmt(Expr value) {
  return Stmt{ReturnStmt{make_expr(std::move(value))}, {}};
}

Stmt error_stmt(std::string message) { return Stmt{ErrorStmt{std::move(message)}, {}}; }

Stmt while_stmt(Expr guard, std::vector<Stmt> body) {
  return Stmt{WhileStmt{make_expr(std::move(guard)), std::move(body)}, {}};
}

Stmt if_stmt(Expr guard, std::vector<Stmt> then_body) {
  IfStmt s;
  s.arms.push_back({make_expr(std::move(guard)), std::move(then_body)});
  return Stmt{std::move(s), {}};
}

namespace {

bool occurs_in_expr(const Expr& e, const std::string& name);

bool occurs_in_body(const std::vector<Stmt>& body, const std::string& name);

bool occurs_in_stmt(const Stmt& s, const std::string& name) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SkipStmt> || std::is_same_v<T, ErrorStmt>) {
          return false;
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          return x.target == name || occurs_in_expr(*x.value, name);
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          for (const auto& arm : x.arms)
            if (occurs_in_expr(*arm.guard, name) || occurs_in_body(arm.body, name))
              return true;
          return x.else_body && occurs_in_body(*x.else_body, name);
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          return occurs_in_expr(*x.guard, name) || occurs_in_body(x.body, name);
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          if (x.callee == name) return true;
          for (const auto& a : x.args)
            if (occurs_in_expr(*a, name)) return true;
          return false;
        } else {
          static_assert(std::is_same_v<T, ReturnStmt>);
          return occurs_in_expr(*x.value, name);
        }
      },
      s.node);
}

bool occurs_in_body(const std::vector<Stmt>& body, const std::string& name) {
  for (const auto& s : body)
    if (occurs_in_stmt(s, name)) return true;
  return false;
}

bool occurs_in_expr(const Expr& e, const std::string& name) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VarRef>) {
          return x.name == name;
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          return occurs_in_expr(*x.lhs, name) || occurs_in_expr(*x.rhs, name);
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          return occurs_in_expr(*x.operand, name);
        } else if constexpr (std::is_same_v<T, EnquiryCall>) {
          if (x.callee == name) return true;
          for (const auto& a : x.args)
            if (occurs_in_expr(*a, name)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, CodeLit>) {
          return x.decl_name == name;
        } else {
          return false;
        }
      },
      e.node);
}

}  // namespace

bool occurs_in(const Decl& d, const std::string& name) {
  if (d.name == name) return true;
  for (const auto& p : d.params)
    if (p == name) return true;
  return occurs_in_body(d.body, name);
}

}  // namespace haltlab
