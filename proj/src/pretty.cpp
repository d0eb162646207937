#include "haltlab/pretty.hpp"

namespace haltlab {

namespace {

// Binding strength, loosest first. Comparisons are non-chaining, so a
// comparison operand that is itself a comparison always gets parentheses.
enum Prec : int {
  PREC_OR = 1,
  PREC_AND = 2,
  PREC_NOT = 3,
  PREC_CMP = 4,
  PREC_ADD = 5,
  PREC_MUL = 6,
  PREC_PRIMARY = 7,
};

int op_prec(BinOp op) {
  switch (op) {
    case BinOp::Or: return PREC_OR;
    case BinOp::And: return PREC_AND;
    case BinOp::Eq:
    case BinOp::Ne:
    case BinOp::Lt:
    case BinOp::Le: return PREC_CMP;
    case BinOp::Add:
    case BinOp::Sub: return PREC_ADD;
    case BinOp::Mul:
    case BinOp::Mod: return PREC_MUL;
  }
  return PREC_PRIMARY;
}

void render_expr(std::string& out, const Expr& e, int min_prec);

void render_args(std::string& out, const std::vector<ExprPtr>& args) {
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    render_expr(out, *args[i], PREC_OR);
  }
  out += ')';
}

void render_expr(std::string& out, const Expr& e, int min_prec) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, IntLit>) {
          out += std::to_string(x.value);
        } else if constexpr (std::is_same_v<T, BoolLit>) {
          out += x.value ? "true" : "false";
        } else if constexpr (std::is_same_v<T, VarRef>) {
          out += x.name;
        } else if constexpr (std::is_same_v<T, BinaryExpr>) {
          int p = op_prec(x.op);
          bool parens = p < min_prec;
          if (parens) out += '(';
          // left-associative chains render flat; comparisons need exact
          // operands, so a nested comparison is pushed to parentheses
          int lhs_min = (p == PREC_CMP) ? p + 1 : p;
          int rhs_min = p + 1;
          render_expr(out, *x.lhs, lhs_min);
          out += ' ';
          out += bin_op_text(x.op);
          out += ' ';
          render_expr(out, *x.rhs, rhs_min);
          if (parens) out += ')';
        } else if constexpr (std::is_same_v<T, NotExpr>) {
          bool parens = PREC_NOT < min_prec;
          if (parens) out += '(';
          out += "not ";
          render_expr(out, *x.operand, PREC_NOT);
          if (parens) out += ')';
        } else if constexpr (std::is_same_v<T, EnquiryCall>) {
          out += x.callee;
          render_args(out, x.args);
        } else {
          static_assert(std::is_same_v<T, CodeLit>);
          out += "code(";
          out += x.decl_name;
          out += ')';
        }
      },
      e.node);
}

void indent(std::string& out, int depth) { out.append(static_cast<size_t>(depth) * 2, ' '); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"') out += "\\\"";
    else if (c == '\\') out += "\\\\";
    else if (c == '\n') out += "\\n";
    else out.push_back(c);
  }
  return out;
}

void render_body(std::string& out, const std::vector<Stmt>& body, int depth);

void render_stmt(std::string& out, const Stmt& s, int depth) {
  indent(out, depth);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SkipStmt>) {
          out += "skip\n";
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          out += x.target;
          out += " := ";
          render_expr(out, *x.value, PREC_OR);
          out += '\n';
        } else if constexpr (std::is_same_v<T, IfStmt>) {
          for (size_t i = 0; i < x.arms.size(); ++i) {
            if (i) indent(out, depth);
            out += i == 0 ? "if " : "elseif ";
            render_expr(out, *x.arms[i].guard, PREC_OR);
            out += " then\n";
            render_body(out, x.arms[i].body, depth + 1);
          }
          if (x.else_body) {
            indent(out, depth);
            out += "else\n";
            render_body(out, *x.else_body, depth + 1);
          }
          indent(out, depth);
          out += "end\n";
        } else if constexpr (std::is_same_v<T, WhileStmt>) {
          out += "while ";
          render_expr(out, *x.guard, PREC_OR);
          out += " do\n";
          render_body(out, x.body, depth + 1);
          indent(out, depth);
          out += "end\n";
        } else if constexpr (std::is_same_v<T, CallStmt>) {
          out += x.callee;
          render_args(out, x.args);
          out += '\n';
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          out += "return(";
          render_expr(out, *x.value, PREC_OR);
          out += ")\n";
        } else {
          static_assert(std::is_same_v<T, ErrorStmt>);
          out += "error(\"";
          out += escape(x.message);
          out += "\")\n";
        }
      },
      s.node);
}

void render_body(std::string& out, const std::vector<Stmt>& body, int depth) {
  for (const auto& s : body) render_stmt(out, s, depth);
}

void render_decl(std::string& out, const Decl& d) {
  out += d.kind == DeclKind::Procedure ? "procedure " : "enquiry ";
  out += d.name;
  if (!d.params.empty()) {
    out += '(';
    for (size_t i = 0; i < d.params.size(); ++i) {
      if (i) out += ", ";
      out += d.params[i];
    }
    out += ')';
  }
  out += '\n';
  render_body(out, d.body, 1);
  out += "end\n";
}

}  // namespace

std::string pretty(const ModuleAst& m) {
  std::string out;
  for (size_t i = 0; i < m.decls.size(); ++i) {
    if (i) out += '\n';
    render_decl(out, m.decls[i]);
  }
  return out;
}

std::string pretty(const Decl& d) {
  std::string out;
  render_decl(out, d);
  return out;
}

std::string pretty(const Expr& e) {
  std::string out;
  render_expr(out, e, PREC_OR);
  return out;
}

}  // namespace haltlab
