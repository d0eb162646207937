#include "haltlab/programs.hpp"

namespace haltlab {
namespace programs {

Decl skip_decl() {
  Decl d;
  d.name = "Skip";
  d.kind = DeclKind::Procedure;
  d.body.push_back(skip_stmt());
  return d;
}

Decl loop_decl() {
  Decl d;
  d.name = "Loop";
  d.kind = DeclKind::Procedure;
  std::vector<Stmt> body;
  body.push_back(skip_stmt());
  d.body.push_back(while_stmt(bool_lit(true), std::move(body)));
  return d;
}

Decl build_s(const std::string& h_name, const std::string& loop_name) {
  if (h_name.empty() || loop_name.empty())
    throw NameError("halt-test and loop names must be nonempty");
  Decl d;
  d.name = "S";
  d.kind = DeclKind::Procedure;
  std::vector<Stmt> then_body;
  then_body.push_back(call_stmt(loop_name, {}));
  std::vector<Expr> args;
  args.push_back(code_lit("S"));
  d.body.push_back(if_stmt(enquiry_call(h_name, std::move(args)), std::move(then_body)));
  return d;
}

Decl build_s1() {
  Decl d = build_s("H1", "Loop");
  d.name = "S1";
  // the self-reference names S1, not S
  auto& guard = *std::get<IfStmt>(d.body[0].node).arms[0].guard;
  std::get<CodeLit>(std::get<EnquiryCall>(guard.node).args[0]->node).decl_name = "S1";
  return d;
}

ModuleAst l0_module() {
  ModuleAst m;
  m.source_name = "<l0>";
  m.decls.push_back(skip_decl());
  m.decls.push_back(loop_decl());
  m.entry = "Skip";
  return m;
}

ModuleAst l1_module() {
  ModuleAst m;
  m.source_name = "<l1>";
  m.decls.push_back(skip_decl());
  m.decls.push_back(loop_decl());
  m.decls.push_back(build_s("H", "Loop"));
  m.entry = "S";
  return m;
}

ModuleAst l2_module() {
  ModuleAst m;
  m.source_name = "<l2>";
  m.decls.push_back(skip_decl());
  m.decls.push_back(loop_decl());
  m.decls.push_back(build_s1());
  m.entry = "S1";
  return m;
}

}  // namespace programs
}  // namespace haltlab
