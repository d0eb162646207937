#include "haltlab/check.hpp"

#include <algorithm>
#include <set>

namespace haltlab {

VarType join_types(VarType a, VarType b) {
  if (a == VarType::Unknown) return b;
  if (b == VarType::Unknown) return a;
  if (a == b) return a;
  return VarType::Mixed;
}

namespace {

Intrinsic intrinsic_by_name(const std::string& name) {
  if (name == "H") return Intrinsic::H;
  if (name == "H1") return Intrinsic::H1;
  if (name == "InS1") return Intrinsic::InS1;
  return Intrinsic::None;
}

size_t intrinsic_arity(Intrinsic i) { return i == Intrinsic::InS1 ? 0 : 1; }

}  // namespace

namespace detail {

struct ModuleChecker {
  std::shared_ptr<const ModuleAst> owned;
  const ModuleAst& m;
  CheckedModule out;
  int next_id = 0;

  explicit ModuleChecker(std::shared_ptr<const ModuleAst> mod, int width_bits)
      : owned(std::move(mod)), m(*owned) {
    out.module_ = owned;
    out.width_bits_ = width_bits;
  }

  // ---- name resolution -------------------------------------------------

  CalleeRef resolve_callee(const std::string& name, size_t nargs, const Decl& site_decl,
                           bool as_statement) {
    const Decl* d = m.find(name);
    CalleeRef ref;
    if (d) {
      ref.decl = d;
      ref.kind = d->kind;
      ref.arity = d->params.size();
    } else {
      Intrinsic intr = intrinsic_by_name(name);
      if (intr == Intrinsic::None)
        throw NameError("unresolved name '" + name + "' in '" + site_decl.name + "'");
      ref.intr = intr;
      ref.kind = DeclKind::Enquiry;  // every intrinsic is an enquiry
      ref.arity = intrinsic_arity(intr);
    }
    if (as_statement && ref.kind != DeclKind::Procedure)
      throw KindError("enquiry '" + name + "' invoked as a statement in '" +
                      site_decl.name + "'");
    if (!as_statement && ref.kind != DeclKind::Enquiry)
      throw KindError("procedure '" + name + "' used in an expression in '" +
                      site_decl.name + "'");
    if (nargs != ref.arity)
      throw KindError("'" + name + "' expects " + std::to_string(ref.arity) +
                      " argument(s), got " + std::to_string(nargs));
    return ref;
  }

  bool is_decl_or_intrinsic(const std::string& name) const {
    return m.find(name) != nullptr || intrinsic_by_name(name) != Intrinsic::None;
  }

  // ---- pass 1: ids, resolution, variable collection --------------------

  void collect_expr(const Expr& e, const Decl& d, std::set<std::string>& vars) {
    out.node_ids_[&e] = next_id++;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, VarRef>) {
            if (is_decl_or_intrinsic(x.name))
              throw KindError("declaration name '" + x.name + "' used as a variable in '" +
                              d.name + "'");
            vars.insert(x.name);
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            collect_expr(*x.lhs, d, vars);
            collect_expr(*x.rhs, d, vars);
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            collect_expr(*x.operand, d, vars);
          } else if constexpr (std::is_same_v<T, EnquiryCall>) {
            out.callees_[&x] = resolve_callee(x.callee, x.args.size(), d, false);
            for (const auto& a : x.args) collect_expr(*a, d, vars);
          } else if constexpr (std::is_same_v<T, CodeLit>) {
            const Decl* target = m.find(x.decl_name);
            if (!target)
              throw NameError("code(" + x.decl_name + ") does not name a declaration in '" +
                              d.name + "'");
            if (!out.codes_.count(x.decl_name)) out.codes_[x.decl_name] = encode(*target);
          }
        },
        e.node);
  }

  void collect_body(const std::vector<Stmt>& body, const Decl& d, std::set<std::string>& vars) {
    out.node_ids_[&body] = next_id++;
    for (const auto& s : body) collect_stmt(s, d, vars);
  }

  void collect_stmt(const Stmt& s, const Decl& d, std::set<std::string>& vars) {
    out.node_ids_[&s] = next_id++;
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, AssignStmt>) {
            if (is_decl_or_intrinsic(x.target))
              throw KindError("cannot assign to declaration name '" + x.target + "' in '" +
                              d.name + "'");
            vars.insert(x.target);
            collect_expr(*x.value, d, vars);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            for (const auto& arm : x.arms) {
              collect_expr(*arm.guard, d, vars);
              collect_body(arm.body, d, vars);
            }
            if (x.else_body) collect_body(*x.else_body, d, vars);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            collect_expr(*x.guard, d, vars);
            collect_body(x.body, d, vars);
          } else if constexpr (std::is_same_v<T, CallStmt>) {
            out.callees_[&x] = resolve_callee(x.callee, x.args.size(), d, true);
            for (const auto& a : x.args) collect_expr(*a, d, vars);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            if (d.kind != DeclKind::Enquiry)
              throw KindError("return outside an enquiry, in procedure '" + d.name + "'");
            collect_expr(*x.value, d, vars);
          }
        },
        s.node);
  }

  // ---- return-path analysis --------------------------------------------

  // True when every terminating path through the list ends in return or
  // error. A while never guarantees it (the guard may fail immediately).
  static bool guarantees_exit(const std::vector<Stmt>& body) {
    for (const auto& s : body) {
      bool exits = std::visit(
          [](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ReturnStmt> || std::is_same_v<T, ErrorStmt>) {
              return true;
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              if (!x.else_body) return false;
              for (const auto& arm : x.arms)
                if (!guarantees_exit(arm.body)) return false;
              return guarantees_exit(*x.else_body);
            } else {
              return false;
            }
          },
          s.node);
      if (exits) return true;
    }
    return false;
  }

  // ---- definite assignment ----------------------------------------------

  void da_expr(const Expr& e, const Decl& d, const std::set<std::string>& assigned) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, VarRef>) {
            if (!assigned.count(x.name))
              throw NameError("variable '" + x.name + "' may be read before assignment in '" +
                              d.name + "'");
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            da_expr(*x.lhs, d, assigned);
            da_expr(*x.rhs, d, assigned);
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            da_expr(*x.operand, d, assigned);
          } else if constexpr (std::is_same_v<T, EnquiryCall>) {
            for (const auto& a : x.args) da_expr(*a, d, assigned);
          }
        },
        e.node);
  }

  // Returns the set assigned on fall-through.
  std::set<std::string> da_body(const std::vector<Stmt>& body, const Decl& d,
                                std::set<std::string> assigned) {
    for (const auto& s : body) {
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AssignStmt>) {
              da_expr(*x.value, d, assigned);
              assigned.insert(x.target);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              for (const auto& arm : x.arms) da_expr(*arm.guard, d, assigned);
              std::vector<std::set<std::string>> exits;
              for (const auto& arm : x.arms) exits.push_back(da_body(arm.body, d, assigned));
              if (x.else_body) {
                exits.push_back(da_body(*x.else_body, d, assigned));
                // all branches taken: keep what every branch guarantees
                std::set<std::string> meet = exits[0];
                for (size_t i = 1; i < exits.size(); ++i) {
                  std::set<std::string> tmp;
                  std::set_intersection(meet.begin(), meet.end(), exits[i].begin(),
                                        exits[i].end(), std::inserter(tmp, tmp.begin()));
                  meet = std::move(tmp);
                }
                assigned = std::move(meet);
              }
              // without else the statement may be a no-op; keep the entry set
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
              da_expr(*x.guard, d, assigned);
              da_body(x.body, d, assigned);  // body checked, loop may run zero times
            } else if constexpr (std::is_same_v<T, CallStmt>) {
              for (const auto& a : x.args) da_expr(*a, d, assigned);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
              da_expr(*x.value, d, assigned);
            }
          },
          s.node);
    }
    return assigned;
  }

  // ---- type inference ----------------------------------------------------

  std::map<std::string, VarType> return_types;  // per enquiry
  bool types_changed = false;

  VarType expr_type(const Expr& e, DeclInfo& di) {
    return std::visit(
        [&](const auto& x) -> VarType {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, IntLit>) {
            return VarType::Int;
          } else if constexpr (std::is_same_v<T, BoolLit>) {
            return VarType::Bool;
          } else if constexpr (std::is_same_v<T, VarRef>) {
            return di.slot_type[static_cast<size_t>(di.slot_of.at(x.name))];
          } else if constexpr (std::is_same_v<T, BinaryExpr>) {
            VarType l = expr_type(*x.lhs, di);
            VarType r = expr_type(*x.rhs, di);
            switch (x.op) {
              case BinOp::Add:
              case BinOp::Sub:
              case BinOp::Mul:
              case BinOp::Mod:
                require_kind(l, VarType::Int, "integer", bin_op_text(x.op), di);
                require_kind(r, VarType::Int, "integer", bin_op_text(x.op), di);
                return VarType::Int;
              case BinOp::Lt:
              case BinOp::Le:
                require_kind(l, VarType::Int, "integer", bin_op_text(x.op), di);
                require_kind(r, VarType::Int, "integer", bin_op_text(x.op), di);
                return VarType::Bool;
              case BinOp::Eq:
              case BinOp::Ne:
                if (l != VarType::Unknown && r != VarType::Unknown && l != VarType::Mixed &&
                    r != VarType::Mixed && l != r)
                  throw KindError(std::string("operands of '") + bin_op_text(x.op) +
                                  "' have different kinds in '" + di.decl->name + "'");
                return VarType::Bool;
              case BinOp::And:
              case BinOp::Or:
                require_kind(l, VarType::Bool, "boolean", bin_op_text(x.op), di);
                require_kind(r, VarType::Bool, "boolean", bin_op_text(x.op), di);
                return VarType::Bool;
            }
            return VarType::Mixed;
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            require_kind(expr_type(*x.operand, di), VarType::Bool, "boolean", "not", di);
            return VarType::Bool;
          } else if constexpr (std::is_same_v<T, EnquiryCall>) {
            const CalleeRef& ref = out.callees_.at(&x);
            for (const auto& a : x.args) expr_type(*a, di);
            if (ref.intr != Intrinsic::None) return VarType::Bool;
            auto it = return_types.find(ref.decl->name);
            return it == return_types.end() ? VarType::Unknown : it->second;
          } else {
            static_assert(std::is_same_v<T, CodeLit>);
            return VarType::Code;
          }
        },
        e.node);
  }

  void require_kind(VarType t, VarType want, const char* what, const char* op, DeclInfo& di) {
    if (t == VarType::Unknown || t == VarType::Mixed || t == want) return;
    throw KindError(std::string("operand of '") + op + "' must be " + what + " in '" +
                    di.decl->name + "'");
  }

  void type_var(DeclInfo& di, const std::string& name, VarType t) {
    size_t slot = static_cast<size_t>(di.slot_of.at(name));
    VarType joined = join_types(di.slot_type[slot], t);
    if (joined != di.slot_type[slot]) {
      di.slot_type[slot] = joined;
      types_changed = true;
    }
  }

  void type_body(const std::vector<Stmt>& body, DeclInfo& di) {
    for (const auto& s : body) {
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AssignStmt>) {
              type_var(di, x.target, expr_type(*x.value, di));
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              for (const auto& arm : x.arms) {
                require_guard(expr_type(*arm.guard, di), di);
                type_body(arm.body, di);
              }
              if (x.else_body) type_body(*x.else_body, di);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
              require_guard(expr_type(*x.guard, di), di);
              type_body(x.body, di);
            } else if constexpr (std::is_same_v<T, CallStmt>) {
              for (const auto& a : x.args) expr_type(*a, di);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
              VarType t = expr_type(*x.value, di);
              VarType joined = join_types(return_types[di.decl->name], t);
              if (joined != return_types[di.decl->name]) {
                return_types[di.decl->name] = joined;
                types_changed = true;
              }
            }
          },
          s.node);
    }
  }

  void require_guard(VarType t, DeclInfo& di) {
    if (t == VarType::Int || t == VarType::Code)
      throw KindError("guard must be boolean in '" + di.decl->name + "'");
  }

  // ---- control-state counting ---------------------------------------------

  static std::uint64_t control_count(const std::vector<Stmt>& body) {
    std::uint64_t n = 0;
    for (const auto& s : body) {
      n += std::visit(
          [](const auto& x) -> std::uint64_t {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, IfStmt>) {
              std::uint64_t inner = 1;
              for (const auto& arm : x.arms) inner += control_count(arm.body);
              if (x.else_body) inner += control_count(*x.else_body);
              return inner;
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
              // first arrival and each re-test are distinct boundary states
              return 2 + control_count(x.body);
            } else {
              return 1;
            }
          },
          s.node);
    }
    return n;
  }

  // Value-space size per static type, saturating.
  std::uint64_t type_space(VarType t) const {
    std::uint64_t ints = out.width_bits_ >= 64 ? UINT64_MAX
                                               : (std::uint64_t{1} << out.width_bits_);
    std::uint64_t codes = m.decls.size();
    switch (t) {
      case VarType::Int: return ints;
      case VarType::Bool: return 2;
      case VarType::Code: return codes ? codes : 1;
      default: {
        std::uint64_t s = ints + 2;
        return s + codes < s ? UINT64_MAX : s + codes;
      }
    }
  }

  static std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > UINT64_MAX / b) return UINT64_MAX;
    return a * b;
  }

  static std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a + b < a ? UINT64_MAX : a + b;
  }

  // States in which this expression is suspended at an enquiry entry:
  // for each call site, the product of the value spaces of everything
  // already evaluated and retained (outer partial operands, earlier args).
  std::uint64_t suspension_count(const Expr& e, DeclInfo& di, std::uint64_t retained) {
    return std::visit(
        [&](const auto& x) -> std::uint64_t {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, BinaryExpr>) {
            std::uint64_t n = suspension_count(*x.lhs, di, retained);
            // the left value stays in the evaluation item while the right
            // side runs; for and/or it is a boolean already inspected
            std::uint64_t keep = (x.op == BinOp::And || x.op == BinOp::Or)
                                     ? sat_mul(retained, 2)
                                     : sat_mul(retained, type_space(expr_type(*x.lhs, di)));
            return sat_add(n, suspension_count(*x.rhs, di, keep));
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            return suspension_count(*x.operand, di, retained);
          } else if constexpr (std::is_same_v<T, EnquiryCall>) {
            std::uint64_t n = 0;
            std::uint64_t keep = retained;
            for (const auto& a : x.args) {
              n = sat_add(n, suspension_count(*a, di, keep));
              keep = sat_mul(keep, type_space(expr_type(*a, di)));
            }
            // the entry itself, with every argument value in hand
            return sat_add(n, keep);
          } else {
            return 0;
          }
        },
        e.node);
  }

  std::uint64_t suspension_body(const std::vector<Stmt>& body, DeclInfo& di) {
    std::uint64_t n = 0;
    for (const auto& s : body) {
      n = sat_add(
          n,
          std::visit(
              [&](const auto& x) -> std::uint64_t {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, AssignStmt>) {
                  return suspension_count(*x.value, di, 1);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                  std::uint64_t k = 0;
                  for (const auto& arm : x.arms) {
                    k = sat_add(k, suspension_count(*arm.guard, di, 1));
                    k = sat_add(k, suspension_body(arm.body, di));
                  }
                  if (x.else_body) k = sat_add(k, suspension_body(*x.else_body, di));
                  return k;
                } else if constexpr (std::is_same_v<T, WhileStmt>) {
                  // guard suspensions exist in two control contexts:
                  // first arrival and re-test
                  return sat_add(sat_mul(suspension_count(*x.guard, di, 1), 2),
                                 suspension_body(x.body, di));
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                  std::uint64_t k = 0;
                  std::uint64_t keep = 1;
                  for (const auto& a : x.args) {
                    k = sat_add(k, suspension_count(*a, di, keep));
                    keep = sat_mul(keep, type_space(expr_type(*a, di)));
                  }
                  return k;
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                  return suspension_count(*x.value, di, 1);
                } else {
                  return 0;
                }
              },
              s.node));
    }
    return n;
  }

  // ---- callee graph --------------------------------------------------------

  void collect_callees(const std::vector<Stmt>& body, std::vector<const Decl*>& out_list) {
    auto add = [&](const void* site) {
      const CalleeRef& ref = out.callees_.at(site);
      if (ref.decl && std::find(out_list.begin(), out_list.end(), ref.decl) == out_list.end())
        out_list.push_back(ref.decl);
    };
    for (const auto& s : body) {
      std::visit(
          [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AssignStmt>) {
              callees_in_expr(*x.value, out_list);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
              for (const auto& arm : x.arms) {
                callees_in_expr(*arm.guard, out_list);
                collect_callees(arm.body, out_list);
              }
              if (x.else_body) collect_callees(*x.else_body, out_list);
            } else if constexpr (std::is_same_v<T, WhileStmt>) {
              callees_in_expr(*x.guard, out_list);
              collect_callees(x.body, out_list);
            } else if constexpr (std::is_same_v<T, CallStmt>) {
              add(&x);
              for (const auto& a : x.args) callees_in_expr(*a, out_list);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
              callees_in_expr(*x.value, out_list);
            }
          },
          s.node);
    }
  }

  void callees_in_expr(const Expr& e, std::vector<const Decl*>& out_list) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, BinaryExpr>) {
            callees_in_expr(*x.lhs, out_list);
            callees_in_expr(*x.rhs, out_list);
          } else if constexpr (std::is_same_v<T, NotExpr>) {
            callees_in_expr(*x.operand, out_list);
          } else if constexpr (std::is_same_v<T, EnquiryCall>) {
            const CalleeRef& ref = out.callees_.at(&x);
            if (ref.decl &&
                std::find(out_list.begin(), out_list.end(), ref.decl) == out_list.end())
              out_list.push_back(ref.decl);
            for (const auto& a : x.args) callees_in_expr(*a, out_list);
          }
        },
        e.node);
  }

  // ---- driver ---------------------------------------------------------------

  CheckedModule run() {
    std::set<std::string> names;
    for (const auto& d : m.decls) {
      if (!names.insert(d.name).second)
        throw NameError("duplicate declaration '" + d.name + "'");
    }

    for (const auto& d : m.decls) {
      DeclInfo di;
      di.decl = &d;

      std::set<std::string> vars(d.params.begin(), d.params.end());
      if (vars.size() != d.params.size())
        throw NameError("duplicate parameter in '" + d.name + "'");
      for (const auto& p : d.params)
        if (is_decl_or_intrinsic(p))
          throw KindError("parameter '" + p + "' shadows a declaration in '" + d.name + "'");

      collect_body(d.body, d, vars);

      di.slots.assign(vars.begin(), vars.end());  // std::set keeps them sorted
      for (size_t i = 0; i < di.slots.size(); ++i)
        di.slot_of[di.slots[i]] = static_cast<int>(i);
      di.slot_type.assign(di.slots.size(), VarType::Unknown);

      if (d.kind == DeclKind::Enquiry && !guarantees_exit(d.body))
        throw KindError("enquiry '" + d.name + "' may finish without returning a value");

      da_body(d.body, d, std::set<std::string>(d.params.begin(), d.params.end()));

      out.infos_.emplace(d.name, std::move(di));
    }

    // type inference to a fixpoint across declarations
    do {
      types_changed = false;
      for (const auto& d : m.decls) type_body(d.body, out.infos_.at(d.name));
    } while (types_changed);

    for (const auto& d : m.decls) {
      DeclInfo& di = out.infos_.at(d.name);
      if (d.kind == DeclKind::Enquiry) di.return_type = return_types[d.name];
      di.control_states = control_count(d.body) + 1;
      di.suspension_states = suspension_body(d.body, di);
      collect_callees(d.body, di.callees);
      if (!out.codes_.count(d.name)) out.codes_[d.name] = encode(d);
    }

    return std::move(out);
  }
};

}  // namespace detail

const DeclInfo& CheckedModule::info(const std::string& name) const {
  auto it = infos_.find(name);
  if (it == infos_.end()) throw NameError("no declaration '" + name + "'");
  return it->second;
}

const CalleeRef& CheckedModule::callee_at(const void* site) const {
  return callees_.at(site);
}

const ProgramCode& CheckedModule::code_of(const std::string& decl_name) const {
  auto it = codes_.find(decl_name);
  if (it == codes_.end()) throw NameError("no declaration '" + decl_name + "'");
  return it->second;
}

int CheckedModule::node_id(const void* node) const { return node_ids_.at(node); }

CheckedModule check(const ModuleAst& m, int width_bits) {
  detail::ModuleChecker c(std::make_shared<const ModuleAst>(clone(m)), width_bits);
  return c.run();
}

}  // namespace haltlab
