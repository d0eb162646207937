#include "haltlab/trm.hpp"

#include <functional>
#include <map>
#include <set>

#include "haltlab/programs.hpp"

namespace haltlab {
namespace trm {

namespace {

TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

}  // namespace

TermPtr constant(bool v) {
  Term t;
  t.kind = Term::Kind::Const;
  t.value = v;
  return make(std::move(t));
}

TermPtr unknown(std::string name) {
  Term t;
  t.kind = Term::Kind::Unknown;
  t.name = std::move(name);
  return make(std::move(t));
}

TermPtr negation(TermPtr x) {
  Term t;
  t.kind = Term::Kind::Not;
  t.a = std::move(x);
  return make(std::move(t));
}

TermPtr disjunction(TermPtr l, TermPtr r) {
  Term t;
  t.kind = Term::Kind::Or;
  t.a = std::move(l);
  t.b = std::move(r);
  return make(std::move(t));
}

TermPtr implication(TermPtr l, TermPtr r) {
  Term t;
  t.kind = Term::Kind::Implies;
  t.a = std::move(l);
  t.b = std::move(r);
  return make(std::move(t));
}

TermPtr equivalence(TermPtr l, TermPtr r) {
  Term t;
  t.kind = Term::Kind::Iff;
  t.a = std::move(l);
  t.b = std::move(r);
  return make(std::move(t));
}

TermPtr trm_of(std::string program) {
  Term t;
  t.kind = Term::Kind::TrmOf;
  t.name = std::move(program);
  return make(std::move(t));
}

TermPtr halt_of(std::string test, std::string program) {
  Term t;
  t.kind = Term::Kind::HaltOf;
  t.name = std::move(program);
  t.test = std::move(test);
  return make(std::move(t));
}

TermPtr trm_if(TermPtr guard, TermPtr branch) {
  Term t;
  t.kind = Term::Kind::TrmIf;
  t.a = std::move(guard);
  t.b = std::move(branch);
  return make(std::move(t));
}

bool equal(const TermPtr& x, const TermPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->kind != y->kind) return false;
  switch (x->kind) {
    case Term::Kind::Const: return x->value == y->value;
    case Term::Kind::Unknown:
    case Term::Kind::TrmOf: return x->name == y->name;
    case Term::Kind::HaltOf: return x->name == y->name && x->test == y->test;
    case Term::Kind::Not: return equal(x->a, y->a);
    default: return equal(x->a, y->a) && equal(x->b, y->b);
  }
}

namespace {

// Binding strength for rendering: iff < implies < or < not < atoms.
int prec(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Iff: return 1;
    case Term::Kind::Implies: return 2;
    case Term::Kind::Or: return 3;
    case Term::Kind::Not: return 4;
    default: return 5;
  }
}

void render_into(std::string& out, const TermPtr& t, int min_prec) {
  int p = prec(t);
  bool parens = p < min_prec;
  if (parens) out += '(';
  switch (t->kind) {
    case Term::Kind::Const:
      out += t->value ? "true" : "false";
      break;
    case Term::Kind::Unknown:
      out += t->name;
      break;
    case Term::Kind::TrmOf:
      out += "trm(" + t->name + ")";
      break;
    case Term::Kind::HaltOf:
      out += t->test + "(" + t->name + ")";
      break;
    case Term::Kind::TrmIf:
      out += "trm(if ";
      render_into(out, t->a, 0);
      out += " then ";
      render_into(out, t->b, 0);
      out += " end)";
      break;
    case Term::Kind::Not:
      out += "¬";  // ¬
      render_into(out, t->a, p + 1);
      break;
    case Term::Kind::Or:
      render_into(out, t->a, p);
      out += " ∨ ";  // ∨
      render_into(out, t->b, p + 1);
      break;
    case Term::Kind::Implies:
      render_into(out, t->a, p + 1);
      out += " ⇒ ";  // ⇒
      render_into(out, t->b, p);
      break;
    case Term::Kind::Iff:
      render_into(out, t->a, p + 1);
      out += " ⇔ ";  // ⇔
      render_into(out, t->b, p + 1);
      break;
  }
  if (parens) out += ')';
}

std::string render_branch(const TermPtr& t) {
  // inside trm(if ... then X end) the branch prints as a program name
  if (t->kind == Term::Kind::TrmOf) return t->name;
  std::string out;
  render_into(out, t, 0);
  return out;
}

}  // namespace

std::string render(const TermPtr& t) {
  if (t->kind == Term::Kind::TrmIf) {
    std::string out = "trm(if ";
    render_into(out, t->a, 0);
    out += " then ";
    out += render_branch(t->b);
    out += " end)";
    return out;
  }
  std::string out;
  render_into(out, t, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Rule (1) and the fact rewrites

namespace {

// Translates a guard expression into a term, for the shapes the calculus
// supports: boolean literals and halt-test enquiries over code literals.
TermPtr guard_term(const Expr& g) {
  if (const auto* b = std::get_if<BoolLit>(&g.node)) return constant(b->value);
  if (const auto* call = std::get_if<EnquiryCall>(&g.node)) {
    if (call->args.size() == 1) {
      if (const auto* code = std::get_if<CodeLit>(&call->args[0]->node))
        return halt_of(call->callee, code->decl_name);
    }
  }
  throw ShapeError("unsupported guard shape for the termination rule");
}

// Translates the guarded branch: empty or skip-only bodies terminate;
// a single parameterless call stands for that program's termination.
TermPtr branch_term(const std::vector<Stmt>& body) {
  if (body.empty()) return constant(true);
  if (body.size() != 1) throw ShapeError("unsupported branch shape for the termination rule");
  if (std::get_if<SkipStmt>(&body[0].node)) return constant(true);
  if (const auto* call = std::get_if<CallStmt>(&body[0].node)) {
    if (call->args.empty()) return trm_of(call->callee);
  }
  throw ShapeError("unsupported branch shape for the termination rule");
}

// trm(P) -> trm(if g then T end) by unfolding P's definition.
TermPtr unfold_definition(const ModuleAst& m, const TermPtr& t) {
  if (t->kind != Term::Kind::TrmOf)
    throw ShapeError("rule (1) applies to trm of a program");
  const Decl* d = m.find(t->name);
  if (!d) throw NameError("no declaration '" + t->name + "'");
  if (d->body.size() != 1) throw ShapeError("'" + t->name + "' is not a single conditional");
  const auto* ifs = std::get_if<IfStmt>(&d->body[0].node);
  if (!ifs || ifs->arms.size() != 1 || ifs->else_body)
    throw ShapeError("'" + t->name + "' is not an if-then-end program");
  return trm_if(guard_term(*ifs->arms[0].guard), branch_term(ifs->arms[0].body));
}

void require_guard_terminates(const TermPtr& guard, const Facts& facts) {
  if (guard->kind == Term::Kind::Const) return;
  if (guard->kind == Term::Kind::HaltOf && facts.assume_trm_h) return;
  throw ShapeError("rule (1) needs trm of the guard; it is not assumed here");
}

// trm(if g then T end) -> ¬g ∨ (g ⇒ trm(T)), under trm(g).
TermPtr rule1(const TermPtr& t, const Facts& facts) {
  if (t->kind != Term::Kind::TrmIf) throw ShapeError("rule (1) applies to trm(if...end)");
  require_guard_terminates(t->a, facts);
  return disjunction(negation(t->a), implication(t->a, t->b));
}

TermPtr map_children(const TermPtr& t, const std::function<TermPtr(const TermPtr&)>& f) {
  Term out = *t;
  if (t->a) out.a = f(t->a);
  if (t->b) out.b = f(t->b);
  return make(std::move(out));
}

// Single targeted rewrites, used to keep derivation steps honest.
TermPtr subst_trm_loop(const TermPtr& t, const Facts& facts) {
  if (t->kind == Term::Kind::TrmOf && t->name == facts.loop_name) return constant(false);
  return map_children(t, [&](const TermPtr& c) { return subst_trm_loop(c, facts); });
}

TermPtr rewrite_implies_false(const TermPtr& t) {
  if (t->kind == Term::Kind::Implies && t->b->kind == Term::Kind::Const && !t->b->value)
    return negation(t->a);
  return map_children(t, rewrite_implies_false);
}

TermPtr rewrite_or_idempotent(const TermPtr& t) {
  if (t->kind == Term::Kind::Or && equal(t->a, t->b)) return t->a;
  return map_children(t, rewrite_or_idempotent);
}

TermPtr subst_spec_of_h(const TermPtr& t, const Facts& facts) {
  if (t->kind == Term::Kind::HaltOf && t->test == facts.halt_test) return trm_of(t->name);
  return map_children(t, [&](const TermPtr& c) { return subst_spec_of_h(c, facts); });
}

}  // namespace

TermPtr trm_apply_rule1(const ModuleAst& m, const TermPtr& t, const Facts& facts) {
  return rule1(unfold_definition(m, t), facts);
}

TermPtr trm_simplify(const TermPtr& t, const Facts& facts) {
  TermPtr cur = t;
  for (;;) {
    TermPtr next = cur;
    next = subst_trm_loop(next, facts);
    next = subst_spec_of_h(next, facts);

    // one bottom-up propositional pass
    std::function<TermPtr(const TermPtr&)> simp = [&](const TermPtr& x) -> TermPtr {
      TermPtr y = map_children(x, simp);
      auto is_const = [](const TermPtr& p, bool v) {
        return p->kind == Term::Kind::Const && p->value == v;
      };
      switch (y->kind) {
        case Term::Kind::Not:
          if (y->a->kind == Term::Kind::Const) return constant(!y->a->value);
          if (y->a->kind == Term::Kind::Not) return y->a->a;
          return y;
        case Term::Kind::Or:
          if (is_const(y->a, true) || is_const(y->b, true)) return constant(true);
          if (is_const(y->a, false)) return y->b;
          if (is_const(y->b, false)) return y->a;
          if (equal(y->a, y->b)) return y->a;
          return y;
        case Term::Kind::Implies:
          if (is_const(y->b, false)) return negation(y->a);
          if (is_const(y->a, true)) return y->b;
          if (is_const(y->a, false)) return constant(true);
          if (is_const(y->b, true)) return constant(true);
          if (equal(y->a, y->b)) return constant(true);
          return y;
        case Term::Kind::Iff:
          if (equal(y->a, y->b)) return constant(true);
          if (is_const(y->a, true)) return y->b;
          if (is_const(y->b, true)) return y->a;
          if (is_const(y->a, false)) return simp(negation(y->b));
          if (is_const(y->b, false)) return simp(negation(y->a));
          return y;
        default:
          return y;
      }
    };
    next = simp(next);
    if (equal(next, cur)) return cur;
    cur = next;
  }
}

// ---------------------------------------------------------------------------
// Finite solver

namespace {

void collect_atoms(const TermPtr& t, std::vector<std::string>& order,
                   std::set<std::string>& seen) {
  std::string key;
  switch (t->kind) {
    case Term::Kind::Unknown: key = "u:" + t->name; break;
    case Term::Kind::TrmOf: key = "t:" + t->name; break;
    case Term::Kind::HaltOf: key = "h:" + t->test + ":" + t->name; break;
    default:
      if (t->a) collect_atoms(t->a, order, seen);
      if (t->b) collect_atoms(t->b, order, seen);
      return;
  }
  if (seen.insert(key).second) order.push_back(key);
}

bool eval_term(const TermPtr& t, const std::map<std::string, bool>& env) {
  switch (t->kind) {
    case Term::Kind::Const: return t->value;
    case Term::Kind::Unknown: return env.at("u:" + t->name);
    case Term::Kind::TrmOf: return env.at("t:" + t->name);
    case Term::Kind::HaltOf: return env.at("h:" + t->test + ":" + t->name);
    case Term::Kind::Not: return !eval_term(t->a, env);
    case Term::Kind::Or: return eval_term(t->a, env) || eval_term(t->b, env);
    case Term::Kind::Implies: return !eval_term(t->a, env) || eval_term(t->b, env);
    case Term::Kind::Iff: return eval_term(t->a, env) == eval_term(t->b, env);
    case Term::Kind::TrmIf:
      throw ShapeError("trm(if...end) must be rewritten before solving");
  }
  return false;
}

}  // namespace

TrmVerdict solve_iff(const TrmEquation& e, const std::optional<std::string>& queried) {
  std::vector<std::string> atoms;
  std::set<std::string> seen;
  collect_atoms(e.left, atoms, seen);
  collect_atoms(e.right, atoms, seen);
  if (atoms.size() > kMaxUnknowns)
    throw TooManyUnknownsError("equation has " + std::to_string(atoms.size()) +
                               " unknowns; the cap is " + std::to_string(kMaxUnknowns));

  std::string want;
  if (queried) {
    for (const auto& a : atoms) {
      if (a.substr(2) == *queried || a == *queried) {
        want = a;
        break;
      }
    }
    if (want.empty()) throw NameError("queried unknown '" + *queried + "' not in equation");
  } else if (!atoms.empty()) {
    want = atoms.front();
  }

  if (atoms.empty()) {
    std::map<std::string, bool> env;
    return eval_term(e.left, env) == eval_term(e.right, env)
               ? TrmVerdict{Underdetermined{}}
               : TrmVerdict{NoSolution{{}}};
  }

  bool any = false;
  bool seen_true = false;
  bool seen_false = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
    std::map<std::string, bool> env;
    for (std::size_t i = 0; i < atoms.size(); ++i) env[atoms[i]] = (mask >> i) & 1;
    if (eval_term(e.left, env) == eval_term(e.right, env)) {
      any = true;
      (env[want] ? seen_true : seen_false) = true;
    }
  }
  if (!any) return TrmVerdict{NoSolution{{}}};
  if (seen_true != seen_false)
    return TrmVerdict{Determined{seen_true}};
  return TrmVerdict{Underdetermined{}};
}

// ---------------------------------------------------------------------------
// The six-step chain for S

SAnalysis derive_s_contradiction(bool assume_trm_h) {
  Facts facts;
  facts.assume_trm_h = assume_trm_h;

  ModuleAst m = programs::l1_module();
  SAnalysis out;

  TermPtr t0 = trm_of("S");
  TermPtr t1 = unfold_definition(m, t0);
  out.steps.push_back({t0, t1, "definition of S"});

  TermPtr t2;
  try {
    t2 = rule1(t1, facts);
  } catch (const ShapeError& e) {
    out.stopped = e.what();
    out.verdict = TrmVerdict{Underdetermined{}};
    return out;
  }
  out.steps.push_back({t1, t2, "rule (1)"});

  TermPtr t3 = subst_trm_loop(t2, facts);
  out.steps.push_back({t2, t3, "property of Loop"});

  TermPtr t4 = rewrite_implies_false(t3);
  out.steps.push_back({t3, t4, "logic"});

  TermPtr t5 = rewrite_or_idempotent(t4);
  out.steps.push_back({t4, t5, "logic"});

  TermPtr t6 = subst_spec_of_h(t5, facts);
  out.steps.push_back({t5, t6, "specification of H"});

  out.equation = TrmEquation{t0, t6};
  TrmVerdict solved = solve_iff(*out.equation);
  if (solved.no_solution()) solved = TrmVerdict{NoSolution{out.steps}};
  out.verdict = std::move(solved);
  return out;
}

}  // namespace trm
}  // namespace haltlab
