#include <doctest.h>

#include <map>
#include <random>

#include "haltlab/analyzer.hpp"
#include "haltlab/parser.hpp"
#include "haltlab/pretty.hpp"
#include "haltlab/programs.hpp"
#include "haltlab/trm.hpp"

using namespace haltlab;

TEST_CASE("build_s renders to the canonical shape") {
  Decl s = programs::build_s("H", "Loop");
  CHECK(pretty(s) ==
        "procedure S\n"
        "  if H(code(S)) then\n"
        "    Loop()\n"
        "  end\n"
        "end\n");
  // round trip through text
  ModuleAst l1 = programs::l1_module();
  ModuleAst again = parse(pretty(l1));
  CHECK(equal(again, l1));
  CHECK(encode(again.decls[2]) == encode(l1.decls[2]));

  CHECK(encode(programs::build_s("H", "Loop")) != encode(programs::build_s("H1", "Loop")));
  CHECK_THROWS_AS(programs::build_s("", "Loop"), NameError);
}

TEST_CASE("build_s1 is executable and introspectable") {
  CheckedModule cm = check(programs::l2_module());
  Verdict v = decide_halting(cm, "S1");
  REQUIRE(v.errored());
  CHECK(v.as_error().report.site == "S1");
  CHECK(v.as_error().report.message == "Cannot terminate");
}

TEST_CASE("rule 1 unfolds the paradox program") {
  ModuleAst m = programs::l1_module();
  trm::TermPtr t = trm::trm_apply_rule1(m, trm::trm_of("S"));
  CHECK(trm::render(t) == "¬H(S) ∨ (H(S) ⇒ trm(Loop))");
}

TEST_CASE("rule 1 on a trivially terminating conditional") {
  ModuleAst m = parse_module("procedure G if true then skip end end");
  trm::TermPtr t = trm::trm_apply_rule1(m, trm::trm_of("G"));
  CHECK(trm::render(t) == "¬true ∨ (true ⇒ true)");
  CHECK(trm::render(trm::trm_simplify(t)) == "true");
}

TEST_CASE("rule 1 rejects unsupported shapes") {
  ModuleAst loops = parse_module("procedure W while true do skip end end");
  CHECK_THROWS_AS(trm::trm_apply_rule1(loops, trm::trm_of("W")), ShapeError);
  ModuleAst two = parse_module("procedure D skip skip end");
  CHECK_THROWS_AS(trm::trm_apply_rule1(two, trm::trm_of("D")), ShapeError);
  ModuleAst has_else = parse_module("procedure E if true then skip else skip end end");
  CHECK_THROWS_AS(trm::trm_apply_rule1(has_else, trm::trm_of("E")), ShapeError);
  // without the termination assumption for H the rule cannot fire
  trm::Facts no_h;
  no_h.assume_trm_h = false;
  ModuleAst l1 = programs::l1_module();
  CHECK_THROWS_AS(trm::trm_apply_rule1(l1, trm::trm_of("S"), no_h), ShapeError);
}

TEST_CASE("simplification applies the fact set") {
  using namespace trm;
  // ¬H(S) ∨ (H(S) ⇒ false)  →  ¬trm(S) under both facts
  TermPtr t = disjunction(negation(halt_of("H", "S")),
                          implication(halt_of("H", "S"), constant(false)));
  CHECK(render(trm_simplify(t)) == "¬trm(S)");

  // absorption
  CHECK(render(trm_simplify(disjunction(constant(true), unknown("x")))) == "true");
  CHECK(render(trm_simplify(disjunction(unknown("x"), unknown("x")))) == "x");
  // trm(Loop) is false by the fact set
  CHECK(render(trm_simplify(trm_of("Loop"))) == "false");
  // double negation and implication folds
  CHECK(render(trm_simplify(negation(negation(unknown("x"))))) == "x");
  CHECK(render(trm_simplify(implication(unknown("x"), constant(false)))) == "¬x");
}

TEST_CASE("solver handles the three outcomes") {
  using namespace trm;
  TrmEquation contra{unknown("x"), negation(unknown("x"))};
  CHECK(solve_iff(contra).no_solution());

  TrmEquation fixed{unknown("x"), constant(true)};
  TrmVerdict v = solve_iff(fixed);
  REQUIRE(v.determined());
  CHECK(v.as_determined().value == true);

  TrmEquation tautology{unknown("x"), unknown("x")};
  CHECK(solve_iff(tautology).underdetermined());

  // x ⇔ ¬y leaves x free
  TrmEquation pair{unknown("x"), negation(unknown("y"))};
  CHECK(solve_iff(pair, std::string("x")).underdetermined());
}

TEST_CASE("solver matches an independent truth-table evaluator") {
  using namespace trm;
  // independent evaluator: substitute and reduce, written differently
  // from the solver's environment-based evaluation
  struct Reduce {
    static bool eval(const TermPtr& t, const std::map<std::string, bool>& asg) {
      switch (t->kind) {
        case Term::Kind::Const: return t->value;
        case Term::Kind::Unknown: return asg.at(t->name);
        case Term::Kind::Not: return !eval(t->a, asg);
        case Term::Kind::Or: return eval(t->a, asg) | eval(t->b, asg);
        case Term::Kind::Implies: return eval(t->b, asg) || !eval(t->a, asg);
        case Term::Kind::Iff: return !(eval(t->a, asg) ^ eval(t->b, asg));
        default: throw std::logic_error("atoms only");
      }
    }
  };

  std::mt19937_64 rng(5150);
  const char* names[3] = {"x", "y", "z"};
  auto random_term = [&](auto&& self, int depth) -> TermPtr {
    if (depth <= 0 || rng() % 3 == 0) {
      if (rng() % 4 == 0) return constant(rng() % 2);
      return unknown(names[rng() % 3]);
    }
    switch (rng() % 4) {
      case 0: return negation(self(self, depth - 1));
      case 1: return disjunction(self(self, depth - 1), self(self, depth - 1));
      case 2: return implication(self(self, depth - 1), self(self, depth - 1));
      default: return equivalence(self(self, depth - 1), self(self, depth - 1));
    }
  };

  auto contains_x = [](const TermPtr& t) {
    auto walk = [](auto&& self, const TermPtr& u) -> bool {
      if (u->kind == Term::Kind::Unknown) return u->name == "x";
      if (u->a && self(self, u->a)) return true;
      return u->b && self(self, u->b);
    };
    return walk(walk, t);
  };

  for (int trial = 0; trial < 300; ++trial) {
    TrmEquation e{random_term(random_term, 3), random_term(random_term, 3)};
    if (!contains_x(e.left) && !contains_x(e.right)) {
      CHECK_THROWS_AS(solve_iff(e, std::string("x")), NameError);
      continue;
    }
    TrmVerdict got = solve_iff(e, std::string("x"));

    int sat = 0, sat_x_true = 0, sat_x_false = 0;
    for (int mask = 0; mask < 8; ++mask) {
      std::map<std::string, bool> asg{{"x", bool(mask & 1)},
                                      {"y", bool(mask & 2)},
                                      {"z", bool(mask & 4)}};
      if (Reduce::eval(e.left, asg) == Reduce::eval(e.right, asg)) {
        ++sat;
        (asg["x"] ? sat_x_true : sat_x_false)++;
      }
    }
    if (sat == 0) {
      CHECK(got.no_solution());
    } else if (sat_x_true > 0 && sat_x_false > 0) {
      CHECK(got.underdetermined());
    } else {
      REQUIRE(got.determined());
      CHECK(got.as_determined().value == (sat_x_true > 0));
    }
  }
}

TEST_CASE("solver enforces the unknown cap") {
  using namespace trm;
  TermPtr t = unknown("u0");
  for (int i = 1; i < 17; ++i) t = disjunction(t, unknown("u" + std::to_string(i)));
  CHECK_THROWS_AS(solve_iff(TrmEquation{t, constant(true)}), TooManyUnknownsError);
}

TEST_CASE("the six-step derivation follows the argument exactly") {
  trm::SAnalysis a = trm::derive_s_contradiction();
  REQUIRE(a.steps.size() == 6);
  const char* expected[6] = {"definition of S", "rule (1)",
                             "property of Loop", "logic",
                             "logic",            "specification of H"};
  for (int i = 0; i < 6; ++i) CHECK(a.steps[i].justification == expected[i]);

  CHECK(trm::render(a.steps[0].before) == "trm(S)");
  CHECK(trm::render(a.steps[0].after) == "trm(if H(S) then Loop end)");
  CHECK(trm::render(a.steps[1].after) == "¬H(S) ∨ (H(S) ⇒ trm(Loop))");
  CHECK(trm::render(a.steps[2].after) == "¬H(S) ∨ (H(S) ⇒ false)");
  CHECK(trm::render(a.steps[3].after) == "¬H(S) ∨ ¬H(S)");
  CHECK(trm::render(a.steps[4].after) == "¬H(S)");
  CHECK(trm::render(a.steps[5].after) == "¬trm(S)");

  REQUIRE(a.equation.has_value());
  REQUIRE(a.verdict.no_solution());
  CHECK(a.verdict.as_no_solution().derivation.size() == 6);

  // each step's before matches the previous step's after
  for (int i = 1; i < 6; ++i) CHECK(trm::equal(a.steps[i].before, a.steps[i - 1].after));
}

TEST_CASE("dropping trm(H) stops the derivation at rule 1") {
  trm::SAnalysis a = trm::derive_s_contradiction(false);
  CHECK(a.steps.size() == 1);
  CHECK(a.steps[0].justification == "definition of S");
  CHECK(!a.stopped.empty());
  CHECK(a.verdict.underdetermined());
}

TEST_CASE("trm analysis agrees with the decider on supported shapes") {
  struct Case {
    const char* src;
    const char* entry;
  };
  const Case cases[] = {
      {"procedure Loop while true do skip end end procedure G if true then Loop() end end",
       "G"},
      {"procedure Loop while true do skip end end procedure G if false then Loop() end end",
       "G"},
      {"procedure G if true then skip end end", "G"},
      {"procedure G if false then skip end end", "G"},
  };
  for (const Case& c : cases) {
    ModuleAst m = parse(c.src);
    trm::TermPtr t = trm::trm_apply_rule1(m, trm::trm_of(c.entry));
    trm::TermPtr n = trm::trm_simplify(t);
    REQUIRE(n->kind == trm::Term::Kind::Const);

    CheckedModule cm = check(m);
    Verdict v = decide_halting(cm, c.entry);
    CHECK(n->value == v.classifies_halting());
  }
}
