#include <doctest.h>

#include "haltlab/analyzer.hpp"
#include "haltlab/parser.hpp"
#include "haltlab/programs.hpp"
#include "support/gen.hpp"

using namespace haltlab;

TEST_CASE("skip halts in one step") {
  CheckedModule cm = check(programs::l0_module());
  Verdict v = decide_halting(cm, "Skip");
  REQUIRE(v.halts());
  CHECK(v.as_halts().steps == 1);
}

TEST_CASE("loop diverges with replayable evidence") {
  ModuleAst m = programs::l0_module();
  CheckedModule cm = check(m);
  Verdict v = decide_halting(cm, "Loop");
  REQUIRE(v.diverges());
  REQUIRE(v.as_diverges().evidence.has_value());
  const CycleEvidence& ev = *v.as_diverges().evidence;
  CHECK(ev.first < ev.second);
  // the while-skip cycle is two steps long: guard test, then skip
  CHECK(ev.second - ev.first == 2);
  CHECK(replay_cycle(cm, "Loop", ev));

  CycleEvidence wrong = ev;
  wrong.second += 1;
  CHECK_FALSE(replay_cycle(cm, "Loop", wrong));
}

TEST_CASE("wraparound counting halts or diverges as the store dictates") {
  // the +1 walk passes through every residue and reaches 0: it halts
  ModuleAst inc = parse("procedure Main x := 1 while x <> 0 do x := x + 1 end end");
  CheckedModule cm_inc = check(inc, 3);
  // hand oracle at w=3: x visits 1,2,...,7,0 and the guard fails
  {
    unsigned x = 1;
    int iter = 0;
    while (x != 0 && iter < 16) {
      x = (x + 1) & 7;
      ++iter;
    }
    REQUIRE(x == 0);
  }
  Verdict v_inc = decide_halting(cm_inc, "Main");
  CHECK(v_inc.halts());

  // the +2 walk keeps x odd forever: it revisits within 8 store values
  ModuleAst skip2 = parse("procedure Main x := 1 while x <> 0 do x := x + 2 end end");
  CheckedModule cm2 = check(skip2, 3);
  Verdict v2 = decide_halting(cm2, "Main");
  REQUIRE(v2.diverges());
  CHECK(v2.as_diverges().evidence->second <= 2 * 8 + 2);
  CHECK(replay_cycle(cm2, "Main", *v2.as_diverges().evidence));
}

TEST_CASE("error intrinsic counts as non-termination") {
  CheckedModule cm = check(programs::l2_module());
  Verdict v = decide_halting(cm, "S1");
  REQUIRE(v.errored());
  CHECK(v.as_error().report.message == "Cannot terminate");

  Verdict vc = counter_oracle(cm, "S1");
  CHECK(vc.errored());
}

TEST_CASE("counter oracle agrees on the canonical programs") {
  CheckedModule cm = check(programs::l0_module());
  Verdict s = counter_oracle(cm, "Skip");
  REQUIRE(s.halts());
  CHECK(s.as_halts().steps == 1);
  CHECK(counter_oracle(cm, "Loop").diverges());
}

TEST_CASE("state budget is a sound overapproximation for the loop") {
  CheckedModule cm = check(programs::l0_module());
  StateBudget sb = state_budget(cm, "Loop");
  CHECK(sb.bound >= 3);  // three distinct boundary configurations exist
  CHECK(sb.store_bits == 0);
  CHECK(sb.depth == 1);
}

TEST_CASE("state budget refuses unbounded recursion") {
  ModuleAst m = parse("procedure P P() end");
  CheckedModule cm = check(m);
  CHECK_THROWS_AS(counter_oracle(cm, "P"), BudgetOverflowError);
}

TEST_CASE("decider and counter agree over a corpus") {
  testgen::Rng rng(1234);
  testgen::CorpusParams params;
  int decided = 0;
  for (int i = 0; i < 120; ++i) {
    ModuleAst m = testgen::random_program(rng, params);
    CheckedModule cm = check(m, params.width_bits);
    Verdict a = decide_halting(cm, "Main");
    Verdict b = counter_oracle(cm, "Main");
    REQUIRE(a.decisive());
    REQUIRE(b.decisive());
    CHECK(a.classifies_halting() == b.classifies_halting());
    if (a.halts()) {
      // the pigeonhole inequality itself: a halting run never outlives
      // the configuration bound
      CHECK(a.as_halts().steps <= state_budget(cm, "Main").bound);
    }
    if (a.diverges()) {
      REQUIRE(a.as_diverges().evidence.has_value());
      CHECK(replay_cycle(cm, "Main", *a.as_diverges().evidence));
    }
    ++decided;
  }
  CHECK(decided == 120);
}

TEST_CASE("decider and counter agree on enquiry-bearing programs") {
  const char* sources[] = {
      // halting countdown driven through an enquiry guard
      "enquiry IsZero(a) return(a = 0) end\n"
      "procedure Main x := 5 while not IsZero(x) do x := x - 1 end end\n",
      // diverges: the store never changes
      "enquiry IsZero(a) return(a = 0) end\n"
      "procedure Main x := 5 while not IsZero(x) do x := x + 0 end end\n",
      // suspension under a short-circuit operator
      "enquiry Odd(a) return(a mod 2 = 1) end\n"
      "procedure Main\n"
      "  x := 9\n"
      "  while Odd(x) and Odd(x + 2) do x := x - 2 end\n"
      "end\n",
      // nested enquiry calls in an assignment
      "enquiry Inc(a) return(a + 1) end\n"
      "procedure Main x := 0 while x < 6 do x := Inc(Inc(x)) end end\n",
  };
  for (const char* src : sources) {
    ModuleAst m = parse(src);
    CheckedModule cm = check(m, 4);
    Verdict a = decide_halting(cm, "Main");
    Verdict b = counter_oracle(cm, "Main");
    REQUIRE(a.decisive());
    CHECK(a.classifies_halting() == b.classifies_halting());
    if (a.halts()) CHECK(a.as_halts().steps <= state_budget(cm, "Main").bound);
    if (a.diverges()) CHECK(replay_cycle(cm, "Main", *a.as_diverges().evidence));
  }
}

TEST_CASE("an enquiry can be the analyzed entry") {
  ModuleAst m = parse("enquiry E x := 2 return(x * 3) end");
  CheckedModule cm = check(m);
  Verdict v = decide_halting(cm, "E");
  REQUIRE(v.halts());
  CHECK(counter_oracle(cm, "E").halts());
}

TEST_CASE("an explicit cap yields Undecided") {
  CheckedModule cm = check(programs::l0_module());
  AnalyzerOptions opts;
  opts.visited_cap = 1;
  Verdict v = decide_halting(cm, "Loop", opts);
  REQUIRE(v.undecided());
  CHECK(v.as_undecided().cap == 1);
}

TEST_CASE("the L0 set has exactly one model") {
  std::vector<Decl> l0;
  l0.push_back(programs::skip_decl());
  l0.push_back(programs::loop_decl());

  auto all = enumerate_models(l0);
  REQUIRE(all.size() == 4);
  int consistent = 0;
  const HaltMap* good = nullptr;
  for (const auto& [map, report] : all) {
    if (report.consistent) {
      ++consistent;
      good = &map;
    }
  }
  CHECK(consistent == 1);
  REQUIRE(good != nullptr);
  CHECK(good->at(encode(programs::skip_decl())) == true);
  CHECK(good->at(encode(programs::loop_decl())) == false);
}

TEST_CASE("the L1 set has no model at all") {
  std::vector<Decl> l1;
  l1.push_back(programs::skip_decl());
  l1.push_back(programs::loop_decl());
  l1.push_back(programs::build_s("H", "Loop"));

  auto all = enumerate_models(l1);
  REQUIRE(all.size() == 8);
  for (const auto& [map, report] : all) CHECK_FALSE(report.consistent);

  // and the failure is always at S once Skip and Loop are right
  HaltMap claim_true;
  claim_true[encode(l1[0])] = true;
  claim_true[encode(l1[1])] = false;
  claim_true[encode(l1[2])] = true;
  ConsistencyReport r_true = check_model(l1, claim_true);
  CHECK_FALSE(r_true.consistent);
  CHECK(r_true.entries[2].name == "S");
  CHECK_FALSE(r_true.entries[2].consistent);
  CHECK(r_true.entries[2].observed.diverges());

  HaltMap claim_false = claim_true;
  claim_false[encode(l1[2])] = false;
  ConsistencyReport r_false = check_model(l1, claim_false);
  CHECK_FALSE(r_false.consistent);
  CHECK(r_false.entries[2].observed.halts());
}

TEST_CASE("a single halting program has the obvious model") {
  std::vector<Decl> just_skip;
  just_skip.push_back(programs::skip_decl());
  auto all = enumerate_models(just_skip);
  REQUIRE(all.size() == 2);
  CHECK_FALSE(all[0].second.consistent);  // mask 0: claims false
  CHECK(all[1].second.consistent);        // mask 1: claims true
}

TEST_CASE("model checking validates its inputs") {
  std::vector<Decl> progs;
  progs.push_back(programs::skip_decl());
  CHECK_THROWS_AS(check_model(progs, HaltMap{}), MissingKeyError);

  std::vector<Decl> too_many;
  for (int i = 0; i < 21; ++i) {
    Decl d = programs::skip_decl();
    d.name = "P" + std::to_string(i);
    too_many.push_back(std::move(d));
  }
  CHECK_THROWS_AS(enumerate_models(too_many), TooManyProgramsError);
}

TEST_CASE("consistency reports export one record per program") {
  std::vector<Decl> l0;
  l0.push_back(programs::skip_decl());
  l0.push_back(programs::loop_decl());
  HaltMap good;
  good[encode(l0[0])] = true;
  good[encode(l0[1])] = false;
  ConsistencyReport r = check_model(l0, good);
  std::string rec = r.render_records();
  CHECK(rec.find("claimed=true observed=halts consistent=true") != std::string::npos);
  CHECK(rec.find("claimed=false observed=diverges consistent=true") != std::string::npos);
}

TEST_CASE("wrap_data folds the argument into the program") {
  ModuleAst m = parse("procedure Countdown(n) while n <> 0 do n := n - 1 end end");
  Decl t = wrap_data(m.decls[0], 0);
  CHECK(t.name == "T");
  CHECK(t.params.empty());

  ModuleAst with_t = clone(m);
  with_t.decls.push_back(clone(t));
  CheckedModule cm = check(with_t);
  Verdict vt = decide_halting(cm, "T");
  CHECK(vt.halts());

  // direct two-argument analysis gives the same classification
  Verdict direct = decide_halting_applied(cm, "Countdown", 0);
  CHECK(direct.classifies_halting() == vt.classifies_halting());
}

TEST_CASE("wrap_data validates arity") {
  CHECK_THROWS_AS(wrap_data(programs::skip_decl(), 1), ArityError);
  ModuleAst two = parse("procedure P(a, b) skip end");
  CHECK_THROWS_AS(wrap_data(two.decls[0], 1), ArityError);
}

TEST_CASE("wrap_ignore pads and protects against capture") {
  Decl u = wrap_ignore(programs::loop_decl(), "x");
  CHECK(u.params.size() == 1);

  ModuleAst m;
  m.decls.push_back(programs::loop_decl());
  m.decls.push_back(clone(u));
  CheckedModule cm = check(m);
  for (Word d : {0, 3, 7}) {
    Verdict v = decide_halting_applied(cm, "U", d);
    CHECK(v.diverges());
  }

  ModuleAst uses_x = parse("procedure P x := 1 end");
  CHECK_THROWS_AS(wrap_ignore(uses_x.decls[0], "x"), NameCaptureError);
  CHECK_THROWS_AS(wrap_ignore(programs::build_s1(), "S1"), NameCaptureError);
  ModuleAst with_param = parse("procedure P(a) skip end");
  CHECK_THROWS_AS(wrap_ignore(with_param.decls[0], "x"), ArityError);
}

TEST_CASE("reduction equivalence over a random corpus") {
  testgen::Rng rng(2024);
  testgen::CorpusParams params;
  params.max_stmts = 20;
  for (int i = 0; i < 12; ++i) {
    ModuleAst m = testgen::random_program_with_param(rng, params);
    Word d = static_cast<Word>(rng.range(0, 15));
    Decl t = wrap_data(m.decls[0], d);
    ModuleAst with_t = clone(m);
    with_t.decls.push_back(clone(t));
    CheckedModule cm = check(with_t, params.width_bits);
    Verdict direct = decide_halting_applied(cm, "P1", d);
    Verdict wrapped = decide_halting(cm, "T");
    REQUIRE(direct.decisive());
    CHECK(direct.classifies_halting() == wrapped.classifies_halting());
  }
  for (int i = 0; i < 12; ++i) {
    ModuleAst m = testgen::random_program(rng, params);
    Decl u = wrap_ignore(m.decls[0], "arg0");
    ModuleAst with_u = clone(m);
    with_u.decls.push_back(clone(u));
    CheckedModule cm = check(with_u, params.width_bits);
    Verdict direct = decide_halting(cm, "Main");
    Word d = static_cast<Word>(rng.range(0, 15));
    Verdict wrapped = decide_halting_applied(cm, "U", d);
    CHECK(direct.classifies_halting() == wrapped.classifies_halting());
  }
}
