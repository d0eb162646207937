#include <doctest.h>

#include <algorithm>
#include <set>

#include "haltlab/check.hpp"
#include "haltlab/encode.hpp"
#include "haltlab/parser.hpp"
#include "haltlab/pretty.hpp"
#include "haltlab/programs.hpp"
#include "support/gen.hpp"

using namespace haltlab;

TEST_CASE("minimal program parses") {
  ModuleAst m = parse("procedure Skip skip end");
  REQUIRE(m.decls.size() == 1);
  const Decl& d = m.decls[0];
  CHECK(d.name == "Skip");
  CHECK(d.kind == DeclKind::Procedure);
  REQUIRE(d.body.size() == 1);
  CHECK(std::holds_alternative<SkipStmt>(d.body[0].node));
  CHECK(equal(d, programs::skip_decl()));
}

TEST_CASE("nonterminating loop parses") {
  ModuleAst m = parse("procedure Loop while true do skip end end");
  REQUIRE(m.decls.size() == 1);
  const auto* w = std::get_if<WhileStmt>(&m.decls[0].body[0].node);
  REQUIRE(w != nullptr);
  const auto* g = std::get_if<BoolLit>(&w->guard->node);
  REQUIRE(g != nullptr);
  CHECK(g->value == true);
  CHECK(equal(m.decls[0], programs::loop_decl()));
}

TEST_CASE("the paradox shape parses") {
  // standalone, the shape is syntax-checkable; resolution of Loop needs
  // the rest of the set, covered below
  ModuleAst m = parse_module("procedure S if H(code(S)) then Loop() end end");
  REQUIRE(m.decls.size() == 1);
  CHECK(equal(m.decls[0], programs::build_s("H", "Loop")));

  ModuleAst l1 = programs::l1_module();
  ModuleAst reparsed = parse(pretty(l1), "<l1>");
  CHECK(equal(reparsed, l1));
}

TEST_CASE("comments and separators") {
  ModuleAst m = parse(
      "-- a comment line\n"
      "procedure P\n"
      "  x := 1; y := x + 2 -- trailing comment\n"
      "  skip\n"
      "end\n");
  CHECK(m.decls[0].body.size() == 3);
}

TEST_CASE("syntax errors carry position and expectations") {
  try {
    parse("procedure P if x 1 end end");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.loc().line == 1);
    CHECK(e.loc().col > 1);
    CHECK(!e.expected().empty());
  }
  CHECK_THROWS_AS(parse("procedure"), SyntaxError);
  CHECK_THROWS_AS(parse("procedure P skip"), SyntaxError);
  CHECK_THROWS_AS(parse("procedure P x : = 1 end"), SyntaxError);
  CHECK_THROWS_AS(parse("procedure P error(\"unterminated) end"), SyntaxError);
  CHECK_THROWS_AS(parse("procedure P x := 99999999999999999999999 end"), SyntaxError);
}

TEST_CASE("absurd nesting is rejected, not crashed on") {
  std::string deep = "procedure P x := ";
  for (int i = 0; i < 3000; ++i) deep += "(";
  deep += "1";
  for (int i = 0; i < 3000; ++i) deep += ")";
  deep += " end";
  CHECK_THROWS_AS(parse(deep), SyntaxError);

  std::string deep_stmt = "procedure P ";
  for (int i = 0; i < 3000; ++i) deep_stmt += "while true do ";
  deep_stmt += "skip";
  for (int i = 0; i < 3000; ++i) deep_stmt += " end";
  deep_stmt += " end";
  CHECK_THROWS_AS(parse(deep_stmt), SyntaxError);
}

TEST_CASE("name and kind checks") {
  CHECK_THROWS_AS(parse("procedure P Q() end"), NameError);         // unresolved call
  CHECK_THROWS_AS(parse("procedure P x := code(Q) end"), NameError);  // unresolved code
  CHECK_THROWS_AS(parse("procedure P skip end procedure P skip end"), NameError);
  CHECK_THROWS_AS(parse("procedure P x := y end"), NameError);  // read before assignment
  CHECK_THROWS_AS(parse("enquiry E return(x) end"), NameError);

  // procedure used as enquiry and the reverse
  CHECK_THROWS_AS(parse("procedure P skip end procedure Q x := P() end"), KindError);
  CHECK_THROWS_AS(parse("enquiry E return(1) end procedure Q E() end"), KindError);
  // return outside an enquiry
  CHECK_THROWS_AS(parse("procedure P return(1) end"), KindError);
  // arity
  CHECK_THROWS_AS(parse("procedure P(a) skip end procedure Q P() end"), KindError);
  CHECK_THROWS_AS(parse("procedure Q x := InS1(1) end"), KindError);
  // guards must be boolean
  CHECK_THROWS_AS(parse("procedure P if 1 then skip end end"), KindError);
  CHECK_THROWS_AS(parse("procedure P while code(P) do skip end end"), KindError);
  // declaration names are not variables
  CHECK_THROWS_AS(parse("procedure P P := 1 end"), KindError);
  CHECK_THROWS_AS(parse("procedure P x := H1 end"), KindError);
}

TEST_CASE("enquiries must return on every path") {
  CHECK_THROWS_AS(parse("enquiry E skip end"), KindError);
  CHECK_THROWS_AS(parse("enquiry E if true then return(1) end end"), KindError);
  CHECK_NOTHROW(parse("enquiry E if true then return(1) else return(2) end end"));
  CHECK_NOTHROW(parse("enquiry E while true do skip end return(1) end"));
  // the error channel counts as an exit
  CHECK_NOTHROW(parse("enquiry E if true then return(1) else error(\"no\") end end"));
}

TEST_CASE("enquiry purity is structural") {
  // an enquiry may keep local scratch state
  CHECK_NOTHROW(parse("enquiry E x := 1 x := x + 1 return(x) end"));
  // but cannot write to anything that is not its own frame: the only
  // non-local names are declarations, and those are rejected
  CHECK_THROWS_AS(parse("procedure P skip end enquiry E P := 2 return(1) end"), KindError);
}

TEST_CASE("pretty round trip on canonical programs") {
  for (const ModuleAst& m :
       {programs::l0_module(), programs::l1_module(), programs::l2_module()}) {
    ModuleAst again = parse(pretty(m));
    CHECK(equal(again, m));
    CHECK(pretty(again) == pretty(m));
  }
}

TEST_CASE("pretty round trip on a fuzz corpus") {
  testgen::Rng rng(20260811);
  for (int i = 0; i < 200; ++i) {
    ModuleAst m = testgen::random_module(rng);
    ModuleAst again = parse(pretty(m), "<fuzz>");
    REQUIRE(equal(again, m));
    REQUIRE(pretty(again) == pretty(m));
  }
}

TEST_CASE("pretty normalizes whitespace deterministically") {
  ModuleAst a = parse("procedure P   if true\n then skip\n\n end end");
  ModuleAst b = parse("procedure P if true then skip end end");
  CHECK(pretty(a) == pretty(b));
}

TEST_CASE("expression precedence and parentheses survive the round trip") {
  const char* src =
      "enquiry E\n"
      "  x := (1 + 2) * 3\n"
      "  y := 1 + 2 * 3\n"
      "  return(x + y)\n"
      "end\n";
  ModuleAst m = parse(src);
  ModuleAst again = parse(pretty(m));
  REQUIRE(equal(again, m));
  // nested comparisons need parentheses, flat chains do not
  ModuleAst c = parse("enquiry F return((1 < 2) = (3 < 4)) end");
  CHECK(equal(parse(pretty(c)), c));
}

TEST_CASE("encoding separates distinct programs and inverts") {
  ProgramCode skip_code = encode(programs::skip_decl());
  ProgramCode loop_code = encode(programs::loop_decl());
  CHECK(skip_code != loop_code);
  CHECK(skip_code.hex() != loop_code.hex());

  Decl s1 = programs::build_s1();
  CHECK(equal(decode(encode(s1)), s1));
  CHECK(equal(decode(encode(programs::loop_decl())), programs::loop_decl()));
}

TEST_CASE("decode rejects malformed bytes") {
  ProgramCode c = encode(programs::build_s1());
  ProgramCode truncated{c.bytes.substr(0, c.bytes.size() - 3)};
  CHECK_THROWS_AS(decode(truncated), DecodeError);
  ProgramCode trailing{c.bytes + "x"};
  CHECK_THROWS_AS(decode(trailing), DecodeError);
  CHECK_THROWS_AS(decode(ProgramCode{"\xff"}), DecodeError);
  CHECK_THROWS_AS(decode(ProgramCode{""}), DecodeError);
}

TEST_CASE("encoding is injective over a fuzz corpus") {
  testgen::Rng rng(7);
  std::vector<std::pair<std::string, const Decl*>> seen;
  std::vector<ModuleAst> keep;
  keep.reserve(60);
  for (int i = 0; i < 60; ++i) keep.push_back(testgen::random_module(rng));
  std::set<std::string> codes;
  std::vector<Decl> decls;
  for (const auto& m : keep)
    for (const auto& d : m.decls) decls.push_back(clone(d));
  int dup_structural = 0;
  for (std::size_t i = 0; i < decls.size(); ++i) {
    ProgramCode c = encode(decls[i]);
    CHECK(equal(decode(c), decls[i]));
    if (!codes.insert(c.bytes).second) {
      // same code must mean same declaration
      bool found_equal = false;
      for (std::size_t j = 0; j < i; ++j)
        if (encode(decls[j]).bytes == c.bytes && equal(decls[j], decls[i]))
          found_equal = true;
      CHECK(found_equal);
      ++dup_structural;
    }
  }
  CHECK(codes.size() + dup_structural == decls.size());
}

TEST_CASE("codes render as lowercase hex") {
  std::string h = encode(programs::skip_decl()).hex();
  CHECK(!h.empty());
  CHECK(h.find_first_not_of("0123456789abcdef") == std::string::npos);
}
