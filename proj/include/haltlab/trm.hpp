#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "haltlab/ast.hpp"

namespace haltlab {
namespace trm {

/// Symbolic termination terms. trm(P) is the termination predicate of
/// program P; halt(H, P) is the halt test H applied to P. TrmIf is the
/// intermediate form trm(if g then T end) the rewrite rule consumes.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind : std::uint8_t {
    Const,
    Unknown,
    Not,
    Or,
    Implies,
    Iff,
    TrmOf,
    HaltOf,
    TrmIf,
  };
  Kind kind = Kind::Const;
  bool value = false;       // Const
  std::string name;         // Unknown; TrmOf/HaltOf program; HaltOf stores test in `test`
  std::string test;         // HaltOf only
  TermPtr a;                // unary / left / TrmIf guard
  TermPtr b;                // right / TrmIf branch
};

TermPtr constant(bool v);
TermPtr unknown(std::string name);
TermPtr negation(TermPtr t);
TermPtr disjunction(TermPtr l, TermPtr r);
TermPtr implication(TermPtr l, TermPtr r);
TermPtr equivalence(TermPtr l, TermPtr r);
TermPtr trm_of(std::string program);
TermPtr halt_of(std::string test, std::string program);
TermPtr trm_if(TermPtr guard, TermPtr branch);

bool equal(const TermPtr& x, const TermPtr& y);
std::string render(const TermPtr& t);

/// Assumption set behind the calculus: the canonical diverging program,
/// the specified halt test, and whether the halt test is assumed to
/// terminate (rule (1) needs termination of the guard).
struct Facts {
  std::string loop_name = "Loop";
  std::string halt_test = "H";
  bool assume_trm_h = true;
};

struct TrmEquation {
  TermPtr left;
  TermPtr right;
};

struct DerivationStep {
  TermPtr before;
  TermPtr after;
  std::string justification;
};

struct Determined {
  bool value = false;
};
struct NoSolution {
  std::vector<DerivationStep> derivation;
};
struct Underdetermined {};

struct TrmVerdict {
  std::variant<Determined, NoSolution, Underdetermined> v;

  bool determined() const { return v.index() == 0; }
  bool no_solution() const { return v.index() == 1; }
  bool underdetermined() const { return v.index() == 2; }
  const Determined& as_determined() const { return std::get<Determined>(v); }
  const NoSolution& as_no_solution() const { return std::get<NoSolution>(v); }
};

/// trm(P) for P of shape `if g then T end` unfolds through rule (1) to
/// ¬g ∨ (g ⇒ trm(T)). Throws ShapeError for any other body shape, or
/// when the guard's own termination is not available.
TermPtr trm_apply_rule1(const ModuleAst& m, const TermPtr& t, const Facts& facts = {});

/// One rewrite to normal form under the fact set: trm(Loop) is false,
/// halt(H, P) means trm(P), plus propositional simplification.
TermPtr trm_simplify(const TermPtr& t, const Facts& facts = {});

constexpr std::size_t kMaxUnknowns = 16;

/// Exhaustive finite solver. Queried defaults to the first atom of the
/// left side. Throws TooManyUnknownsError above kMaxUnknowns atoms.
TrmVerdict solve_iff(const TrmEquation& e,
                     const std::optional<std::string>& queried = std::nullopt);

/// The full derivation for S: six labelled steps from trm(S) to ¬trm(S),
/// then the solver verdict for trm(S) ⇔ ¬trm(S). With assume_trm_h off
/// the chain stops after the definition step and the verdict stays
/// underdetermined.
struct SAnalysis {
  std::vector<DerivationStep> steps;
  std::optional<TrmEquation> equation;
  TrmVerdict verdict;
  std::string stopped;  // nonempty when rule (1) was inapplicable
};

SAnalysis derive_s_contradiction(bool assume_trm_h = true);

}  // namespace trm
}  // namespace haltlab
