#pragma once

#include <random>
#include <string>
#include <vector>

#include "haltlab/ast.hpp"

namespace haltlab {
namespace testgen {

struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {  // inclusive
    return lo + eng() % (hi - lo + 1);
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng) < p;
  }
};

struct CorpusParams {
  int width_bits = 4;
  int max_vars = 3;
  int min_stmts = 3;
  int max_stmts = 40;
  int max_depth = 3;
};

/// A random single-procedure module ("Main", parameterless, call-free,
/// integer variables only). Always passes the static checks; halting is
/// genuinely undetermined until analyzed.
ModuleAst random_program(Rng& rng, const CorpusParams& params = {});

/// Like random_program, but "P1" takes one parameter that the body reads,
/// so halting can depend on the argument.
ModuleAst random_program_with_param(Rng& rng, const CorpusParams& params = {});

/// A random module exercising the full grammar: procedures, enquiries with
/// returns, calls, code literals, error statements. Checkable by
/// construction (acyclic calls, assign-before-use, typed expressions).
ModuleAst random_module(Rng& rng);

}  // namespace testgen
}  // namespace haltlab
