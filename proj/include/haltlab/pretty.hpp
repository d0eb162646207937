#pragma once

#include <string>

#include "haltlab/ast.hpp"

namespace haltlab {

/// Canonical source rendering: two-space indentation, one statement per
/// line, minimal parentheses. parse(pretty(m)) is structurally equal to m.
std::string pretty(const ModuleAst& m);
std::string pretty(const Decl& d);
std::string pretty(const Expr& e);

}  // namespace haltlab
