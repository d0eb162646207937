#pragma once

#include <string>
#include <string_view>

#include "haltlab/ast.hpp"

namespace haltlab {

/// Syntax-only parse of a module. Throws SyntaxError.
ModuleAst parse_module(std::string_view source, std::string source_name = "<memory>");

/// Parse and check: name resolution, kinds, arity, return paths,
/// definite assignment, enquiry purity. Throws SyntaxError, NameError,
/// KindError.
ModuleAst parse(std::string_view source, std::string source_name = "<memory>");

}  // namespace haltlab
