#pragma once

#include <compare>
#include <string>

#include "haltlab/ast.hpp"

namespace haltlab {

/// Canonical encoding of a declaration: a byte string whose big-endian
/// reading is the program's number. Distinct declarations get distinct
/// codes, and the original declaration is recoverable.
struct ProgramCode {
  std::string bytes;

  std::string hex() const;  // lowercase hex, the display form
  auto operator<=>(const ProgramCode&) const = default;
};

ProgramCode encode(const Decl& d);

/// Inverse of encode. Throws DecodeError on malformed or trailing bytes.
Decl decode(const ProgramCode& c);

}  // namespace haltlab
