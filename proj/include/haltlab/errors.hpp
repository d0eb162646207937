#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace haltlab {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

/// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(std::string msg) : std::runtime_error(std::move(msg)) {}
};

/// Malformed source text. Carries the position and the token set the
/// parser would have accepted there.
class SyntaxError : public Error {
public:
  SyntaxError(SourceLoc loc, std::string msg, std::vector<std::string> expected = {})
      : Error(format(loc, msg, expected)), loc_(loc), expected_(std::move(expected)) {}

  SourceLoc loc() const { return loc_; }
  const std::vector<std::string>& expected() const { return expected_; }

private:
  static std::string format(SourceLoc loc, const std::string& msg,
                            const std::vector<std::string>& expected) {
    std::string s = std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " + msg;
    if (!expected.empty()) {
      s += " (expected ";
      for (size_t i = 0; i < expected.size(); ++i) {
        if (i) s += ", ";
        s += expected[i];
      }
      s += ")";
    }
    return s;
  }
  SourceLoc loc_;
  std::vector<std::string> expected_;
};

/// Unresolved or duplicate names, use-before-assignment.
class NameError : public Error {
public:
  using Error::Error;
};

/// Procedure/enquiry misuse: wrong kind at a call site, bad arity,
/// return outside an enquiry, an enquiry that may fall off the end.
class KindError : public Error {
public:
  using Error::Error;
};

/// Bytes that do not decode back to a declaration.
class DecodeError : public Error {
public:
  using Error::Error;
};

/// Interpreter misuse: broken harness input, not toy-language semantics.
/// Distinct from the language's error statement, which is an Outcome.
class RuntimeError : public Error {
public:
  using Error::Error;
};

class ArityError : public Error {
public:
  using Error::Error;
};

class NameCaptureError : public Error {
public:
  using Error::Error;
};

class MissingKeyError : public Error {
public:
  using Error::Error;
};

class TooManyProgramsError : public Error {
public:
  using Error::Error;
};

class BudgetOverflowError : public Error {
public:
  using Error::Error;
};

class ShapeError : public Error {
public:
  using Error::Error;
};

class TooManyUnknownsError : public Error {
public:
  using Error::Error;
};

class SearchOverflowError : public Error {
public:
  using Error::Error;
};

class FamilyTooLargeError : public Error {
public:
  using Error::Error;
};

}  // namespace haltlab
