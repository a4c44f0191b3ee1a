#pragma once

#include <stdexcept>
#include <string>

namespace pvforms {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Evaluation outside the physical domain (nonpositive pressure or volume).
struct DomainError : Error {
  explicit DomainError(const std::string &msg) : Error(msg) {}
};

// A symbol is missing from the symbol table.
struct UnknownSymbolError : Error {
  explicit UnknownSymbolError(const std::string &msg) : Error(msg) {}
};

// Potential reconstruction was asked for a 1-form that is not closed.
struct NotClosedError : Error {
  explicit NotClosedError(const std::string &msg) : Error(msg) {}
};

// A closed input whose potential falls outside the representable grammar.
struct NotIntegrableError : Error {
  explicit NotIntegrableError(const std::string &msg) : Error(msg) {}
};

// Segment kind does not match its endpoints (e.g. isochoric with dV != 0).
struct InconsistentKindError : Error {
  explicit InconsistentKindError(const std::string &msg) : Error(msg) {}
};

// Malformed text input; carries a 1-based line (or column) number.
struct ParseError : Error {
  long line;
  ParseError(const std::string &msg, long line_) : Error(msg), line(line_) {}
};

// Structurally well-formed data that violates a semantic constraint.
struct ValidationError : Error {
  explicit ValidationError(const std::string &msg) : Error(msg) {}
};

// A numeric computation produced inf or NaN.
struct NonFiniteError : Error {
  explicit NonFiniteError(const std::string &msg) : Error(msg) {}
};

// Bad command line or config file; maps to exit code 2 in the CLI.
struct ConfigError : Error {
  explicit ConfigError(const std::string &msg) : Error(msg) {}
};

} // namespace pvforms
