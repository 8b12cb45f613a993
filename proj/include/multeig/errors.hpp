#ifndef MULTEIG_ERRORS_HPP
#define MULTEIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace multeig {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent problem files.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Violated mathematical preconditions (singular derivative, degenerate
/// degree, distance already zero, ...).
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Internal consistency failures: quantities that are guaranteed by theory
/// came out wrong, which signals a broken upstream computation.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

}  // namespace multeig

#endif
