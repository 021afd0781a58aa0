#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace apgd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad caller input: NaN/Inf, dimension mismatch, out-of-range parameter
struct InvalidArgument : Error {
  using Error::Error;
};

// objective/gradient produced a non-finite value; `index` is the iteration
// (solvers) or coordinate (finite differences) where it happened
struct EvaluationError : Error {
  std::size_t index;
  EvaluationError(const std::string& msg, std::size_t idx) : Error(msg), index(idx) {}
};

// a documented invariant of a mutable object was violated
struct ContractViolation : Error {
  using Error::Error;
};

// a bracketing/bisection step could not be completed
struct NumericFailure : Error {
  using Error::Error;
};

// an iterative scheme hit its cycle budget; carries the last displacement
struct ConvergenceFailure : Error {
  double last_displacement;
  ConvergenceFailure(const std::string& msg, double disp) : Error(msg), last_displacement(disp) {}
};

// constraint data does not define a usable set (singular system, empty set)
struct IllPosedSet : Error {
  using Error::Error;
};

// malformed input text; `line` is 1-based
struct ParseError : Error {
  std::size_t line;
  ParseError(const std::string& msg, std::size_t ln) : Error(msg), line(ln) {}
};

} // namespace apgd
