#ifndef PHISUM_ERRORS_H_
#define PHISUM_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace phisum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

// Structurally invalid automaton.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class CycleError : public ValidationError {
 public:
  explicit CycleError(std::vector<std::string> cycle);
  // State names along the cycle; the first state is repeated at the end.
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class DuplicateFailureArc : public ValidationError {
 public:
  explicit DuplicateFailureArc(const std::string& state);
};

class ReservedSymbolError : public ValidationError {
 public:
  explicit ReservedSymbolError(const std::string& symbol);
};

// An algorithm needs an operation the semiring does not provide.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class UnderflowError : public Error {
 public:
  using Error::Error;
};

// --assert-compatible was given and the order is not compatible.
class IncompatibleOrderError : public Error {
 public:
  using Error::Error;
};

class PathBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace phisum

#endif  // PHISUM_ERRORS_H_
