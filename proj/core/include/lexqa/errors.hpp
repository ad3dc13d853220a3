#pragma once

#include <stdexcept>
#include <string>

namespace lexqa {

// Base for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (JSON, CoNLL-U, N-Triples, SPARQL text).
// `line` is 1-based, 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Dependency structure that is not a single-rooted tree.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A SPARQL construct outside the supported subset.
class UnsupportedFeature : public Error {
 public:
  using Error::Error;
};

// Remote endpoint or subprocess communication failure.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int attempts)
      : Error(what + " (after " + std::to_string(attempts) + " attempt(s))"),
        attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

// A wall-clock budget ran out.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A final DUDES that cannot be turned into a query.
class QueryGenerationError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lexqa
