#pragma once

#include <stdexcept>
#include <string>

#include "pact/report.hpp"

namespace pact {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input refers to something that does not exist (dangling element, point
/// outside a carrier, malformed table). Distinct from an axiom violation.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that fails a validator; carries the full report.
class ValidationError : public Error {
 public:
  ValidationError(std::string what, ValidationReport report)
      : Error(std::move(what)), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// An operation was called outside its stated hypothesis.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A checked mathematical invariant failed on validated input. This means
/// either a construction bug or a counterexample; never swallowed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace pact
