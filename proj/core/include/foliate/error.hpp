#pragma once

#include <stdexcept>
#include <string>

namespace foliate {

/// Malformed or inconsistent input (dimension mismatch, bad partition, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The bracket table violates the Jacobi identity.
class InvalidAlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A family parameter set violates one of the family's defining relations.
/// `relation()` names the relation, e.g. "x1 = y2".
class ConstraintError : public InputError {
 public:
  ConstraintError(std::string relation, const std::string& detail)
      : InputError(detail), relation_(std::move(relation)) {}

  const std::string& relation() const noexcept { return relation_; }

 private:
  std::string relation_;
};

/// A setup document could not be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace foliate
