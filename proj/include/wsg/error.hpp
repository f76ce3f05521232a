#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wsg {

/// Failure categories surfaced by the library. The CLI maps
/// `ResourceBudgetExceeded` to exit code 2 and everything else to 1.
enum class ErrorKind {
  BadType,
  BadExponent,
  ArityMismatch,
  NotASemigroup,
  InternalConsistency,
  ResourceBudgetExceeded,
  SolverIncomplete,
  NodeCountMismatch,
  RankDeficient,
  PreconditionFailed,
  NoSeparatingDirection,
  NewtonDiverged,
  DeletedNodePersists,
  SemigroupMismatch,
  IncompatibleSemigroup,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wsg
