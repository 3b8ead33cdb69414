#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace steklov {

enum class ErrorKind {
  Regularity,           // degenerate tangent
  InvalidCurve,         // not closed, not simple, bad parameters
  ReachEstimation,
  DomainMembership,
  GeometricConsistency, // 1 - d0*kappa <= 0
  ReachViolation,       // h >= h_bar
  Normalization,
  UnderResolved,
  Discretization,
  SolverConsistency,
  OracleUnreliable,
  Precondition,
  UndefinedIndex,
  Truncation,
  Mismatch,
  Config,
  UnknownDomain,
};

std::string_view to_string(ErrorKind kind);

/// Every module reports failures through this one exception type; `kind()`
/// lets the CLI map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace steklov
