#include "steklov/error.hpp"

namespace steklov {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Regularity: return "regularity error";
    case ErrorKind::InvalidCurve: return "invalid curve";
    case ErrorKind::ReachEstimation: return "reach-estimation failure";
    case ErrorKind::DomainMembership: return "domain-membership error";
    case ErrorKind::GeometricConsistency: return "geometric-consistency error";
    case ErrorKind::ReachViolation: return "reach violation";
    case ErrorKind::Normalization: return "normalization error";
    case ErrorKind::UnderResolved: return "under-resolved quadrature";
    case ErrorKind::Discretization: return "discretization error";
    case ErrorKind::SolverConsistency: return "solver-consistency error";
    case ErrorKind::OracleUnreliable: return "oracle unreliable";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::UndefinedIndex: return "undefined index";
    case ErrorKind::Truncation: return "truncation error";
    case ErrorKind::Mismatch: return "mismatch error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::UnknownDomain: return "unknown domain";
  }
  return "error";
}

}  // namespace steklov
