#pragma once

#include <Eigen/Dense>

namespace steklov::detail {

/// Smallest `count` eigenpairs of a symmetric matrix (LAPACK dsyevr).
/// Eigenvectors are returned only when `vectors` is non-null.
Eigen::VectorXd smallest_eigenpairs(const Eigen::MatrixXd& a, int count, Eigen::MatrixXd* vectors);

}  // namespace steklov::detail
