#include "linalg.hpp"

#include "steklov/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>
#include <vector>

namespace steklov::detail {

Eigen::VectorXd smallest_eigenpairs(const Eigen::MatrixXd& a, int count, Eigen::MatrixXd* vectors) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  count = std::min<int>(count, n);
  Eigen::MatrixXd work = a;  // column-major, overwritten by dsyevr
  lapack_int found = 0;
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z;
  std::vector<lapack_int> support(2 * std::max(count, 1));
  if (vectors) z.resize(n, count);
  const lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'I', 'U', n, work.data(), n, 0.0,
                                         0.0, 1, count, 0.0, &found, w.data(), vectors ? z.data() : nullptr,
                                         n, support.data());
  if (info != 0 || found != count)
    throw Error(ErrorKind::SolverConsistency, "dsyevr failed with info " + std::to_string(info));
  if (vectors) *vectors = std::move(z);
  return w.head(count);
}

}  // namespace steklov::detail
