#include "steklov/spectra.hpp"

#include "steklov/error.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <sstream>

namespace steklov {

SpectrumResult mfs_oracle_spectrum(const DomainGeometry& domain, int n_modes, int n_charges) {
  if (domain.is_ball() || domain.ambient_dim() != 2)
    throw Error(ErrorKind::Precondition, "the MFS oracle handles planar domains only");
  if (n_modes < 1 || n_charges < 8) throw Error(ErrorKind::Precondition, "MFS needs n_modes >= 1 and n_charges >= 8");
  const ParametricCurve& curve = domain.curve();
  const int nb = 4 * n_charges;
  const BoundaryQuadrature q = boundary_quadrature(curve, nb);

  Vec2 centroid = Vec2::Zero();
  for (int k = 0; k < nb; ++k) centroid += q.weights[k] * q.points[k];
  centroid /= q.total_weight();

  std::vector<Vec2> charges(n_charges);
  for (int j = 0; j < n_charges; ++j) {
    const double s = 2.0 * std::numbers::pi * (j + 0.5) / n_charges;
    charges[j] = centroid + 1.5 * (curve.position(s) - centroid);
  }

  // basis: 1 and log|x - z_j|, rows scaled by sqrt(w)
  const int m = n_charges + 1;
  Eigen::MatrixXd phi(nb, m), dphi(nb, m);
  for (int i = 0; i < nb; ++i) {
    const double sw = std::sqrt(q.weights[i]);
    phi(i, 0) = sw;
    dphi(i, 0) = 0.0;
    for (int j = 0; j < n_charges; ++j) {
      const Vec2 diff = q.points[i] - charges[j];
      phi(i, j + 1) = sw * std::log(diff.norm());
      dphi(i, j + 1) = sw * diff.dot(q.normals[i]) / diff.squaredNorm();
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(phi, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv[rank] > 1e-13 * sv[0]) ++rank;

  const Eigen::MatrixXd ur = svd.matrixU().leftCols(rank);
  const Eigen::MatrixXd vr = svd.matrixV().leftCols(rank);
  Eigen::MatrixXd a = ur.transpose() * dphi * vr * sv.head(rank).cwiseInverse().asDiagonal();
  a = 0.5 * (a + a.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);

  SpectrumResult spec;
  spec.kind = SpectrumKind::Steklov;
  spec.solver = SolverKind::MfsOracle;
  spec.discretization = n_charges;
  spec.domain_ref = domain.id();
  spec.hypersurface_dim = 1;
  spec.boundary_measure = q.total_weight();
  spec.reliable = rank >= 2 * n_modes + 1;
  const int count = std::min<int>(n_modes, rank);
  for (int k = 0; k < count; ++k) spec.values.push_back(std::max(0.0, es.eigenvalues()[k]));
  assign_groups(spec);
  return spec;
}

}  // namespace steklov
