#include "steklov/spectra.hpp"

#include "linalg.hpp"
#include "steklov/error.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

// Kress weights for the log(4 sin^2((t - tau)/2)) singularity. Circulant,
// so only the first row is stored: r[d] couples nodes i and i + d.
Eigen::VectorXd kress_weights(int n) {
  const int m = n / 2;
  Eigen::VectorXd r(n);
  for (int d = 0; d < n; ++d) {
    const double delta = 2.0 * kPi * d / n;
    double sum = 0.0;
    for (int k = 1; k < m; ++k) sum += std::cos(k * delta) / k;
    r[d] = -(2.0 * kPi / m) * sum - (kPi / (double(m) * m)) * ((d % 2 == 0) ? 1.0 : -1.0);
  }
  return r;
}

}  // namespace

Eigen::MatrixXd periodic_derivative(const Eigen::MatrixXd& samples) {
  const int n = static_cast<int>(samples.rows());
  Eigen::FFT<double> fft;
  Eigen::MatrixXd out(n, samples.cols());
  std::vector<double> col(n), back(n);
  std::vector<std::complex<double>> spec;
  for (int c = 0; c < samples.cols(); ++c) {
    for (int i = 0; i < n; ++i) col[i] = samples(i, c);
    fft.fwd(spec, col);
    spec.resize(n);
    for (int k = 0; k < n; ++k) {
      int freq = k <= n / 2 ? k : k - n;
      if (2 * k == n) freq = 0;  // drop the Nyquist mode
      spec[k] *= std::complex<double>(0.0, freq);
    }
    fft.inv(back, spec);
    for (int i = 0; i < n; ++i) out(i, c) = back[i];
  }
  return out;
}

double SteklovEigenfunctions::evaluate(int k, const Vec2& x) const {
  if (k < 0 || k >= density.cols()) throw Error(ErrorKind::UndefinedIndex, "eigenfunction index out of range");
  double u = 0.0;
  for (int j = 0; j < quad.size(); ++j) {
    const double r = (x - quad.points[j]).norm();
    u += -std::log(r / log_scale) / (2.0 * kPi) * density(j, k) * quad.weights[j];
  }
  return u;
}

SteklovSolution steklov_spectrum_2d(const DomainGeometry& domain, int n_modes, int n_disc) {
  if (domain.is_ball() || domain.ambient_dim() != 2)
    throw Error(ErrorKind::Precondition, "the Nystrom solver handles planar domains only");
  if (n_modes < 1) throw Error(ErrorKind::Precondition, "n_modes must be >= 1");
  if (n_disc % 2 != 0 || n_disc < 2 * n_modes + 2) {
    std::ostringstream msg;
    msg << "n_disc = " << n_disc << " must be even and at least 2 * n_modes + 2 = " << 2 * n_modes + 2;
    throw Error(ErrorKind::Precondition, msg.str());
  }
  const ParametricCurve& curve = domain.curve();
  const int n = n_disc;
  BoundaryQuadrature q = boundary_quadrature(curve, n);

  double radius = 0.0;
  for (const Vec2& p : q.points) radius = std::max(radius, p.norm());
  // the kernel -log(r / rho0) / 2pi with rho0 above the diameter keeps
  // the single-layer operator invertible even at logarithmic capacity 1
  const double rho0 = 8.0 * std::max(radius, 1e-300);

  const Eigen::VectorXd r = kress_weights(n);
  const double h = 2.0 * kPi / n;
  Eigen::MatrixXd s(n, n), d(n, n);
  for (int i = 0; i < n; ++i) {
    const Vec2& xi = q.points[i];
    const Vec2& nu = q.normals[i];
    for (int j = 0; j < n; ++j) {
      double m2, kp;
      if (i == j) {
        m2 = -std::log(q.speeds[i]) / (2.0 * kPi);
        kp = -q.curvatures[i] / (4.0 * kPi);
      } else {
        const Vec2 diff = xi - q.points[j];
        const double r2 = diff.squaredNorm();
        const double sn = std::sin(0.5 * (q.nodes[i] - q.nodes[j]));
        m2 = -std::log(r2 / (4.0 * sn * sn)) / (4.0 * kPi);
        kp = -diff.dot(nu) / (2.0 * kPi * r2);
      }
      const int dij = (j - i + n) % n;
      s(i, j) = (-r[dij] / (4.0 * kPi) + h * m2) * q.speeds[j] + std::log(rho0) / (2.0 * kPi) * q.weights[j];
      d(i, j) = kp * q.weights[j];
    }
    d(i, i) += 0.5;
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(s);
  const double rcond = lu.rcond();
  const double cond = rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(cond <= 1e12)) {
    std::ostringstream msg;
    msg << "single-layer condition estimate " << cond << " exceeds 1e12 at n_disc = " << n
        << "; try n_disc = " << n / 2;
    throw Error(ErrorKind::Discretization, msg.str());
  }
  const Eigen::MatrixXd s_inv = lu.inverse();
  const Eigen::MatrixXd dtn = d * s_inv;

  Eigen::VectorXd w(n), sw(n);
  for (int i = 0; i < n; ++i) {
    w[i] = q.weights[i];
    sw[i] = std::sqrt(w[i]);
  }
  Eigen::MatrixXd a = w.asDiagonal() * dtn;
  a = 0.5 * (a + a.transpose()).eval();

  SteklovSolution sol;
  sol.condition = cond;
  sol.rayleigh_zero = a.sum() / w.sum();

  // scaled problem B y = sigma y with B = W^{-1/2} A W^{-1/2}; deflate the
  // constant mode e = W^{1/2} 1 by a Householder reflection H e = |e| e_1
  Eigen::MatrixXd b = sw.cwiseInverse().asDiagonal() * a * sw.cwiseInverse().asDiagonal();
  Eigen::VectorXd v = sw;
  v[0] -= sw.norm();
  const double vv = v.squaredNorm();
  Eigen::MatrixXd hb = b;
  if (vv > 0) {
    // H B H with H = I - 2 v v^T / v^T v
    const Eigen::VectorXd bv = b * v;
    const double vbv = v.dot(bv);
    hb -= (2.0 / vv) * (v * bv.transpose() + bv * v.transpose());
    hb += (4.0 * vbv / (vv * vv)) * (v * v.transpose());
  }
  const Eigen::MatrixXd reduced = hb.bottomRightCorner(n - 1, n - 1);
  const int want = std::min(n_modes, n - 1);  // one extra value for group completeness
  Eigen::MatrixXd z;
  const Eigen::VectorXd evals = detail::smallest_eigenpairs(reduced, want, &z);

  if (evals.size() > 0 && evals[0] < -1e-6) {
    std::ostringstream msg;
    msg << "negative Steklov eigenvalue " << evals[0] << " on " << domain.id();
    throw Error(ErrorKind::SolverConsistency, msg.str());
  }

  SpectrumResult& spec = sol.spectrum;
  spec.kind = SpectrumKind::Steklov;
  spec.solver = SolverKind::NystromDtn;
  spec.discretization = n;
  spec.domain_ref = domain.id();
  spec.hypersurface_dim = 1;
  spec.boundary_measure = q.total_weight();
  spec.values.assign(1, std::max(0.0, sol.rayleigh_zero));
  for (int k = 0; k + 1 < n_modes; ++k) spec.values.push_back(std::max(0.0, evals[k]));
  assign_groups(spec);
  if (want == n_modes && n_modes >= 2) {
    const double last = evals[n_modes - 2], next = evals[n_modes - 1];
    spec.multiplicity_resolved = std::abs(next - last) > 1e-7 * std::max(1.0, std::abs(last));
  }

  // eigenvectors back in physical scaling, L^2(boundary)-orthonormal
  Eigen::MatrixXd y(n, n_modes);
  y.col(0) = sw / sw.norm();
  for (int k = 0; k + 1 < n_modes; ++k) {
    Eigen::VectorXd full(n);
    full[0] = 0.0;
    full.tail(n - 1) = z.col(k);
    if (vv > 0) full -= (2.0 * v.dot(full) / vv) * v;
    y.col(k + 1) = full;
  }
  SteklovEigenfunctions& ef = sol.eigenfunctions;
  ef.trace = sw.cwiseInverse().asDiagonal() * y;
  // fix signs so that the largest-magnitude node value is positive
  for (int k = 0; k < n_modes; ++k) {
    Eigen::Index idx;
    ef.trace.col(k).cwiseAbs().maxCoeff(&idx);
    if (ef.trace(idx, k) < 0) ef.trace.col(k) *= -1.0;
  }
  ef.normal_derivative = dtn * ef.trace;
  ef.density = s_inv * ef.trace;
  Eigen::VectorXd inv_speed(n);
  for (int i = 0; i < n; ++i) inv_speed[i] = 1.0 / q.speeds[i];
  ef.tangential_derivative = inv_speed.asDiagonal() * periodic_derivative(ef.trace);
  ef.log_scale = rho0;
  ef.quad = std::move(q);
  return sol;
}

}  // namespace steklov
