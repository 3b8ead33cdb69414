#include "steklov/harmonic.hpp"

#include "steklov/error.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace steklov {

namespace {

using Complex = std::complex<double>;

Complex ipow(Complex z, int k) {
  Complex r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

struct BoundaryIntegrals {
  double normal_sq = 0;   // int (dv/dnu)^2
  double total_sq = 0;    // int |grad v|^2
  double energy = 0;      // int v dv/dnu
  double x_dot_grad = 0;  // int (dv/dnu)(x . grad v)
  double x_dot_nu = 0;    // int |grad v|^2 (x . nu)
};

BoundaryIntegrals curve_integrals(const BoundaryQuadrature& q, const HarmonicTestFunction& v) {
  BoundaryIntegrals bi;
  for (int k = 0; k < q.size(); ++k) {
    const Vec2& x = q.points[k];
    const Vec2 g = v.gradient(x);
    const double dn = g.dot(q.normals[k]);
    const double w = q.weights[k];
    bi.normal_sq += w * dn * dn;
    bi.total_sq += w * g.squaredNorm();
    bi.energy += w * v.value(x) * dn;
    bi.x_dot_grad += w * dn * x.dot(g);
    bi.x_dot_nu += w * g.squaredNorm() * x.dot(q.normals[k]);
  }
  return bi;
}

// S^2 of radius R in R^3: Gauss-Legendre in cos(theta), trapezoid in phi.
BoundaryIntegrals sphere_integrals(double R, const HarmonicTestFunction& v, int n) {
  const GaussRule g = gauss_legendre_unit(n / 2);
  BoundaryIntegrals bi;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double ct = 2.0 * g.nodes[i] - 1.0, st = std::sqrt(std::max(0.0, 1 - ct * ct));
    for (int j = 0; j < n; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n;
      Point nu(3);
      nu << st * std::cos(phi), st * std::sin(phi), ct;
      const Point x = R * nu;
      const double w = R * R * 2.0 * g.weights[i] * 2.0 * std::numbers::pi / n;
      const Point grad = v.gradient(x);
      const double dn = grad.dot(nu);
      bi.normal_sq += w * dn * dn;
      bi.total_sq += w * grad.squaredNorm();
      bi.energy += w * v.value(x) * dn;
      bi.x_dot_grad += w * dn * x.dot(grad);
      bi.x_dot_nu += w * grad.squaredNorm() * x.dot(nu);
    }
  }
  return bi;
}

PohozaevResult identity_field_residual(const DomainGeometry& domain, const HarmonicTestFunction& v, int n_boundary) {
  const int N = domain.hypersurface_dim();
  BoundaryIntegrals bi;
  if (!domain.is_ball()) {
    bi = curve_integrals(boundary_quadrature(domain.curve(), n_boundary), v);
  } else if (domain.ambient_dim() == 2) {
    bi = curve_integrals(boundary_quadrature(ParametricCurve(Circle{domain.ball().radius}), n_boundary), v);
  } else if (domain.ambient_dim() == 3) {
    bi = sphere_integrals(domain.ball().radius, v, n_boundary);
  } else {
    throw Error(ErrorKind::Precondition, "identity-field Pohozaev check supports balls in R^2 and R^3 only");
  }
  PohozaevResult r;
  r.dirichlet_energy = bi.energy;
  r.boundary_terms = bi.x_dot_grad - 0.5 * bi.x_dot_nu;
  // div F = N+1 and DF = I
  r.volume_terms = 0.5 * (N + 1) * bi.energy - bi.energy;
  r.residual = r.boundary_terms + r.volume_terms;
  return r;
}

PohozaevResult tubular_field_residual(const DomainGeometry& domain, const HarmonicTestFunction& v, int n_boundary,
                                      int n_normal, double h, std::optional<double> h_bar) {
  const TubularQuadrature tq = tubular_quadrature(domain, h, n_boundary, n_normal, h_bar);
  const BoundaryIntegrals bi = curve_integrals(tq.boundary, v);

  // F = h nu on the boundary
  PohozaevResult r;
  r.dirichlet_energy = bi.energy;
  r.boundary_terms = h * bi.normal_sq - 0.5 * h * bi.total_sq;

  double volume = 0;
  for (int i = 0; i < tq.size(); ++i) {
    const int k = tq.boundary_index[i];
    const double s = tq.depth[i];
    const double kappa = tq.boundary.curvatures[k];
    const double rho = (h - s) * kappa / (1.0 - s * kappa);
    const Vec2 g = v.gradient(tq.points[i]);
    const double g_nu = g.dot(tq.boundary.normals[k]);
    const double g_tau = g.dot(tq.boundary.tangents[k]);
    // D^2 eta = nu nu^T + rho tau tau^T
    const double trace = 1.0 + rho;
    const double quad = g_nu * g_nu + rho * g_tau * g_tau;
    volume += tq.weights[i] * (g.squaredNorm() * trace - 2.0 * quad);
  }
  r.volume_terms = 0.5 * volume;
  r.residual = r.boundary_terms + r.volume_terms;
  return r;
}

}  // namespace

HarmonicTestFunction::HarmonicTestFunction(Part part, int degree, int ambient_dim)
    : part_(part), degree_(degree), dim_(ambient_dim) {
  if (degree < 0) throw Error(ErrorKind::Precondition, "harmonic polynomial degree must be >= 0");
  if (ambient_dim < 2) throw Error(ErrorKind::Precondition, "ambient dimension must be >= 2");
}

double HarmonicTestFunction::value(const Vec2& x) const {
  const Complex z = ipow(Complex(x.x(), x.y()), degree_);
  return part_ == Part::Real ? z.real() : z.imag();
}

Vec2 HarmonicTestFunction::gradient(const Vec2& x) const {
  if (degree_ == 0) return Vec2::Zero();
  const Complex dz = static_cast<double>(degree_) * ipow(Complex(x.x(), x.y()), degree_ - 1);
  // d/dx1 z^k = k z^{k-1}, d/dx2 z^k = i k z^{k-1}
  if (part_ == Part::Real) return {dz.real(), -dz.imag()};
  return {dz.imag(), dz.real()};
}

double HarmonicTestFunction::value(const Point& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::Precondition, "point dimension mismatch");
  return value(Vec2(x(0), x(1)));
}

Point HarmonicTestFunction::gradient(const Point& x) const {
  if (x.size() != dim_) throw Error(ErrorKind::Precondition, "point dimension mismatch");
  const Vec2 g = gradient(Vec2(x(0), x(1)));
  Point out = Point::Zero(dim_);
  out(0) = g.x();
  out(1) = g.y();
  return out;
}

std::string HarmonicTestFunction::name() const {
  std::ostringstream s;
  s << (part_ == Part::Real ? "Re" : "Im") << "(z^" << degree_ << ")";
  return s.str();
}

GradientSplit boundary_gradient_split(const ParametricCurve& curve, const HarmonicTestFunction& v, double t) {
  const Vec2 x = curve.position(t);
  const Vec2 g = v.gradient(x);
  const double gt = g.dot(unit_tangent(curve, t));
  const double gn = g.dot(outward_normal(curve, t));
  return {gt * gt, gn * gn, g.squaredNorm()};
}

BoundaryTrace boundary_trace(const BoundaryQuadrature& quad, const HarmonicTestFunction& v) {
  BoundaryTrace tr;
  const int n = quad.size();
  tr.value.resize(n);
  tr.normal_derivative.resize(n);
  tr.tangential_derivative.resize(n);
  for (int k = 0; k < n; ++k) {
    const Vec2 g = v.gradient(quad.points[k]);
    tr.value[k] = v.value(quad.points[k]);
    tr.normal_derivative[k] = g.dot(quad.normals[k]);
    tr.tangential_derivative[k] = g.dot(quad.tangents[k]);
  }
  return tr;
}

PohozaevResult pohozaev_residual(const DomainGeometry& domain, const HarmonicTestFunction& v, PohozaevField field,
                                 int n_boundary, int n_normal, std::optional<double> h, std::optional<double> h_bar,
                                 double rel_tol) {
  if (v.ambient_dim() != domain.ambient_dim())
    throw Error(ErrorKind::Precondition, "test function and domain dimensions differ");
  auto evaluate = [&](int nb, int nn) {
    if (field == PohozaevField::Identity) return identity_field_residual(domain, v, nb);
    if (!h) throw Error(ErrorKind::Precondition, "the tubular field needs a radius h");
    return tubular_field_residual(domain, v, nb, nn, *h, h_bar);
  };
  const PohozaevResult coarse = evaluate(n_boundary, n_normal);
  PohozaevResult fine = evaluate(2 * n_boundary, 2 * n_normal);
  fine.coarse_residual = coarse.residual;
  const double scale = std::max(std::abs(fine.dirichlet_energy), 1e-300);
  if (std::abs(fine.residual - coarse.residual) > 10.0 * rel_tol * scale) {
    std::ostringstream msg;
    msg << "Pohozaev residual changed from " << coarse.residual << " to " << fine.residual
        << " on refinement; increase n_boundary/n_normal";
    throw Error(ErrorKind::UnderResolved, msg.str());
  }
  return fine;
}

NormEquivalenceVerdict norm_equivalence_check(const BoundaryQuadrature& quad, const BoundaryTrace& trace, double c,
                                              std::optional<double> c_alt) {
  const int n = quad.size();
  if (static_cast<int>(trace.value.size()) != n)
    throw Error(ErrorKind::Precondition, "trace and quadrature sizes differ");
  double mass = 0, tang = 0, norm = 0, energy = 0;
  for (int k = 0; k < n; ++k) {
    const double w = quad.weights[k];
    mass += w * trace.value[k] * trace.value[k];
    tang += w * trace.tangential_derivative[k] * trace.tangential_derivative[k];
    norm += w * trace.normal_derivative[k] * trace.normal_derivative[k];
    energy += w * trace.value[k] * trace.normal_derivative[k];
  }
  if (!(mass > 1e-28)) throw Error(ErrorKind::Normalization, "zero boundary trace cannot be normalized");

  NormEquivalenceVerdict v;
  v.tangential = tang / mass;
  v.normal = norm / mass;
  v.energy = energy / mass;
  v.vacuous = v.tangential + v.normal < 1e-20;
  const double root_normal = std::sqrt(v.normal);
  v.margin_tangential = v.normal + 2.0 * c * root_normal - v.tangential;
  v.margin_normal = c + std::sqrt(c * c + v.tangential) - root_normal;
  if (c_alt) {
    const double ca = *c_alt;
    const double rhs = ca + std::sqrt(ca * ca + v.tangential);
    v.margin_energy_alt = rhs - v.energy;
    v.margin_normal_alt = rhs - root_normal;
  }
  return v;
}

double pohozaev_quadratic_form(const Eigen::MatrixXd& hessian, const Eigen::VectorXd& g) {
  return g.squaredNorm() * hessian.trace() - 2.0 * g.dot(hessian * g);
}

}  // namespace steklov
