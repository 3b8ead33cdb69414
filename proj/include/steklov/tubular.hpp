#pragma once

#include "steklov/geometry.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace steklov {

using Point = Eigen::VectorXd;

enum class ReachMethod { ConvexRolling, InjectivitySampling, AnalyticBall };
std::string to_string(ReachMethod m);

/// Maximal tubular radius of Omega. Downstream checks consume
/// `certified_lower`, the largest radius at which injectivity was verified.
struct ReachEstimate {
  double h_bar = 0.0;
  ReachMethod method = ReachMethod::ConvexRolling;
  int sample_density = 0;
  double certified_lower = 0.0;
};

/// Convex domains and balls: 1/K_inf. Otherwise bisection on the
/// injectivity of (y, s) -> y - s nu(y) over a density x density sample.
ReachEstimate estimate_reach(const DomainGeometry& domain, int density = 1024);

struct NearestPoint {
  double foot_param = 0.0;  // curve parameter; 0 for balls
  Point foot;
  double d0 = 0.0;
  bool unique = true;
};

/// Global minimizer of |x - y| over the boundary. Ties (only possible at
/// d0 >= h_bar) resolve to the smallest parameter with `unique = false`.
NearestPoint nearest_boundary_point(const DomainGeometry& domain, const Point& x);

/// A point of omega_h with the quantities derived from its foot point.
struct TubularPoint {
  Point point;
  NearestPoint nearest;
  std::vector<double> rho;  // increasing, N+1 entries, last is the normal eigenvalue 1
  bool inside_omega_h = false;
};

TubularPoint tubular_point(const DomainGeometry& domain, const Point& x, double h);

/// Eigenvalues of D^2 eta at x, eta = (h - d0)^2 / 2, sorted with the
/// trivial normal eigenvalue 1 appended.
std::vector<double> hessian_eta_eigenvalues(const DomainGeometry& domain, const Point& x, double h);

/// Full Hessian of eta at x (ambient_dim x ambient_dim).
Eigen::MatrixXd hessian_eta(const DomainGeometry& domain, const Point& x, double h);

/// The Lipschitz field F = grad eta on omega_h, zero elsewhere.
Point field_F(const DomainGeometry& domain, const Point& x, double h);

/// Signed curvature of the inner parallel curve y(t) - h nu(y(t)),
/// evaluated from the offset curve's own derivatives.
double offset_curvature(const ParametricCurve& curve, double t, double h);

/// Product rule in normal coordinates: trapezoid along the boundary,
/// Gauss-Legendre in depth s, Jacobian (1 - s kappa).
struct TubularQuadrature {
  double h = 0.0;
  std::vector<Vec2> points;
  std::vector<double> weights;
  std::vector<int> boundary_index;  // index into `boundary`
  std::vector<double> depth;        // s = d0 at the node
  BoundaryQuadrature boundary;

  int size() const { return static_cast<int>(points.size()); }
};

TubularQuadrature tubular_quadrature(const DomainGeometry& domain, double h, int n_boundary = 256,
                                     int n_normal = 16, std::optional<double> h_bar = std::nullopt);

}  // namespace steklov
