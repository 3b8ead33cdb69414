#pragma once

#include <Eigen/Dense>

#include <string>
#include <variant>
#include <vector>

namespace steklov {

using Vec2 = Eigen::Vector2d;

// Shipped curve families. All are parameterized over t in [0, 2*pi) and
// traversed counter-clockwise for positive parameters.
struct Circle {
  double R = 1.0;
};

struct Ellipse {
  double a = 1.0;
  double b = 1.0;
};

/// x = cos t + A cos 2t - A, y = B sin t. Non-convex for the default
/// A = 0.65, B = 1.5.
struct Kite {
  double A = 0.65;
  double B = 1.5;
};

/// Star-shaped curve r(t) = r0 + sum_k (a_k cos kt + b_k sin kt).
/// `cos_coeffs[k-1]` holds a_k.
struct FourierBlob {
  double r0 = 1.0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;
};

using CurveDescriptor = std::variant<Circle, Ellipse, Kite, FourierBlob>;

/// Position and its first three parameter derivatives at one t.
struct CurveJet {
  Vec2 p;
  Vec2 d1;
  Vec2 d2;
  Vec2 d3;
};

/// Closed, regular, simple planar curve with closed-form derivatives.
/// The constructor enforces the invariants and throws `Error` otherwise.
class ParametricCurve {
 public:
  explicit ParametricCurve(CurveDescriptor descriptor);

  const CurveDescriptor& descriptor() const { return descriptor_; }
  std::string family() const;
  int derivative_order() const { return 3; }

  CurveJet jet(double t) const;
  Vec2 position(double t) const { return jet(t).p; }
  double speed(double t) const { return jet(t).d1.norm(); }

  /// +1 for counter-clockwise traversal, -1 otherwise.
  int orientation() const { return orientation_; }

  /// Same family with every length multiplied by `factor`.
  ParametricCurve scaled(double factor) const;

 private:
  CurveDescriptor descriptor_;
  int orientation_ = 1;
};

double curvature(const ParametricCurve& curve, double t);
Vec2 outward_normal(const ParametricCurve& curve, double t);
Vec2 unit_tangent(const ParametricCurve& curve, double t);
/// Derivative of the signed curvature with respect to t.
double curvature_derivative(const ParametricCurve& curve, double t);

double perimeter(const ParametricCurve& curve, int n = 256);

struct BallDescriptor {
  double radius = 1.0;
  int ambient_dim = 3;
};

/// Omega: either a planar curve's interior or an analytic ball in R^{N+1}.
class DomainGeometry {
 public:
  DomainGeometry(std::string id, ParametricCurve curve);
  DomainGeometry(std::string id, BallDescriptor ball);

  const std::string& id() const { return id_; }
  bool is_ball() const { return std::holds_alternative<BallDescriptor>(boundary_); }
  const ParametricCurve& curve() const;
  const BallDescriptor& ball() const;

  int ambient_dim() const { return ambient_dim_; }
  int hypersurface_dim() const { return ambient_dim_ - 1; }
  bool is_convex() const { return convex_; }

  /// |boundary|, the N-dimensional measure of the boundary.
  double boundary_measure(int n = 256) const;

 private:
  std::string id_;
  std::variant<ParametricCurve, BallDescriptor> boundary_;
  int ambient_dim_ = 2;
  bool convex_ = true;
};

/// Periodic trapezoid rule on a closed curve, with the geometric data
/// every boundary integral needs cached at the nodes.
struct BoundaryQuadrature {
  std::vector<double> nodes;    // t_k = 2*pi*k/n
  std::vector<double> weights;  // (2*pi/n) |x'(t_k)|
  std::vector<Vec2> points;
  std::vector<Vec2> normals;
  std::vector<Vec2> tangents;
  std::vector<double> speeds;
  std::vector<double> curvatures;

  int size() const { return static_cast<int>(nodes.size()); }
  double total_weight() const;
};

BoundaryQuadrature boundary_quadrature(const ParametricCurve& curve, int n = 256);

/// Gauss-Legendre rule on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre_unit(int n);

/// Extremes of the signed curvature: dense sample plus Brent refinement.
struct CurvatureExtrema {
  double min = 0.0;
  double max = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
};
CurvatureExtrema curvature_extrema(const ParametricCurve& curve, int density = 4096);

}  // namespace steklov
