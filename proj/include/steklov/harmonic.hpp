#pragma once

#include "steklov/geometry.hpp"
#include "steklov/tubular.hpp"

#include <optional>
#include <string>
#include <vector>

namespace steklov {

/// Re or Im of (x1 + i x2)^k. In R^{N+1} with N+1 > 2 the same polynomial
/// (independent of x3, ...) is a solid harmonic on a ball.
class HarmonicTestFunction {
 public:
  enum class Part { Real, Imag };

  HarmonicTestFunction(Part part, int degree, int ambient_dim = 2);

  /// v = 1 (degree 0, real part).
  static HarmonicTestFunction constant(int ambient_dim = 2) { return {Part::Real, 0, ambient_dim}; }

  double value(const Point& x) const;
  Point gradient(const Point& x) const;
  double value(const Vec2& x) const;
  Vec2 gradient(const Vec2& x) const;

  int degree() const { return degree_; }
  int ambient_dim() const { return dim_; }
  std::string name() const;

 private:
  Part part_;
  int degree_;
  int dim_;
};

struct GradientSplit {
  double tangential_sq = 0.0;  // |grad_boundary v|^2
  double normal_sq = 0.0;      // (dv/dnu)^2
  double total_sq = 0.0;       // |grad v|^2
};

GradientSplit boundary_gradient_split(const ParametricCurve& curve, const HarmonicTestFunction& v, double t);

/// Boundary values of a harmonic function sampled at quadrature nodes.
struct BoundaryTrace {
  std::vector<double> value;
  std::vector<double> normal_derivative;
  std::vector<double> tangential_derivative;
};

BoundaryTrace boundary_trace(const BoundaryQuadrature& quad, const HarmonicTestFunction& v);

enum class PohozaevField { TubularGradient, Identity };

struct PohozaevResult {
  double residual = 0.0;          // at the refined resolution
  double coarse_residual = 0.0;
  double dirichlet_energy = 0.0;  // int_Omega |grad v|^2 via Green's identity
  double boundary_terms = 0.0;
  double volume_terms = 0.0;
  double relative() const { return dirichlet_energy > 0 ? std::abs(residual) / dirichlet_energy : std::abs(residual); }
};

/// Left-hand side of the generalized Pohozaev identity for harmonic v.
/// `h` is required for the tubular field and must lie below `h_bar`.
/// Evaluated at (n_boundary, n_normal) and at twice both; a disagreement
/// larger than 10 * rel_tol * energy raises `UnderResolved`.
PohozaevResult pohozaev_residual(const DomainGeometry& domain, const HarmonicTestFunction& v, PohozaevField field,
                                 int n_boundary = 256, int n_normal = 16, std::optional<double> h = std::nullopt,
                                 std::optional<double> h_bar = std::nullopt, double rel_tol = 1e-8);

struct NormEquivalenceVerdict {
  bool vacuous = false;
  double tangential = 0.0;  // int |grad_boundary v|^2, after normalization
  double normal = 0.0;      // int (dv/dnu)^2, after normalization
  double energy = 0.0;      // int v dv/dnu = int_Omega |grad v|^2
  double margin_tangential = 0.0;  // rhs - lhs of the tangential-side inequality
  double margin_normal = 0.0;      // rhs - lhs of the normal-side inequality
  // Variants with the mean-curvature constant, when requested.
  std::optional<double> margin_energy_alt;  // energy-side form as printed in the remark
  std::optional<double> margin_normal_alt;  // normal-side form with the alternative constant
};

/// Normalizes v so that int v^2 = 1 and evaluates both norm-equivalence
/// inequalities with constant c. Zero Dirichlet energy is reported vacuous.
NormEquivalenceVerdict norm_equivalence_check(const BoundaryQuadrature& quad, const BoundaryTrace& trace, double c,
                                              std::optional<double> c_alt = std::nullopt);

/// Q(g) = |g|^2 tr(D^2 eta) - 2 (D^2 eta g) . g
double pohozaev_quadratic_form(const Eigen::MatrixXd& hessian, const Eigen::VectorXd& g);

}  // namespace steklov
