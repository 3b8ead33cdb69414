#pragma once

#include "steklov/geometry.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace steklov {

enum class SpectrumKind { Steklov, LaplaceBeltrami };
enum class SolverKind { NystromDtn, MfsOracle, ExactCurve, AnalyticBall };

std::string to_string(SpectrumKind k);
std::string to_string(SolverKind s);

struct SpectrumResult {
  SpectrumKind kind = SpectrumKind::Steklov;
  std::vector<double> values;  // non-decreasing, values[0] = 0
  std::vector<int> group;      // multiplicity group of each value
  bool multiplicity_resolved = true;
  SolverKind solver = SolverKind::NystromDtn;
  int discretization = 0;
  std::string domain_ref;
  int hypersurface_dim = 1;
  double boundary_measure = 0.0;
  bool reliable = true;  // false only for a rank-deficient MFS basis

  int size() const { return static_cast<int>(values.size()); }
  /// (representative value, multiplicity) per group.
  std::vector<std::pair<double, int>> grouped() const;
};

/// Assigns multiplicity groups: neighbours within `rel_tol` relative
/// (absolute near zero) share a group.
void assign_groups(SpectrumResult& s, double rel_tol = 1e-7);

/// Eigenfunctions on the Nystrom nodes, L^2(boundary)-orthonormal.
struct SteklovEigenfunctions {
  BoundaryQuadrature quad;
  Eigen::MatrixXd trace;              // n_disc x n_modes
  Eigen::MatrixXd normal_derivative;  // DtN applied to the trace
  Eigen::MatrixXd tangential_derivative;
  Eigen::MatrixXd density;            // single-layer density of the extension
  double log_scale = 0.0;             // the rho0 of the modified kernel

  /// Harmonic extension of eigenfunction k at an interior point.
  double evaluate(int k, const Vec2& x) const;
};

struct SteklovSolution {
  SpectrumResult spectrum;
  SteklovEigenfunctions eigenfunctions;
  double condition = 0.0;  // estimate for the single-layer matrix
  double rayleigh_zero = 0.0;
};

/// Dense Dirichlet-to-Neumann eigensolve by single-layer Nystrom
/// collocation with Kress log-splitting. Requires n_disc >= 2 * n_modes.
SteklovSolution steklov_spectrum_2d(const DomainGeometry& domain, int n_modes, int n_disc);

/// Independent method-of-fundamental-solutions oracle. The charges sit on
/// the boundary dilated by 1.5 about its centroid.
SpectrumResult mfs_oracle_spectrum(const DomainGeometry& domain, int n_modes, int n_charges = 160);

/// Exact Laplace-Beltrami spectrum of a closed curve of length L.
SpectrumResult lb_spectrum_curve(double perimeter, int n_modes, std::string domain_ref = "");

struct BallSpectra {
  SpectrumResult steklov;
  SpectrumResult laplace_beltrami;
};

/// Dimension of the degree-l spherical harmonics on S^N.
long long harmonic_multiplicity(int N, int l);

BallSpectra ball_spectra(int N, double R, int l_max, std::string domain_ref = "");

/// Closed-form disk Steklov spectrum {0, 1/R, 1/R, 2/R, ...}.
SpectrumResult disk_steklov_spectrum(double R, int n_modes, std::string domain_ref = "");

/// sigma_j j^{-1/N} over the Weyl constant (squared for lambda).
double weyl_ratio(const SpectrumResult& spectrum, int j);

/// Trigonometric-interpolant derivative d/dt of equispaced periodic samples.
Eigen::MatrixXd periodic_derivative(const Eigen::MatrixXd& samples);

}  // namespace steklov
