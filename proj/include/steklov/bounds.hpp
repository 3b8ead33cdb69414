#pragma once

#include "steklov/geometry.hpp"
#include "steklov/spectra.hpp"
#include "steklov/tubular.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace steklov {

struct GeometricConstants {
  std::string domain_ref;
  int N = 1;
  double h_bar = 0.0;  // certified lower bound of the reach
  ReachEstimate reach;
  double K_plus = 0.0;
  double K_minus = 0.0;
  double K_inf = 0.0;
  double H_inf = 0.0;      // maximal mean curvature
  double H_bar_inf = 0.0;  // maximal absolute principal-curvature bound
  double c_Omega = 0.0;    // 1/(2 h_bar) + N H_bar_inf / 2
  double c_alt = 0.0;      // same with H_inf
  double perimeter = 0.0;  // |boundary|
  bool convex = true;
};

GeometricConstants compute_constants(const DomainGeometry& domain, int reach_density = 1024,
                                     int curvature_density = 4096);

enum class Verdict { Pass, Fail, Vacuous, Informational };
std::string to_string(Verdict v);

struct CheckRow {
  double param = 0.0;  // index j, z, t, or sample number
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

struct BoundCheckReport {
  std::string domain_ref;
  std::string inequality_id;
  std::string parameter;  // what CheckRow::param holds
  std::vector<CheckRow> rows;
  double min_margin = 0.0;
  int worst_index = -1;  // row position of min_margin
  double tolerance = 0.0;
  Verdict verdict = Verdict::Pass;
  std::string note;
  std::map<std::string, double> extras;

  void add(double param, double lhs, double rhs) { rows.push_back({param, lhs, rhs, rhs - lhs}); }
  /// Sets min_margin, worst_index and (unless informational or vacuous) the
  /// verdict: pass iff min_margin >= -tolerance.
  void finalize();
  bool failed() const { return verdict == Verdict::Fail; }
};

inline constexpr double kSolverSlack = 1e-6;
inline constexpr double kIdentityRelTol = 1e-8;

/// lambda_j <= sigma_j^2 + 2c sigma_j, sigma_j <= c + sqrt(c^2 + lambda_j),
/// |sigma_j - sqrt(lambda_j)| <= 2c, each as its own report.
std::vector<BoundCheckReport> check_main_theorem(const SpectrumResult& sigma, const SpectrumResult& lambda, double c,
                                                 int j_max);

/// Convex refinement with K_inf in place of 2c.
std::vector<BoundCheckReport> check_convex_refinement(const SpectrumResult& sigma, const SpectrumResult& lambda,
                                                      const GeometricConstants& constants, int j_max);

/// lambda_j = sigma_j^2 + ((N-1)/R) sigma_j on the analytic ball spectra.
BoundCheckReport check_ball_relation(int N, double R, int l_max);

/// sum_j (z - sigma_j)_+^2; throws `Truncation` unless max(sigma) > z.
double riesz_mean(const std::vector<double>& values, double z);
double riesz_bound_rhs(double z, int N, double perimeter, double c);

BoundCheckReport riesz_mean_steklov_check(const SpectrumResult& sigma, const std::vector<double>& z_grid, double c);

/// sum (z - lambda_j)_+ >= sum (z - sigma_j^2 - 2c sigma_j)_+ on a z grid.
BoundCheckReport riesz_first_order_check(const SpectrumResult& sigma, const SpectrumResult& lambda,
                                         const std::vector<double>& z_grid, double c);

BoundCheckReport riesz_mean_laplacian_check(const SpectrumResult& lambda, const std::vector<double>& z_grid,
                                            double H_inf);

/// Upper bound for sum_{j >= J} e^{-t sigma_j} from the lower-bound
/// corollary, J = number of values supplied.
double heat_trace_tail(int J, double t, int N, double perimeter, double c);
double heat_trace_rhs(double t, int N, double perimeter, double c);

BoundCheckReport heat_trace_check(const SpectrumResult& sigma, const std::vector<double>& t_grid, double c,
                                  int J_truncate);

double lower_bound_constant(int N);  // r_N
BoundCheckReport lower_bound_check(const SpectrumResult& sigma, double c, int j_max);

struct WeylFit {
  double a = 0.0;
  double b = 0.0;
  bool degenerate = false;
};
/// Line a + b (j/|boundary|)^{1/N} lying above every sigma_j, j <= j_max,
/// that is lowest at the mean abscissa.
WeylFit weyl_upper_fit(const SpectrumResult& sigma, int j_max);
BoundCheckReport weyl_upper_structural(const SpectrumResult& sigma, int j_max);

BoundCheckReport weyl_ratio_report(const SpectrumResult& spectrum, const std::vector<int>& indices);

/// Random points of omega_h: h K_- <= rho_i <= h K_+, rho_i < 1, and
/// |rho_i| <= h |kappa_i(y)| (two reports).
std::vector<BoundCheckReport> rho_bounds_check(const DomainGeometry& domain, const GeometricConstants& constants,
                                               double h, int samples, std::uint64_t seed);

/// |Q(g)| <= (1 + N H_bar_inf h) |g|^2 at random points and unit vectors.
BoundCheckReport quadratic_form_check(const DomainGeometry& domain, const GeometricConstants& constants, double h,
                                      int samples, std::uint64_t seed);

/// Offset-curve curvature equals kappa / (1 - h kappa).
BoundCheckReport parallel_curvature_check(const DomainGeometry& domain, double h, int samples);

/// Pohozaev residual over harmonic polynomials of degree <= max_degree.
BoundCheckReport pohozaev_check(const DomainGeometry& domain, const GeometricConstants& constants,
                                int max_degree, bool tubular_field);

/// Both norm-equivalence inequalities plus the two mean-curvature variants,
/// over harmonic polynomials and (when given) computed eigenfunctions.
std::vector<BoundCheckReport> norm_equivalence_reports(const DomainGeometry& domain,
                                                       const GeometricConstants& constants, int max_degree,
                                                       const SteklovEigenfunctions* eigenfunctions,
                                                       int n_boundary = 512);

}  // namespace steklov
