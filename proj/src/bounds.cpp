#include "steklov/bounds.hpp"

#include "steklov/error.hpp"
#include "steklov/harmonic.hpp"
#include "steklov/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace steklov {

namespace {

constexpr double kPi = std::numbers::pi;

double weyl_constant(int N, double perimeter) {
  return std::pow(2.0 * kPi, -N) * unit_ball_volume(N) * perimeter;
}

void require_cover(const SpectrumResult& s, int j_max, const char* what) {
  if (j_max < 0 || j_max >= s.size()) {
    std::ostringstream msg;
    msg << what << " spectrum has " << s.size() << " values; index " << j_max << " requested";
    throw Error(ErrorKind::Precondition, msg.str());
  }
}

void require_pair(const SpectrumResult& sigma, const SpectrumResult& lambda) {
  if (sigma.kind != SpectrumKind::Steklov || lambda.kind != SpectrumKind::LaplaceBeltrami)
    throw Error(ErrorKind::Mismatch, "expected a Steklov and a Laplace-Beltrami spectrum");
  if (sigma.domain_ref != lambda.domain_ref || sigma.hypersurface_dim != lambda.hypersurface_dim)
    throw Error(ErrorKind::Mismatch,
                "spectra belong to different domains: '" + sigma.domain_ref + "' and '" + lambda.domain_ref + "'");
}

BoundCheckReport make_report(const std::string& domain, const std::string& id, const std::string& param,
                             double tol) {
  BoundCheckReport r;
  r.domain_ref = domain;
  r.inequality_id = id;
  r.parameter = param;
  r.tolerance = tol;
  return r;
}

// Uniform sample of omega_h: a random boundary point pushed inward by s in [0, h).
struct TubeSample {
  Point x;
  double kappa;  // curvature at the foot
};

class TubeSampler {
 public:
  TubeSampler(const DomainGeometry& domain, double h, std::uint64_t seed) : domain_(domain), h_(h), rng_(seed) {}

  TubeSample next() {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double s = h_ * unit(rng_);
    if (domain_.is_ball()) {
      const int dim = domain_.ambient_dim();
      std::normal_distribution<double> gauss;
      Point u(dim);
      for (int i = 0; i < dim; ++i) u[i] = gauss(rng_);
      u.normalize();
      const double R = domain_.ball().radius;
      return {(R - s) * u, 1.0 / R};
    }
    const double t = 2.0 * kPi * unit(rng_);
    const Vec2 y = domain_.curve().position(t) - s * outward_normal(domain_.curve(), t);
    Point x(2);
    x << y.x(), y.y();
    return {x, curvature(domain_.curve(), t)};
  }

  Point unit_vector() {
    std::normal_distribution<double> gauss;
    Point g(domain_.ambient_dim());
    for (int i = 0; i < g.size(); ++i) g[i] = gauss(rng_);
    return g.normalized();
  }

 private:
  const DomainGeometry& domain_;
  double h_;
  std::mt19937_64 rng_;
};

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
    case Verdict::Informational: return "informational";
  }
  return "unknown";
}

void BoundCheckReport::finalize() {
  min_margin = std::numeric_limits<double>::infinity();
  worst_index = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].margin >= min_margin)) {
      min_margin = rows[i].margin;
      worst_index = static_cast<int>(i);
    }
  }
  if (rows.empty()) min_margin = 0.0;
  if (verdict == Verdict::Informational || verdict == Verdict::Vacuous) return;
  verdict = min_margin >= -tolerance ? Verdict::Pass : Verdict::Fail;
}

GeometricConstants compute_constants(const DomainGeometry& domain, int reach_density, int curvature_density) {
  GeometricConstants k;
  k.domain_ref = domain.id();
  k.N = domain.hypersurface_dim();
  k.reach = estimate_reach(domain, reach_density);
  k.h_bar = k.reach.certified_lower;
  k.convex = domain.is_convex();
  k.perimeter = domain.boundary_measure(1024);
  if (domain.is_ball()) {
    const double kappa = 1.0 / domain.ball().radius;
    k.K_plus = kappa;
    k.K_minus = 0.0;
    k.H_inf = kappa;
    k.H_bar_inf = kappa;
  } else {
    const CurvatureExtrema ext = curvature_extrema(domain.curve(), curvature_density);
    k.K_plus = std::max(0.0, ext.max);
    k.K_minus = std::min(0.0, ext.min);
    // a curve has a single principal curvature, so both mean-curvature
    // maxima reduce to K_inf
    k.H_inf = std::max(k.K_plus, -k.K_minus);
    k.H_bar_inf = k.H_inf;
  }
  k.K_inf = std::max(k.K_plus, -k.K_minus);
  k.c_Omega = 1.0 / (2.0 * k.h_bar) + k.N * k.H_bar_inf / 2.0;
  k.c_alt = 1.0 / (2.0 * k.h_bar) + k.N * k.H_inf / 2.0;
  return k;
}

std::vector<BoundCheckReport> check_main_theorem(const SpectrumResult& sigma, const SpectrumResult& lambda, double c,
                                                 int j_max) {
  require_pair(sigma, lambda);
  require_cover(sigma, j_max, "Steklov");
  require_cover(lambda, j_max, "Laplace-Beltrami");
  auto upper = make_report(sigma.domain_ref, "lambda-upper", "j", kSolverSlack);
  auto lower = make_report(sigma.domain_ref, "sigma-upper", "j", kSolverSlack);
  auto gap = make_report(sigma.domain_ref, "sigma-sqrt-lambda-gap", "j", kSolverSlack);
  for (int j = 0; j <= j_max; ++j) {
    const double s = sigma.values[j], l = lambda.values[j];
    upper.add(j, l, s * s + 2.0 * c * s);
    lower.add(j, s, c + std::sqrt(c * c + l));
    gap.add(j, std::abs(s - std::sqrt(l)), 2.0 * c);
  }
  std::vector<BoundCheckReport> out{upper, lower, gap};
  for (auto& r : out) {
    r.extras["c"] = c;
    r.finalize();
  }
  return out;
}

std::vector<BoundCheckReport> check_convex_refinement(const SpectrumResult& sigma, const SpectrumResult& lambda,
                                                      const GeometricConstants& constants, int j_max) {
  if (!constants.convex)
    throw Error(ErrorKind::Precondition, "the convex refinement applies to convex domains only");
  require_pair(sigma, lambda);
  require_cover(sigma, j_max, "Steklov");
  require_cover(lambda, j_max, "Laplace-Beltrami");
  const double k = constants.K_inf;
  const int N = constants.N;
  auto upper = make_report(sigma.domain_ref, "lambda-upper-convex", "j", kSolverSlack);
  auto lower = make_report(sigma.domain_ref, "sigma-upper-convex", "j", kSolverSlack);
  for (int j = 0; j <= j_max; ++j) {
    const double s = sigma.values[j], l = lambda.values[j];
    upper.add(j, l, s * s + N * k * s);
    lower.add(j, s, k / 2.0 + std::sqrt(k * k / 4.0 + l));
  }
  std::vector<BoundCheckReport> out{upper, lower};
  for (auto& r : out) {
    r.extras["K_inf"] = k;
    r.extras["two_c"] = 2.0 * constants.c_Omega;
    r.finalize();
  }
  return out;
}

BoundCheckReport check_ball_relation(int N, double R, int l_max) {
  const BallSpectra b = ball_spectra(N, R, l_max);
  std::ostringstream id;
  id << "ball-N" << N << "-R" << R;
  auto r = make_report(id.str(), "ball-eigenvalue-identity", "j", 0.0);
  for (int j = 0; j < b.steklov.size(); ++j) {
    const double s = b.steklov.values[j], l = b.laplace_beltrami.values[j];
    r.add(j, std::abs(l - (s * s + (N - 1) / R * s)), 1e-12);
  }
  r.extras["N"] = N;
  r.extras["R"] = R;
  r.extras["l_max"] = l_max;
  r.finalize();
  return r;
}

double riesz_mean(const std::vector<double>& values, double z) {
  if (values.empty() || !(values.back() > z)) {
    std::ostringstream msg;
    msg << "Riesz mean at z = " << z << " needs eigenvalues beyond z; largest computed is "
        << (values.empty() ? 0.0 : values.back());
    throw Error(ErrorKind::Truncation, msg.str());
  }
  double sum = 0.0;
  for (double v : values) {
    if (v >= z) break;
    sum += (z - v) * (z - v);
  }
  return sum;
}

double riesz_bound_rhs(double z, int N, double perimeter, double c) {
  return 2.0 / ((N + 1.0) * (N + 2.0)) * weyl_constant(N, perimeter) * std::pow(z + c, N + 2);
}

BoundCheckReport riesz_mean_steklov_check(const SpectrumResult& sigma, const std::vector<double>& z_grid, double c) {
  auto r = make_report(sigma.domain_ref, "riesz-mean-steklov", "z", kSolverSlack);
  for (double z : z_grid)
    r.add(z, riesz_mean(sigma.values, z), riesz_bound_rhs(z, sigma.hypersurface_dim, sigma.boundary_measure, c));
  r.extras["c"] = c;
  r.finalize();
  return r;
}

BoundCheckReport riesz_first_order_check(const SpectrumResult& sigma, const SpectrumResult& lambda,
                                         const std::vector<double>& z_grid, double c) {
  require_pair(sigma, lambda);
  auto r = make_report(sigma.domain_ref, "riesz-first-order-comparison", "z", kSolverSlack);
  std::vector<double> shifted;
  for (double s : sigma.values) shifted.push_back(s * s + 2.0 * c * s);
  for (double z : z_grid) {
    if (!(lambda.values.back() > z) || !(shifted.back() > z)) {
      std::ostringstream msg;
      msg << "first-order Riesz comparison at z = " << z << " exceeds the computed spectra";
      throw Error(ErrorKind::Truncation, msg.str());
    }
    double lhs = 0.0, rhs = 0.0;
    for (double v : shifted) lhs += std::max(0.0, z - v);
    for (double v : lambda.values) rhs += std::max(0.0, z - v);
    r.add(z, lhs, rhs);
  }
  r.extras["c"] = c;
  r.finalize();
  return r;
}

BoundCheckReport riesz_mean_laplacian_check(const SpectrumResult& lambda, const std::vector<double>& z_grid,
                                            double H_inf) {
  const int N = lambda.hypersurface_dim;
  const double z0 = N * N * H_inf * H_inf / 4.0;
  auto r = make_report(lambda.domain_ref, "riesz-mean-laplacian", "z", kSolverSlack);
  for (double z : z_grid) {
    const double rhs = 8.0 / ((N + 2.0) * (N + 4.0)) * weyl_constant(N, lambda.boundary_measure) *
                       std::pow(z + z0, 2.0 + N / 2.0);
    r.add(z, riesz_mean(lambda.values, z), rhs);
  }
  r.extras["z0"] = z0;
  r.finalize();
  return r;
}

double lower_bound_constant(int N) { return N / (std::exp(1.0) * std::pow(factorial(N), 1.0 / N)); }

double heat_trace_tail(int J, double t, int N, double perimeter, double c) {
  const double a = lower_bound_constant(N) * 2.0 * kPi * std::pow(unit_ball_volume(N) * perimeter, -1.0 / N);
  const double ta = t * a;
  const double x = ta * std::pow(static_cast<double>(J), 1.0 / N);
  return std::exp(c * t - x) * N * scaled_upper_incomplete_gamma(N, x) / std::pow(ta, N);
}

double heat_trace_rhs(double t, int N, double perimeter, double c) {
  return weyl_constant(N, perimeter) / ((N + 1.0) * (N + 2.0)) * std::pow(t, -N) *
         scaled_upper_incomplete_gamma(N + 3, c * t);
}

BoundCheckReport heat_trace_check(const SpectrumResult& sigma, const std::vector<double>& t_grid, double c,
                                  int J_truncate) {
  const int N = sigma.hypersurface_dim;
  const double L = sigma.boundary_measure;
  const int J = std::min(J_truncate, sigma.size());
  auto r = make_report(sigma.domain_ref, "heat-trace", "t", kSolverSlack);
  for (double t : t_grid) {
    if (!(t > 0)) throw Error(ErrorKind::Precondition, "heat-trace times must be positive");
    double partial = 0.0;
    for (int j = 0; j < J; ++j) partial += std::exp(-t * sigma.values[j]);
    const double tail = heat_trace_tail(J, t, N, L, c);
    r.add(t, partial + tail, heat_trace_rhs(t, N, L, c));
  }
  if (!t_grid.empty()) {
    const double t = *std::min_element(t_grid.begin(), t_grid.end());
    double partial = 0.0;
    for (int j = 0; j < J; ++j) partial += std::exp(-t * sigma.values[j]);
    r.extras["sharp_ratio_t_min"] = partial * std::pow(t, N) / (weyl_constant(N, L) * factorial(N));
    r.extras["t_min"] = t;
    r.extras["tail_t_min"] = heat_trace_tail(J, t, N, L, c);
  }
  r.extras["J"] = J;
  r.extras["c"] = c;
  r.finalize();
  return r;
}

BoundCheckReport lower_bound_check(const SpectrumResult& sigma, double c, int j_max) {
  require_cover(sigma, j_max, "Steklov");
  const int N = sigma.hypersurface_dim;
  const double scale =
      lower_bound_constant(N) * 2.0 * kPi * std::pow(unit_ball_volume(N), -1.0 / N);
  auto r = make_report(sigma.domain_ref, "sigma-lower", "j", kSolverSlack);
  for (int j = 0; j <= j_max; ++j)
    r.add(j, scale * std::pow((j + 1.0) / sigma.boundary_measure, 1.0 / N) - c, sigma.values[j]);
  r.extras["r_N"] = lower_bound_constant(N);
  r.extras["c"] = c;
  r.finalize();
  return r;
}

WeylFit weyl_upper_fit(const SpectrumResult& sigma, int j_max) {
  WeylFit fit;
  j_max = std::min(j_max, sigma.size() - 1);
  if (j_max < 2) {
    fit.degenerate = true;
    return fit;
  }
  const int N = sigma.hypersurface_dim;
  std::vector<Vec2> pts;
  double mean = 0.0;
  for (int j = 0; j <= j_max; ++j) {
    pts.emplace_back(std::pow(j / sigma.boundary_measure, 1.0 / N), sigma.values[j]);
    mean += pts.back().x();
  }
  mean /= pts.size();
  // upper hull, abscissae already increasing
  std::vector<Vec2> hull;
  for (const Vec2& p : pts) {
    while (hull.size() >= 2) {
      const Vec2 a = hull[hull.size() - 2], b = hull.back();
      const double cross = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  std::size_t k = 0;
  while (k + 2 < hull.size() && hull[k + 1].x() < mean) ++k;
  const Vec2 a = hull[k], b = hull[k + 1];
  fit.b = (b.y() - a.y()) / (b.x() - a.x());
  fit.a = a.y() - fit.b * a.x();
  return fit;
}

BoundCheckReport weyl_upper_structural(const SpectrumResult& sigma, int j_max) {
  auto r = make_report(sigma.domain_ref, "weyl-upper-structural", "j", 0.0);
  r.verdict = Verdict::Informational;
  const WeylFit fit = weyl_upper_fit(sigma, j_max);
  r.extras["a"] = fit.a;
  r.extras["b"] = fit.b;
  r.extras["degenerate"] = fit.degenerate ? 1.0 : 0.0;
  r.note = "fitted line a + b (j/|boundary|)^(1/N) above the spectrum; the dimensional constant of the "
           "curvature-based upper bound is not available, and its derivation uses exponents 1/(N-1) where the "
           "statement uses 1/N, so no pass/fail verdict is given";
  if (fit.degenerate) {
    r.note = "degenerate fit: fewer than three indices";
  } else {
    const int N = sigma.hypersurface_dim;
    for (int j = 0; j <= std::min(j_max, sigma.size() - 1); ++j)
      r.add(j, sigma.values[j], fit.a + fit.b * std::pow(j / sigma.boundary_measure, 1.0 / N));
  }
  r.finalize();
  return r;
}

BoundCheckReport weyl_ratio_report(const SpectrumResult& spectrum, const std::vector<int>& indices) {
  auto r = make_report(spectrum.domain_ref,
                       spectrum.kind == SpectrumKind::Steklov ? "weyl-ratio-steklov" : "weyl-ratio-laplacian", "j",
                       0.0);
  r.verdict = Verdict::Informational;
  for (int j : indices)
    if (j > 0 && j < spectrum.size()) r.add(j, weyl_ratio(spectrum, j), 1.0);
  r.note = "lhs is the Weyl ratio, rhs its limit";
  r.finalize();
  return r;
}

std::vector<BoundCheckReport> rho_bounds_check(const DomainGeometry& domain, const GeometricConstants& constants,
                                               double h, int samples, std::uint64_t seed) {
  auto upper = make_report(domain.id(), "rho-upper", "sample", 1e-10);
  auto lower = make_report(domain.id(), "rho-lower", "sample", 1e-10);
  auto local = make_report(domain.id(), "rho-local-curvature", "sample", 1e-10);
  TubeSampler sampler(domain, h, seed);
  for (int i = 0; i < samples; ++i) {
    const TubeSample s = sampler.next();
    const NearestPoint np = nearest_boundary_point(domain, s.x);
    const std::vector<double> rho = hessian_eta_eigenvalues(domain, s.x, h);
    const double kappa = domain.is_ball() ? 1.0 / domain.ball().radius : curvature(domain.curve(), np.foot_param);
    for (std::size_t k = 0; k + 1 < rho.size(); ++k) {
      upper.add(i, rho[k], std::min(h * constants.K_plus, 1.0));
      lower.add(i, h * constants.K_minus, rho[k]);
      local.add(i, std::abs(rho[k]), h * std::abs(kappa));
    }
  }
  std::vector<BoundCheckReport> out{upper, lower, local};
  for (auto& r : out) {
    r.extras["h"] = h;
    r.extras["seed"] = static_cast<double>(seed);
    r.finalize();
  }
  return out;
}

BoundCheckReport quadratic_form_check(const DomainGeometry& domain, const GeometricConstants& constants, double h,
                                      int samples, std::uint64_t seed) {
  auto r = make_report(domain.id(), "pohozaev-quadratic-form", "sample", 1e-10);
  TubeSampler sampler(domain, h, seed);
  const double bound = 1.0 + constants.N * constants.H_bar_inf * h;
  for (int i = 0; i < samples; ++i) {
    const TubeSample s = sampler.next();
    const Eigen::MatrixXd hess = hessian_eta(domain, s.x, h);
    const Point g = sampler.unit_vector();
    r.add(i, std::abs(pohozaev_quadratic_form(hess, g)), bound);
  }
  r.extras["h"] = h;
  r.extras["seed"] = static_cast<double>(seed);
  r.finalize();
  return r;
}

BoundCheckReport parallel_curvature_check(const DomainGeometry& domain, double h, int samples) {
  if (domain.is_ball()) throw Error(ErrorKind::Precondition, "parallel-curve check needs a planar curve");
  auto r = make_report(domain.id(), "parallel-curvature-law", "t", 0.0);
  const ParametricCurve& c = domain.curve();
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    const double kappa = curvature(c, t);
    const double expected = kappa / (1.0 - h * kappa);
    r.add(t, std::abs(offset_curvature(c, t, h) - expected), kIdentityRelTol * std::max(1.0, std::abs(expected)));
  }
  r.extras["h"] = h;
  r.finalize();
  return r;
}

BoundCheckReport pohozaev_check(const DomainGeometry& domain, const GeometricConstants& constants, int max_degree,
                                bool tubular_field) {
  auto r = make_report(domain.id(), tubular_field ? "pohozaev-tubular-field" : "pohozaev-identity-field", "degree",
                       0.0);
  const double h = 0.9 * constants.h_bar;
  using Part = HarmonicTestFunction::Part;
  for (int k = 0; k <= max_degree; ++k) {
    for (Part p : {Part::Real, Part::Imag}) {
      if (k == 0 && p == Part::Imag) continue;
      const HarmonicTestFunction v(p, k, domain.ambient_dim());
      const PohozaevResult res =
          tubular_field ? pohozaev_residual(domain, v, PohozaevField::TubularGradient, 256, 16, h, constants.h_bar)
                        : pohozaev_residual(domain, v, PohozaevField::Identity);
      r.add(k, std::abs(res.residual), kIdentityRelTol * std::abs(res.dirichlet_energy));
    }
  }
  if (tubular_field) r.extras["h"] = h;
  r.note = "rows alternate Re and Im parts; rhs is the relative tolerance times the Dirichlet energy";
  r.finalize();
  return r;
}

std::vector<BoundCheckReport> norm_equivalence_reports(const DomainGeometry& domain,
                                                       const GeometricConstants& constants, int max_degree,
                                                       const SteklovEigenfunctions* eigenfunctions,
                                                       int n_boundary) {
  if (domain.is_ball() && domain.ambient_dim() != 2)
    throw Error(ErrorKind::Precondition, "norm-equivalence checks need a planar boundary");
  const ParametricCurve curve =
      domain.is_ball() ? ParametricCurve(Circle{domain.ball().radius}) : domain.curve();
  const double c = constants.c_Omega, ca = constants.c_alt;
  auto tang = make_report(domain.id(), "norm-equivalence-tangential", "test", kSolverSlack);
  auto norm = make_report(domain.id(), "norm-equivalence-normal", "test", kSolverSlack);
  auto norm_alt = make_report(domain.id(), "norm-equivalence-normal-mean-curvature", "test", kSolverSlack);
  auto energy_alt = make_report(domain.id(), "energy-bound-mean-curvature", "test", kSolverSlack);
  int vacuous = 0, row = 0;
  auto record = [&](const BoundaryQuadrature& q, const BoundaryTrace& tr) {
    const NormEquivalenceVerdict v = norm_equivalence_check(q, tr, c, ca);
    if (v.vacuous) {
      ++vacuous;
      return;
    }
    const double rn = std::sqrt(v.normal);
    tang.add(row, v.tangential, v.tangential + v.margin_tangential);
    norm.add(row, rn, rn + v.margin_normal);
    norm_alt.add(row, rn, rn + *v.margin_normal_alt);
    energy_alt.add(row, v.energy, v.energy + *v.margin_energy_alt);
    ++row;
  };

  const BoundaryQuadrature q = boundary_quadrature(curve, n_boundary);
  using Part = HarmonicTestFunction::Part;
  for (int k = 0; k <= max_degree; ++k)
    for (Part p : {Part::Real, Part::Imag}) {
      if (k == 0 && p == Part::Imag) continue;
      record(q, boundary_trace(q, HarmonicTestFunction(p, k)));
    }
  const int polynomial_rows = row;
  if (eigenfunctions) {
    const auto& ef = *eigenfunctions;
    for (int k = 0; k < ef.trace.cols(); ++k) {
      BoundaryTrace tr;
      tr.value.assign(ef.trace.col(k).data(), ef.trace.col(k).data() + ef.trace.rows());
      tr.normal_derivative.assign(ef.normal_derivative.col(k).data(),
                                  ef.normal_derivative.col(k).data() + ef.trace.rows());
      tr.tangential_derivative.assign(ef.tangential_derivative.col(k).data(),
                                      ef.tangential_derivative.col(k).data() + ef.trace.rows());
      record(ef.quad, tr);
    }
  }
  std::vector<BoundCheckReport> out{tang, norm, norm_alt, energy_alt};
  for (auto& r : out) {
    r.extras["c"] = r.inequality_id.find("mean-curvature") != std::string::npos ? ca : c;
    r.extras["polynomial_rows"] = polynomial_rows;
    r.extras["vacuous_tests"] = vacuous;
    r.note = "rows: harmonic polynomials Re/Im z^k first, then computed eigenfunctions";
    r.finalize();
  }
  out[3].note += "; inequality as printed bounds the Dirichlet energy";
  return out;
}

}  // namespace steklov
