#include "steklov/tubular.hpp"

#include "steklov/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Vec2 as_vec2(const Point& x) {
  if (x.size() != 2) throw Error(ErrorKind::Precondition, "planar domain expects a 2-D point");
  return {x(0), x(1)};
}

Point as_point(const Vec2& v) {
  Point p(2);
  p << v.x(), v.y();
  return p;
}

// Segments [a, a + s*da] and [b, b + s*db], s in [0, h], da/db unit.
bool normal_segments_meet(const Vec2& a, const Vec2& da, const Vec2& b, const Vec2& db, double h) {
  const double det = cross(da, db);
  const Vec2 ab = b - a;
  if (std::abs(det) < 1e-14) {
    // parallel: only collinear overlap counts
    if (std::abs(cross(ab, da)) > 1e-12 * std::max(1.0, ab.norm())) return false;
    const double proj = ab.dot(da);
    const double b_end = (b + h * db - a).dot(da);
    const double lo = std::min(proj, b_end), hi = std::max(proj, b_end);
    return hi >= 0 && lo <= h;
  }
  const double s = cross(ab, db) / det;
  const double u = cross(ab, da) / det;
  return s >= 0 && s <= h && u >= 0 && u <= h;
}

struct ReachSample {
  std::vector<Vec2> points;
  std::vector<Vec2> inward;
  std::vector<double> kappa;
};

bool injective_at(const ReachSample& sample, double k_plus, double h) {
  if (h * k_plus >= 1.0) return false;
  for (double k : sample.kappa)
    if (1.0 - h * k <= 0.0) return false;
  const int n = static_cast<int>(sample.points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (normal_segments_meet(sample.points[i], sample.inward[i], sample.points[j], sample.inward[j], h))
        return false;
  return true;
}

NearestPoint nearest_on_curve(const ParametricCurve& curve, const Vec2& x) {
  constexpr int kSamples = 512;
  std::vector<double> dist(kSamples);
  for (int k = 0; k < kSamples; ++k) dist[k] = (curve.position(kTwoPi * k / kSamples) - x).norm();

  struct Candidate {
    double t;
    double d;
  };
  std::vector<Candidate> candidates;
  for (int k = 0; k < kSamples; ++k) {
    const double prev = dist[(k + kSamples - 1) % kSamples], next = dist[(k + 1) % kSamples];
    if (dist[k] > prev || dist[k] > next) continue;
    // Newton on f(t) = (p(t) - x) . p'(t)
    double t = kTwoPi * k / kSamples;
    for (int it = 0; it < 50; ++it) {
      const CurveJet j = curve.jet(t);
      const Vec2 r = j.p - x;
      const double f = r.dot(j.d1);
      const double df = j.d1.squaredNorm() + r.dot(j.d2);
      double step = df > 0 ? f / df : 0.0;
      step = std::clamp(step, -kTwoPi / kSamples, kTwoPi / kSamples);
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    t = std::fmod(std::fmod(t, kTwoPi) + kTwoPi, kTwoPi);
    candidates.push_back({t, (curve.position(t) - x).norm()});
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.d < b.d; });
  const Candidate best = candidates.front();
  const double tie_tol = 1e-10 * (1.0 + best.d);
  double foot_t = best.t;
  bool unique = true;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].d - best.d > tie_tol) break;
    double sep = std::abs(candidates[i].t - best.t);
    sep = std::min(sep, kTwoPi - sep);
    if (sep > 1e-6) {
      unique = false;
      foot_t = std::min(foot_t, candidates[i].t);
    }
  }

  const Vec2 y = curve.position(foot_t);
  if ((x - y).dot(outward_normal(curve, foot_t)) > 1e-12 * (1.0 + best.d)) {
    std::ostringstream msg;
    msg << "point (" << x.x() << ", " << x.y() << ") lies outside the domain";
    throw Error(ErrorKind::DomainMembership, msg.str());
  }
  NearestPoint np;
  np.foot_param = foot_t;
  np.foot = as_point(y);
  np.d0 = best.d;
  np.unique = unique;
  return np;
}

NearestPoint nearest_on_ball(const BallDescriptor& ball, const Point& x) {
  if (x.size() != ball.ambient_dim)
    throw Error(ErrorKind::Precondition, "point dimension does not match the ball");
  const double r = x.norm();
  if (r > ball.radius * (1 + 1e-14))
    throw Error(ErrorKind::DomainMembership, "point lies outside the ball");
  NearestPoint np;
  np.foot = Point::Zero(ball.ambient_dim);
  if (r == 0.0) {
    np.foot(0) = ball.radius;
    np.unique = false;
  } else {
    np.foot = x * (ball.radius / r);
  }
  np.d0 = std::max(0.0, ball.radius - r);
  return np;
}

double rho_from_curvature(double kappa, double d0, double h) {
  const double denom = 1.0 - d0 * kappa;
  if (denom <= 0.0) {
    std::ostringstream msg;
    msg << "1 - d0*kappa = " << denom << " <= 0 (d0 = " << d0 << ", kappa = " << kappa << ")";
    throw Error(ErrorKind::GeometricConsistency, msg.str());
  }
  return 1.0 - (1.0 - h * kappa) / denom;
}

void require_in_omega_h(double d0, double h) {
  if (!(h > 0)) throw Error(ErrorKind::Precondition, "tubular radius h must be positive");
  if (d0 > h * (1 + 1e-12)) {
    std::ostringstream msg;
    msg << "point at depth " << d0 << " is outside omega_h (h = " << h << ")";
    throw Error(ErrorKind::Precondition, msg.str());
  }
}

}  // namespace

std::string to_string(ReachMethod m) {
  switch (m) {
    case ReachMethod::ConvexRolling: return "convex-rolling";
    case ReachMethod::InjectivitySampling: return "injectivity-sampling";
    case ReachMethod::AnalyticBall: return "analytic-ball";
  }
  return "unknown";
}

ReachEstimate estimate_reach(const DomainGeometry& domain, int density) {
  ReachEstimate est;
  est.sample_density = density;
  if (domain.is_ball()) {
    est.method = ReachMethod::AnalyticBall;
    est.h_bar = est.certified_lower = domain.ball().radius;
    return est;
  }
  if (density < 256) throw Error(ErrorKind::ReachEstimation, "reach sample density must be >= 256");

  const ParametricCurve& curve = domain.curve();
  const CurvatureExtrema ext = curvature_extrema(curve, std::max(density, 4096));
  if (domain.is_convex()) {
    // rolling theorem: a disk of radius 1/K_inf rolls freely inside
    const double k_inf = std::max(ext.max, -ext.min);
    est.method = ReachMethod::ConvexRolling;
    est.h_bar = est.certified_lower = 1.0 / k_inf;
    return est;
  }

  ReachSample sample;
  sample.points.resize(density);
  sample.inward.resize(density);
  sample.kappa.resize(density);
  Vec2 lo_corner = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi_corner = -lo_corner;
  for (int k = 0; k < density; ++k) {
    const double t = kTwoPi * k / density;
    sample.points[k] = curve.position(t);
    sample.inward[k] = -outward_normal(curve, t);
    sample.kappa[k] = curvature(curve, t);
    lo_corner = lo_corner.cwiseMin(sample.points[k]);
    hi_corner = hi_corner.cwiseMax(sample.points[k]);
  }
  const double k_plus = std::max(0.0, ext.max);

  double lo = 0.0;
  double hi = (hi_corner - lo_corner).norm();
  if (k_plus > 0) hi = std::min(hi, 1.0 / k_plus);
  if (injective_at(sample, k_plus, hi)) {
    if (k_plus == 0)
      throw Error(ErrorKind::ReachEstimation, "normal map injective at the diameter bound");
    // the focal distance 1/K_+ is the binding constraint
    est.method = ReachMethod::InjectivitySampling;
    est.h_bar = hi;
    est.certified_lower = hi * (1.0 - 1e-6);
    return est;
  }
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    (injective_at(sample, k_plus, mid) ? lo : hi) = mid;
  }
  if (!(lo > 0)) throw Error(ErrorKind::ReachEstimation, "bisection collapsed to zero");
  for (double f : {0.25, 0.5, 0.75})
    if (!injective_at(sample, k_plus, f * lo))
      throw Error(ErrorKind::ReachEstimation,
                  "non-monotone injectivity along the bisection; increase the sample density");

  est.method = ReachMethod::InjectivitySampling;
  est.certified_lower = lo;
  est.h_bar = 0.5 * (lo + hi);
  return est;
}

NearestPoint nearest_boundary_point(const DomainGeometry& domain, const Point& x) {
  if (domain.is_ball()) return nearest_on_ball(domain.ball(), x);
  return nearest_on_curve(domain.curve(), as_vec2(x));
}

std::vector<double> hessian_eta_eigenvalues(const DomainGeometry& domain, const Point& x, double h) {
  const NearestPoint np = nearest_boundary_point(domain, x);
  require_in_omega_h(np.d0, h);
  const int n = domain.hypersurface_dim();
  std::vector<double> rho(n);
  if (domain.is_ball()) {
    std::fill(rho.begin(), rho.end(), rho_from_curvature(1.0 / domain.ball().radius, np.d0, h));
  } else {
    rho[0] = rho_from_curvature(curvature(domain.curve(), np.foot_param), np.d0, h);
  }
  std::sort(rho.begin(), rho.end());
  rho.push_back(1.0);
  return rho;
}

Eigen::MatrixXd hessian_eta(const DomainGeometry& domain, const Point& x, double h) {
  const NearestPoint np = nearest_boundary_point(domain, x);
  require_in_omega_h(np.d0, h);
  const int dim = domain.ambient_dim();
  Eigen::VectorXd nu(dim);
  double kappa;
  if (domain.is_ball()) {
    nu = np.foot / domain.ball().radius;
    kappa = 1.0 / domain.ball().radius;
  } else {
    const Vec2 n2 = outward_normal(domain.curve(), np.foot_param);
    nu << n2.x(), n2.y();
    kappa = curvature(domain.curve(), np.foot_param);
  }
  const double rho = rho_from_curvature(kappa, np.d0, h);
  const Eigen::MatrixXd normal_proj = nu * nu.transpose();
  return normal_proj + rho * (Eigen::MatrixXd::Identity(dim, dim) - normal_proj);
}

TubularPoint tubular_point(const DomainGeometry& domain, const Point& x, double h) {
  TubularPoint tp;
  tp.point = x;
  tp.nearest = nearest_boundary_point(domain, x);
  tp.inside_omega_h = tp.nearest.d0 < h;
  if (tp.inside_omega_h) tp.rho = hessian_eta_eigenvalues(domain, x, h);
  return tp;
}

Point field_F(const DomainGeometry& domain, const Point& x, double h) {
  const NearestPoint np = nearest_boundary_point(domain, x);
  Point f = Point::Zero(domain.ambient_dim());
  if (np.d0 >= h) return f;
  if (domain.is_ball()) return np.foot * ((h - np.d0) / domain.ball().radius);
  const Vec2 nu = outward_normal(domain.curve(), np.foot_param);
  f << (h - np.d0) * nu.x(), (h - np.d0) * nu.y();
  return f;
}

double offset_curvature(const ParametricCurve& curve, double t, double h) {
  const CurveJet j = curve.jet(t);
  const double s = j.d1.norm();
  const double a = j.d1.dot(j.d2);
  const double b = j.d2.squaredNorm() + j.d1.dot(j.d3);
  // unit tangent u = x'/s and its first two t-derivatives
  const Vec2 u1 = j.d2 / s - j.d1 * (a / (s * s * s));
  const Vec2 u2 = j.d3 / s - 2.0 * j.d2 * (a / (s * s * s)) - j.d1 * (b / (s * s * s)) +
                  3.0 * j.d1 * (a * a / (s * s * s * s * s));
  const int o = curve.orientation();
  // nu = o * R(-90) u, with R(-90)(a, b) = (b, -a)
  const Vec2 nu1 = o * Vec2(u1.y(), -u1.x());
  const Vec2 nu2 = o * Vec2(u2.y(), -u2.x());
  const Vec2 p1 = j.d1 - h * nu1;
  const Vec2 p2 = j.d2 - h * nu2;
  const double sp = p1.norm();
  return o * cross(p1, p2) / (sp * sp * sp);
}

TubularQuadrature tubular_quadrature(const DomainGeometry& domain, double h, int n_boundary, int n_normal,
                                     std::optional<double> h_bar) {
  if (domain.is_ball())
    throw Error(ErrorKind::Precondition, "tubular quadrature is built for planar curves only");
  if (!(h > 0)) throw Error(ErrorKind::Precondition, "tubular radius h must be positive");
  const double bar = h_bar ? *h_bar : estimate_reach(domain).h_bar;
  if (h >= bar) {
    std::ostringstream msg;
    msg << "h = " << h << " is not below the maximal tubular radius " << bar;
    throw Error(ErrorKind::ReachViolation, msg.str());
  }
  TubularQuadrature q;
  q.h = h;
  q.boundary = boundary_quadrature(domain.curve(), n_boundary);
  const GaussRule g = gauss_legendre_unit(n_normal);
  const int total = n_boundary * n_normal;
  q.points.reserve(total);
  q.weights.reserve(total);
  q.boundary_index.reserve(total);
  q.depth.reserve(total);
  for (int k = 0; k < n_boundary; ++k) {
    const Vec2& y = q.boundary.points[k];
    const Vec2& nu = q.boundary.normals[k];
    const double kappa = q.boundary.curvatures[k];
    for (int m = 0; m < n_normal; ++m) {
      const double s = h * g.nodes[m];
      q.points.push_back(y - s * nu);
      q.weights.push_back(q.boundary.weights[k] * h * g.weights[m] * (1.0 - s * kappa));
      q.boundary_index.push_back(k);
      q.depth.push_back(s);
    }
  }
  return q;
}

}  // namespace steklov
