#include "steklov/geometry.hpp"

#include "steklov/error.hpp"
#include "steklov/special.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMinSpeed = 1e-14;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

CurveJet circle_jet(const Circle& c, double t) {
  const double ct = std::cos(t), st = std::sin(t);
  CurveJet j;
  j.p = {c.R * ct, c.R * st};
  j.d1 = {-c.R * st, c.R * ct};
  j.d2 = -j.p;
  j.d3 = -j.d1;
  return j;
}

CurveJet ellipse_jet(const Ellipse& e, double t) {
  const double ct = std::cos(t), st = std::sin(t);
  CurveJet j;
  j.p = {e.a * ct, e.b * st};
  j.d1 = {-e.a * st, e.b * ct};
  j.d2 = -j.p;
  j.d3 = -j.d1;
  return j;
}

CurveJet kite_jet(const Kite& k, double t) {
  const double c1 = std::cos(t), s1 = std::sin(t);
  const double c2 = std::cos(2 * t), s2 = std::sin(2 * t);
  CurveJet j;
  j.p = {c1 + k.A * c2 - k.A, k.B * s1};
  j.d1 = {-s1 - 2 * k.A * s2, k.B * c1};
  j.d2 = {-c1 - 4 * k.A * c2, -k.B * s1};
  j.d3 = {s1 + 8 * k.A * s2, -k.B * c1};
  return j;
}

CurveJet blob_jet(const FourierBlob& b, double t) {
  double r = b.r0, r1 = 0, r2 = 0, r3 = 0;
  for (std::size_t i = 0; i < b.cos_coeffs.size(); ++i) {
    const double k = static_cast<double>(i + 1), a = b.cos_coeffs[i];
    const double c = std::cos(k * t), s = std::sin(k * t);
    r += a * c;
    r1 -= a * k * s;
    r2 -= a * k * k * c;
    r3 += a * k * k * k * s;
  }
  for (std::size_t i = 0; i < b.sin_coeffs.size(); ++i) {
    const double k = static_cast<double>(i + 1), a = b.sin_coeffs[i];
    const double c = std::cos(k * t), s = std::sin(k * t);
    r += a * s;
    r1 += a * k * c;
    r2 -= a * k * k * s;
    r3 -= a * k * k * k * c;
  }
  using C = std::complex<double>;
  const C e = std::polar(1.0, t);
  const C I(0, 1);
  const C z = r * e;
  const C z1 = (r1 + I * r) * e;
  const C z2 = (r2 + 2.0 * I * r1 - r) * e;
  const C z3 = (r3 + 3.0 * I * r2 - 3.0 * r1 - I * r) * e;
  return {{z.real(), z.imag()}, {z1.real(), z1.imag()}, {z2.real(), z2.imag()}, {z3.real(), z3.imag()}};
}

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(q2 - q1, p1 - q1);
  const double d2 = cross(q2 - q1, p2 - q1);
  const double d3 = cross(p2 - p1, q1 - p1);
  const double d4 = cross(p2 - p1, q2 - p1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

void validate_descriptor(const CurveDescriptor& d) {
  std::visit(Overloaded{
                 [](const Circle& c) {
                   if (!(c.R > 0)) throw Error(ErrorKind::InvalidCurve, "circle radius must be positive");
                 },
                 [](const Ellipse& e) {
                   if (!(e.a > 0) || !(e.b > 0))
                     throw Error(ErrorKind::InvalidCurve, "ellipse semi-axes must be positive");
                 },
                 [](const Kite& k) {
                   if (!(k.B > 0)) throw Error(ErrorKind::InvalidCurve, "kite B must be positive");
                 },
                 [](const FourierBlob& b) {
                   if (!(b.r0 > 0)) throw Error(ErrorKind::InvalidCurve, "blob r0 must be positive");
                 },
             },
             d);
}

}  // namespace

ParametricCurve::ParametricCurve(CurveDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  validate_descriptor(descriptor_);

  const CurveJet j0 = jet(0.0), j1 = jet(kTwoPi);
  if ((j0.p - j1.p).norm() > 1e-12 || (j0.d1 - j1.d1).norm() > 1e-12 ||
      (j0.d2 - j1.d2).norm() > 1e-12)
    throw Error(ErrorKind::InvalidCurve, "curve is not closed");

  constexpr int kSamples = 1024;
  std::vector<Vec2> pts(kSamples);
  double area2 = 0;
  for (int k = 0; k < kSamples; ++k) {
    const double t = kTwoPi * k / kSamples;
    const CurveJet j = jet(t);
    if (j.d1.norm() < kMinSpeed) {
      std::ostringstream msg;
      msg << "degenerate tangent at t = " << t;
      throw Error(ErrorKind::Regularity, msg.str());
    }
    pts[k] = j.p;
    area2 += cross(j.p, j.d1);
  }
  if (area2 == 0) throw Error(ErrorKind::InvalidCurve, "curve encloses zero area");
  orientation_ = area2 > 0 ? 1 : -1;

  // pairwise arc test on the sampled polyline
  for (int a = 0; a < kSamples; ++a) {
    const Vec2& p1 = pts[a];
    const Vec2& p2 = pts[(a + 1) % kSamples];
    for (int b = a + 2; b < kSamples; ++b) {
      if (a == 0 && b == kSamples - 1) continue;
      if (segments_intersect(p1, p2, pts[b], pts[(b + 1) % kSamples]))
        throw Error(ErrorKind::InvalidCurve, "curve self-intersects");
    }
  }
}

std::string ParametricCurve::family() const {
  return std::visit(Overloaded{
                        [](const Circle&) { return std::string("circle"); },
                        [](const Ellipse&) { return std::string("ellipse"); },
                        [](const Kite&) { return std::string("kite"); },
                        [](const FourierBlob&) { return std::string("blob"); },
                    },
                    descriptor_);
}

CurveJet ParametricCurve::jet(double t) const {
  return std::visit(Overloaded{
                        [t](const Circle& c) { return circle_jet(c, t); },
                        [t](const Ellipse& e) { return ellipse_jet(e, t); },
                        [t](const Kite& k) { return kite_jet(k, t); },
                        [t](const FourierBlob& b) { return blob_jet(b, t); },
                    },
                    descriptor_);
}

ParametricCurve ParametricCurve::scaled(double factor) const {
  if (!(factor > 0)) throw Error(ErrorKind::InvalidCurve, "scale factor must be positive");
  // Only circle, ellipse and blob are closed under scaling within their family.
  return std::visit(
      Overloaded{
          [&](const Circle& c) { return ParametricCurve(Circle{c.R * factor}); },
          [&](const Ellipse& e) { return ParametricCurve(Ellipse{e.a * factor, e.b * factor}); },
          [&](const Kite&) -> ParametricCurve {
            throw Error(ErrorKind::InvalidCurve, "kite family is not closed under scaling");
          },
          [&](const FourierBlob& b) {
            FourierBlob s = b;
            s.r0 *= factor;
            for (double& a : s.cos_coeffs) a *= factor;
            for (double& a : s.sin_coeffs) a *= factor;
            return ParametricCurve(s);
          },
      },
      descriptor_);
}

double curvature(const ParametricCurve& curve, double t) {
  const CurveJet j = curve.jet(t);
  const double s = j.d1.norm();
  if (s < kMinSpeed) throw Error(ErrorKind::Regularity, "degenerate tangent");
  return curve.orientation() * cross(j.d1, j.d2) / (s * s * s);
}

double curvature_derivative(const ParametricCurve& curve, double t) {
  const CurveJet j = curve.jet(t);
  const double s = j.d1.norm();
  if (s < kMinSpeed) throw Error(ErrorKind::Regularity, "degenerate tangent");
  const double c = cross(j.d1, j.d2);
  const double dc = cross(j.d1, j.d3);
  const double ds = j.d1.dot(j.d2) / s;
  return curve.orientation() * (dc / (s * s * s) - 3.0 * c * ds / (s * s * s * s));
}

Vec2 unit_tangent(const ParametricCurve& curve, double t) {
  const Vec2 d = curve.jet(t).d1;
  const double s = d.norm();
  if (s < kMinSpeed) throw Error(ErrorKind::Regularity, "degenerate tangent");
  return d / s;
}

Vec2 outward_normal(const ParametricCurve& curve, double t) {
  const Vec2 tau = unit_tangent(curve, t);
  return curve.orientation() * Vec2(tau.y(), -tau.x());
}

double perimeter(const ParametricCurve& curve, int n) {
  if (n < 16) throw Error(ErrorKind::Precondition, "perimeter needs n >= 16");
  double sum = 0;
  for (int k = 0; k < n; ++k) sum += curve.speed(kTwoPi * k / n);
  return sum * kTwoPi / n;
}

double BoundaryQuadrature::total_weight() const {
  double s = 0;
  for (double w : weights) s += w;
  return s;
}

BoundaryQuadrature boundary_quadrature(const ParametricCurve& curve, int n) {
  if (n < 16) throw Error(ErrorKind::Precondition, "boundary quadrature needs n >= 16");
  BoundaryQuadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  q.points.resize(n);
  q.normals.resize(n);
  q.tangents.resize(n);
  q.speeds.resize(n);
  q.curvatures.resize(n);
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    const CurveJet j = curve.jet(t);
    const double s = j.d1.norm();
    if (s < kMinSpeed) throw Error(ErrorKind::Regularity, "degenerate tangent");
    q.nodes[k] = t;
    q.speeds[k] = s;
    q.weights[k] = kTwoPi / n * s;
    q.points[k] = j.p;
    q.tangents[k] = j.d1 / s;
    q.normals[k] = curve.orientation() * Vec2(q.tangents[k].y(), -q.tangents[k].x());
    q.curvatures[k] = curve.orientation() * cross(j.d1, j.d2) / (s * s * s);
  }
  return q;
}

GaussRule gauss_legendre_unit(int n) {
  if (n < 1) throw Error(ErrorKind::Precondition, "Gauss-Legendre rule needs n >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    const double w = 2.0 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (1 - x);
    rule.weights[i] = 0.5 * w;
  }
  return rule;
}

CurvatureExtrema curvature_extrema(const ParametricCurve& curve, int density) {
  if (density < 16) throw Error(ErrorKind::Precondition, "curvature sampling density too small");
  CurvatureExtrema ext;
  ext.min = std::numeric_limits<double>::infinity();
  ext.max = -ext.min;
  const double dt = kTwoPi / density;
  for (int k = 0; k < density; ++k) {
    const double t = k * dt;
    const double kap = curvature(curve, t);
    if (kap < ext.min) {
      ext.min = kap;
      ext.t_min = t;
    }
    if (kap > ext.max) {
      ext.max = kap;
      ext.t_max = t;
    }
  }
  constexpr int kBits = 52;
  const auto low = boost::math::tools::brent_find_minima(
      [&](double t) { return curvature(curve, t); }, ext.t_min - dt, ext.t_min + dt, kBits);
  if (low.second < ext.min) {
    ext.min = low.second;
    ext.t_min = low.first;
  }
  const auto high = boost::math::tools::brent_find_minima(
      [&](double t) { return -curvature(curve, t); }, ext.t_max - dt, ext.t_max + dt, kBits);
  if (-high.second > ext.max) {
    ext.max = -high.second;
    ext.t_max = high.first;
  }
  ext.t_min = std::fmod(ext.t_min + kTwoPi, kTwoPi);
  ext.t_max = std::fmod(ext.t_max + kTwoPi, kTwoPi);
  return ext;
}

DomainGeometry::DomainGeometry(std::string id, ParametricCurve curve)
    : id_(std::move(id)), boundary_(std::move(curve)), ambient_dim_(2) {
  convex_ = curvature_extrema(std::get<ParametricCurve>(boundary_)).min >= -1e-10;
}

DomainGeometry::DomainGeometry(std::string id, BallDescriptor ball)
    : id_(std::move(id)), boundary_(ball), ambient_dim_(ball.ambient_dim), convex_(true) {
  if (!(ball.radius > 0)) throw Error(ErrorKind::InvalidCurve, "ball radius must be positive");
  if (ball.ambient_dim < 2) throw Error(ErrorKind::InvalidCurve, "ball ambient dimension must be >= 2");
}

const ParametricCurve& DomainGeometry::curve() const {
  if (is_ball()) throw Error(ErrorKind::Precondition, "domain '" + id_ + "' is an analytic ball");
  return std::get<ParametricCurve>(boundary_);
}

const BallDescriptor& DomainGeometry::ball() const {
  if (!is_ball()) throw Error(ErrorKind::Precondition, "domain '" + id_ + "' is not a ball");
  return std::get<BallDescriptor>(boundary_);
}

double DomainGeometry::boundary_measure(int n) const {
  if (!is_ball()) return perimeter(curve(), n);
  const BallDescriptor& b = ball();
  const int N = b.ambient_dim - 1;
  return b.ambient_dim * unit_ball_volume(b.ambient_dim) * std::pow(b.radius, N);
}

}  // namespace steklov
