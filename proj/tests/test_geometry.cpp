#include "steklov/error.hpp"
#include "steklov/geometry.hpp"

#include <doctest.h>

#include <boost/math/special_functions/ellint_2.hpp>

#include <cmath>
#include <functional>
#include <numbers>

using namespace steklov;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm), right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 40);
}

// Arc length from finite differences of the position only.
double fd_perimeter(const ParametricCurve& c) {
  const double e = 1e-6;
  return adaptive_simpson(
      [&](double t) { return (c.position(t + e) - c.position(t - e)).norm() / (2 * e); }, 0.0, kTwoPi, 1e-11);
}

}  // namespace

TEST_CASE("perimeter against adaptive Simpson and the elliptic integral") {
  const ParametricCurve ellipse(Ellipse{1.5, 1.0});
  const double e2 = 1.0 - 1.0 / 2.25;
  const double exact = 4 * 1.5 * boost::math::ellint_2(std::sqrt(e2));
  CHECK(perimeter(ellipse, 256) == doctest::Approx(exact).epsilon(1e-13));
  CHECK(fd_perimeter(ellipse) == doctest::Approx(exact).epsilon(1e-8));

  for (const ParametricCurve& c : {ParametricCurve(Kite{}), ParametricCurve(FourierBlob{1.0, {0.0, 0.0, 0.15}, {}})}) {
    CAPTURE(c.family());
    CHECK(perimeter(c, 512) == doctest::Approx(fd_perimeter(c)).epsilon(1e-8));
  }
  CHECK(perimeter(ParametricCurve(Circle{2.0})) == doctest::Approx(2 * kTwoPi).epsilon(1e-14));
}

TEST_CASE("orientation and outward normal") {
  for (const ParametricCurve& c : {ParametricCurve(Circle{1.0}), ParametricCurve(Ellipse{1.5, 1.0}),
                                   ParametricCurve(Kite{}), ParametricCurve(FourierBlob{1.0, {0.0, 0.0, 0.15}, {}})}) {
    CAPTURE(c.family());
    CHECK(c.orientation() == 1);
    // divergence theorem: int x . nu ds = 2 |Omega|
    double flux = 0.0;
    const int n = 512;
    for (int k = 0; k < n; ++k) {
      const double t = kTwoPi * k / n;
      flux += c.position(t).dot(outward_normal(c, t)) * c.speed(t) * kTwoPi / n;
    }
    CHECK(flux > 0);
  }
  const ParametricCurve ellipse(Ellipse{1.5, 1.0});
  double flux = 0.0;
  for (int k = 0; k < 256; ++k) {
    const double t = kTwoPi * k / 256;
    flux += ellipse.position(t).dot(outward_normal(ellipse, t)) * ellipse.speed(t) * kTwoPi / 256;
  }
  CHECK(flux == doctest::Approx(2 * std::numbers::pi * 1.5).epsilon(1e-13));
}

TEST_CASE("Frenet relation by finite differences") {
  // d T / ds = -kappa nu with the outward normal nu, and dkappa/dt matches a
  // central difference of kappa.
  const double e = 1e-5;
  for (const ParametricCurve& c : {ParametricCurve(Ellipse{1.5, 1.0}), ParametricCurve(Kite{}),
                                   ParametricCurve(FourierBlob{1.0, {0.0, 0.0, 0.15}, {}})}) {
    CAPTURE(c.family());
    for (double t : {0.1, 0.9, 2.0, 3.3, 5.7}) {
      const Vec2 dT = (unit_tangent(c, t + e) - unit_tangent(c, t - e)) / (2 * e) / c.speed(t);
      const Vec2 expected = -curvature(c, t) * outward_normal(c, t);
      CHECK((dT - expected).norm() < 1e-6 * (1 + expected.norm()));
      const double dk = (curvature(c, t + e) - curvature(c, t - e)) / (2 * e);
      CHECK(curvature_derivative(c, t) == doctest::Approx(dk).epsilon(1e-6));
      CHECK(unit_tangent(c, t).dot(outward_normal(c, t)) == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("closed-form curvatures") {
  CHECK(curvature(ParametricCurve(Circle{2.0}), 1.0) == doctest::Approx(0.5));
  const ParametricCurve ellipse(Ellipse{1.5, 1.0});
  // a / b^2 at the ends of the major axis, b / a^2 at the minor axis
  CHECK(curvature(ellipse, 0.0) == doctest::Approx(1.5));
  CHECK(curvature(ellipse, kTwoPi / 4) == doctest::Approx(1.0 / 2.25));
  const CurvatureExtrema ex = curvature_extrema(ellipse);
  CHECK(ex.max == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(ex.min == doctest::Approx(1.0 / 2.25).epsilon(1e-12));

  const CurvatureExtrema kite = curvature_extrema(ParametricCurve(Kite{}));
  CHECK(kite.min < 0);
  CHECK(kite.max > 11.0);
}

TEST_CASE("boundary quadrature caches consistent data") {
  const ParametricCurve c(Kite{});
  const BoundaryQuadrature q = boundary_quadrature(c, 128);
  REQUIRE(q.size() == 128);
  CHECK(q.total_weight() == doctest::Approx(perimeter(c, 128)).epsilon(1e-14));
  for (int k = 0; k < q.size(); k += 17) {
    CHECK(q.normals[k].norm() == doctest::Approx(1.0));
    CHECK(q.weights[k] == doctest::Approx(kTwoPi / 128 * q.speeds[k]));
    CHECK(q.curvatures[k] == doctest::Approx(curvature(c, q.nodes[k])));
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const GaussRule g = gauss_legendre_unit(8);
  for (int p = 0; p <= 15; ++p) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], p);
    CHECK(s == doctest::Approx(1.0 / (p + 1)).epsilon(1e-14));
  }
}

TEST_CASE("invalid curves are rejected") {
  CHECK_THROWS_AS(ParametricCurve(Circle{0.0}), Error);
  CHECK_THROWS_AS(ParametricCurve(Ellipse{1.0, -1.0}), Error);
  CHECK_THROWS_AS(ParametricCurve(FourierBlob{1.0, {0.0, 0.0, 1.5}, {}}), Error);
  CHECK_THROWS_AS(perimeter(ParametricCurve(Circle{1.0}), 4), Error);
}

TEST_CASE("domains") {
  const DomainGeometry disk("disk", ParametricCurve(Circle{1.0}));
  CHECK(disk.is_convex());
  CHECK(disk.hypersurface_dim() == 1);
  CHECK(disk.boundary_measure() == doctest::Approx(kTwoPi));
  CHECK_FALSE(DomainGeometry("kite", ParametricCurve(Kite{})).is_convex());

  const DomainGeometry sphere("ball", BallDescriptor{2.0, 3});
  CHECK(sphere.is_ball());
  CHECK(sphere.hypersurface_dim() == 2);
  CHECK(sphere.boundary_measure() == doctest::Approx(4 * std::numbers::pi * 4));
  CHECK_THROWS_AS(sphere.curve(), Error);
  CHECK_THROWS_AS(disk.ball(), Error);
}

TEST_CASE("scaling") {
  const ParametricCurve c = ParametricCurve(Ellipse{1.5, 1.0}).scaled(2.0);
  CHECK(perimeter(c) == doctest::Approx(2 * perimeter(ParametricCurve(Ellipse{1.5, 1.0}))));
  CHECK(curvature(c, 0.0) == doctest::Approx(0.75));
}
