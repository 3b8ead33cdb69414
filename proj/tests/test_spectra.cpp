#include "steklov/error.hpp"
#include "steklov/spectra.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace steklov;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("disk Steklov spectrum from the Nystrom solver") {
  const DomainGeometry disk("disk", ParametricCurve(Circle{2.0}));
  const SteklovSolution s = steklov_spectrum_2d(disk, 21, 128);
  REQUIRE(s.spectrum.size() == 21);
  for (int j = 0; j < 21; ++j) CHECK(s.spectrum.values[j] == doctest::Approx(((j + 1) / 2) / 2.0).epsilon(1e-11));
  CHECK(s.spectrum.values[0] == doctest::Approx(0.0));
  CHECK(s.spectrum.group[1] == s.spectrum.group[2]);
  CHECK(s.spectrum.group[2] != s.spectrum.group[3]);
  CHECK(s.spectrum.boundary_measure == doctest::Approx(2 * kTwoPi));
  CHECK(s.condition < 1e12);
}

TEST_CASE("eigenfunctions are orthonormal and satisfy the Steklov condition") {
  const DomainGeometry e("ellipse", ParametricCurve(Ellipse{1.5, 1.0}));
  const SteklovSolution s = steklov_spectrum_2d(e, 12, 256);
  const auto& ef = s.eigenfunctions;
  Eigen::VectorXd w(ef.quad.size());
  for (int i = 0; i < w.size(); ++i) w(i) = ef.quad.weights[i];
  const Eigen::MatrixXd gram = ef.trace.transpose() * w.asDiagonal() * ef.trace;
  CHECK((gram - Eigen::MatrixXd::Identity(12, 12)).norm() < 1e-10);
  for (int k = 1; k < 12; ++k) {
    const Eigen::VectorXd r = ef.normal_derivative.col(k) - s.spectrum.values[k] * ef.trace.col(k);
    CHECK(r.norm() < 1e-8 * ef.trace.col(k).norm() * (1 + s.spectrum.values[k]));
  }
}

TEST_CASE("harmonic extension of a disk eigenfunction") {
  // The mode r cos(theta - phi) is linear: its value at an interior point is
  // determined by the boundary trace at two nodes.
  const DomainGeometry disk("disk", ParametricCurve(Circle{1.0}));
  const SteklovSolution s = steklov_spectrum_2d(disk, 3, 128);
  const auto& ef = s.eigenfunctions;
  const double a = ef.trace(0, 1), b = ef.trace(32, 1);  // values at theta = 0 and pi/2
  const Vec2 x(0.3, -0.2);
  CHECK(ef.evaluate(1, x) == doctest::Approx(a * x.x() + b * x.y()).epsilon(1e-9));
}

TEST_CASE("refinement changes the ellipse spectrum by less than 1e-8") {
  const DomainGeometry e("ellipse", ParametricCurve(Ellipse{1.5, 1.0}));
  const SpectrumResult a = steklov_spectrum_2d(e, 40, 256).spectrum;
  const SpectrumResult b = steklov_spectrum_2d(e, 40, 512).spectrum;
  for (int j = 0; j < 40; ++j) CHECK(std::abs(a.values[j] - b.values[j]) <= 1e-8);
}

TEST_CASE("MFS oracle on the disk and against Nystrom on the kite") {
  const DomainGeometry disk("disk", ParametricCurve(Circle{1.0}));
  const SpectrumResult m = mfs_oracle_spectrum(disk, 15);
  CHECK(m.solver == SolverKind::MfsOracle);
  CHECK(m.reliable);
  for (int j = 0; j < 15; ++j) CHECK(std::abs(m.values[j] - (j + 1) / 2) < 1e-7);

  const DomainGeometry kite("kite", ParametricCurve(Kite{}));
  const SpectrumResult n = steklov_spectrum_2d(kite, 10, 512).spectrum;
  const SpectrumResult o = mfs_oracle_spectrum(kite, 10);
  for (int j = 0; j < 10; ++j) CHECK(std::abs(n.values[j] - o.values[j]) < 1e-6);
}

TEST_CASE("discretization preconditions") {
  const DomainGeometry disk("disk", ParametricCurve(Circle{1.0}));
  CHECK_THROWS_AS(steklov_spectrum_2d(disk, 100, 64), Error);
  CHECK_THROWS_AS(steklov_spectrum_2d(DomainGeometry("b", BallDescriptor{1.0, 3}), 5, 64), Error);
}

TEST_CASE("spherical harmonic dimensions") {
  CHECK(harmonic_multiplicity(1, 0) == 1);
  for (int l = 1; l < 10; ++l) CHECK(harmonic_multiplicity(1, l) == 2);
  for (int N = 2; N <= 5; ++N)
    for (int l = 0; l < 12; ++l) {
      // dim of degree-l harmonics in N+1 variables: C(l+N, N) - C(l+N-2, N)
      const double expected = binomial(l + N, N) - (l >= 2 ? binomial(l + N - 2, N) : 0.0);
      CHECK(static_cast<double>(harmonic_multiplicity(N, l)) == expected);
    }
  CHECK(harmonic_multiplicity(2, 3) == 7);
}

TEST_CASE("ball spectra") {
  const BallSpectra b = ball_spectra(2, 1.5, 4);
  // 1 + 3 + 5 + 7 + 9 values for l <= 4
  REQUIRE(b.steklov.size() == 25);
  REQUIRE(b.laplace_beltrami.size() == 25);
  CHECK(b.steklov.values[24] == doctest::Approx(4 / 1.5));
  CHECK(b.laplace_beltrami.values[24] == doctest::Approx(20 / 2.25));
  CHECK(b.steklov.solver == SolverKind::AnalyticBall);
  CHECK(b.steklov.boundary_measure == doctest::Approx(4 * std::numbers::pi * 2.25));
}

TEST_CASE("curve Laplace-Beltrami spectrum") {
  const SpectrumResult s = lb_spectrum_curve(kTwoPi, 7);
  const double expected[] = {0, 1, 1, 4, 4, 9, 9};
  for (int j = 0; j < 7; ++j) CHECK(s.values[j] == doctest::Approx(expected[j]));
  CHECK(s.kind == SpectrumKind::LaplaceBeltrami);
}

TEST_CASE("Weyl ratios") {
  const SpectrumResult d = disk_steklov_spectrum(1.0, 401);
  CHECK(weyl_ratio(d, 200) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(weyl_ratio(d, 399) == doctest::Approx(200.0 / 199.5));
  CHECK_THROWS_AS(weyl_ratio(d, 0), Error);
  CHECK_THROWS_AS(weyl_ratio(d, 401), Error);
  const SpectrumResult l = lb_spectrum_curve(kTwoPi, 201);
  CHECK(weyl_ratio(l, 200) == doctest::Approx(1.0));
}

TEST_CASE("multiplicity groups") {
  SpectrumResult s;
  s.values = {0.0, 1e-12, 1.0, 1.0 + 1e-9, 1.1, 2.0};
  assign_groups(s);
  CHECK(s.group == std::vector<int>{0, 0, 1, 1, 2, 3});
  const auto g = s.grouped();
  REQUIRE(g.size() == 4);
  CHECK(g[1].second == 2);
}

TEST_CASE("periodic derivative") {
  const int n = 32;
  Eigen::MatrixXd f(n, 2);
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    f(i, 0) = std::sin(3 * t);
    f(i, 1) = std::cos(t) + 0.5 * std::cos(5 * t);
  }
  const Eigen::MatrixXd d = periodic_derivative(f);
  for (int i = 0; i < n; ++i) {
    const double t = kTwoPi * i / n;
    CHECK(d(i, 0) == doctest::Approx(3 * std::cos(3 * t)).epsilon(1e-12));
    CHECK(d(i, 1) == doctest::Approx(-std::sin(t) - 2.5 * std::sin(5 * t)).epsilon(1e-12));
  }
}
