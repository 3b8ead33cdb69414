// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include "steklov/bounds.hpp"
#include "steklov/config.hpp"
#include "steklov/error.hpp"
#include "steklov/spectra.hpp"
#include "steklov/tubular.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

using namespace steklov;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Solves shared by several criteria, computed on first use.
struct Shared {
  DomainGeometry disk{"disk-1", ParametricCurve(Circle{1.0})};
  DomainGeometry ellipse{"ellipse-1.5-1", ParametricCurve(Ellipse{1.5, 1.0})};
  DomainGeometry kite{"kite", ParametricCurve(Kite{})};
  DomainGeometry blob{"blob-3", ParametricCurve(FourierBlob{1.0, {0.0, 0.0, 0.15}, {}})};
  std::map<std::string, GeometricConstants> constants;
  std::map<std::string, SpectrumResult> deep;  // 2001 modes at n_disc = 4096

  const GeometricConstants& k(const DomainGeometry& d) {
    auto it = constants.find(d.id());
    if (it == constants.end()) it = constants.emplace(d.id(), compute_constants(d)).first;
    return it->second;
  }
  const SpectrumResult& sigma(const DomainGeometry& d) {
    auto it = deep.find(d.id());
    if (it == deep.end()) it = deep.emplace(d.id(), steklov_spectrum_2d(d, 2001, 4096).spectrum).first;
    return it->second;
  }
};

Shared shared;

Outcome disk_spectrum() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpectrumResult s = steklov_spectrum_2d(shared.disk, 21, 256).spectrum;
  const double secs = seconds_since(t0);
  double err = 0.0;
  for (int j = 0; j <= 20; ++j) err = std::max(err, std::abs(s.values[j] - (j + 1) / 2));
  return {err <= 1e-8 && secs <= 30.0, fmt("max |sigma_j - ceil(j/2)| = %.2e over j <= 20, %.2f s", err, secs)};
}

Outcome ball_relation() {
  double worst = 0.0;
  bool ok = true;
  for (int N : {1, 2, 3})
    for (double R : {1.0, 1.5}) {
      const BoundCheckReport r = check_ball_relation(N, R, 20);
      ok = ok && r.verdict == Verdict::Pass;
      // independent evaluation on sigma = l/R, lambda = l(l+N-1)/R^2
      for (int l = 0; l <= 20; ++l) {
        const double s = l / R, lam = l * (l + N - 1.0) / (R * R);
        worst = std::max(worst, std::abs(lam - (s * s + (N - 1) / R * s)));
      }
      for (const auto& row : r.rows) worst = std::max(worst, row.lhs);
    }
  return {ok && worst <= 1e-12, fmt("max |lambda - sigma^2 - (N-1) sigma / R| = %.2e over 6 balls, l <= 20", worst)};
}

Outcome oracle_agreement() {
  const SpectrumResult n = steklov_spectrum_2d(shared.ellipse, 20, 512).spectrum;
  const SpectrumResult m = mfs_oracle_spectrum(shared.ellipse, 20);
  double diff = 0.0;
  for (int j = 0; j < 20; ++j) diff = std::max(diff, std::abs(n.values[j] - m.values[j]));
  return {m.reliable && diff <= 1e-6, fmt("max |nystrom - mfs| = %.2e on the first 20 ellipse eigenvalues", diff)};
}

Outcome main_theorem() {
  bool ok = true;
  const double c_disk = shared.k(shared.disk).c_Omega, c_ell = shared.k(shared.ellipse).c_Omega;
  ok = ok && std::abs(c_disk - 1.0) < 1e-8 && std::abs(c_ell - 1.5) < 1e-8;
  int violations = 0;
  for (const DomainGeometry* d : {&shared.disk, &shared.ellipse, &shared.kite}) {
    const SpectrumResult s = steklov_spectrum_2d(*d, 41, 512).spectrum;
    const SpectrumResult l = lb_spectrum_curve(s.boundary_measure, 41, d->id());
    for (const auto& r : check_main_theorem(s, l, shared.k(*d).c_Omega, 40)) {
      for (const auto& row : r.rows) violations += row.margin < -r.tolerance;
      ok = ok && r.verdict == Verdict::Pass;
    }
  }
  ok = ok && violations == 0;
  return {ok, fmt("c_disk = %.9f, c_ellipse = %.9f, c_kite = %.4f; %d violations over 3 inequalities, j <= 40", c_disk,
                  c_ell, shared.k(shared.kite).c_Omega, violations)};
}

Outcome riesz_steklov() {
  const SpectrumResult& s = shared.sigma(shared.disk);
  const double r10 = riesz_mean(s.values, 10.0) / riesz_bound_rhs(10.0, 1, s.boundary_measure, 1.0);
  const double r50 = riesz_mean(s.values, 50.0) / riesz_bound_rhs(50.0, 1, s.boundary_measure, 1.0);
  // (2 m^3 + m) / 3 over (2/3) (m + 1)^3
  const double e10 = 670.0 / (2.0 / 3 * 1331), e50 = (2.0 * 125000 + 50) / 3 / (2.0 / 3 * 51 * 51 * 51);
  bool ok = std::abs(r10 - e10) < 1e-8 && std::abs(r50 - e50) < 1e-8 && r10 <= 1 && r50 <= 1;

  const SpectrumResult& e = shared.sigma(shared.ellipse);
  GridSpec g;
  const BoundCheckReport r = riesz_mean_steklov_check(e, g.resolve(e.values.back()), shared.k(shared.ellipse).c_Omega);
  ok = ok && r.verdict == Verdict::Pass && r.rows.size() == 50;
  return {ok, fmt("disk ratio %.5f at z = 10, %.5f at z = 50; ellipse min margin %.3e on 50 z up to %.1f", r10, r50,
                  r.min_margin, r.rows.back().param)};
}

Outcome riesz_laplacian() {
  const SpectrumResult l = lb_spectrum_curve(2 * kPi, 201, "unit-circle");
  std::vector<double> z;
  for (int i = 0; i <= 1000; ++i) z.push_back(0.1 * i);
  const BoundCheckReport r = riesz_mean_laplacian_check(l, z, 1.0);
  int violations = 0;
  for (const auto& row : r.rows) violations += row.margin < -r.tolerance;
  return {r.verdict == Verdict::Pass && violations == 0,
          fmt("%d violations on 1001 z in [0, 100], min margin %.3e", violations, r.min_margin)};
}

Outcome heat_trace() {
  const std::vector<double> t{0.05, 0.1, 0.5, 1.0, 5.0};
  const BoundCheckReport d = heat_trace_check(shared.sigma(shared.disk), t, shared.k(shared.disk).c_Omega, 2000);
  const BoundCheckReport e =
      heat_trace_check(shared.sigma(shared.ellipse), t, shared.k(shared.ellipse).c_Omega, 2000);
  const double sharp = d.extras.at("sharp_ratio_t_min");
  const bool ok = d.verdict == Verdict::Pass && e.verdict == Verdict::Pass && d.extras.at("J") == 2000 &&
                  e.extras.at("J") == 2000 && std::abs(sharp - 1.0) <= 0.1;
  return {ok, fmt("disk min margin %.3e, ellipse %.3e (J = %.0f, certified tail %.2e at t = 0.05); "
                  "t = 0.05 disk ratio to the sharp constant %.5f",
                  d.min_margin, e.min_margin, d.extras.at("J"), d.extras.at("tail_t_min"), sharp)};
}

Outcome lower_bound() {
  const BoundCheckReport d = lower_bound_check(shared.sigma(shared.disk), shared.k(shared.disk).c_Omega, 200);
  const BoundCheckReport e = lower_bound_check(shared.sigma(shared.ellipse), shared.k(shared.ellipse).c_Omega, 200);
  const double s200 = d.rows[200].rhs, bound = d.rows[200].lhs;
  const bool ok = d.verdict == Verdict::Pass && e.verdict == Verdict::Pass && std::abs(s200 - 100) < 1e-8 &&
                  std::abs(bound - (201 / (2 * std::exp(1.0)) - 1)) < 1e-10;
  return {ok, fmt("disk sigma_200 = %.9f >= %.4f; ellipse min margin %.4f over j <= 200", s200, bound, e.min_margin)};
}

Outcome pohozaev() {
  double worst = 0.0;
  bool ok = true;
  for (const DomainGeometry* d : {&shared.disk, &shared.ellipse})
    for (bool tubular : {true, false}) {
      const BoundCheckReport r = pohozaev_check(*d, shared.k(*d), 6, tubular);
      ok = ok && r.verdict == Verdict::Pass;
      for (const auto& row : r.rows)
        if (row.rhs > 0) worst = std::max(worst, row.lhs / row.rhs * kIdentityRelTol);
    }
  return {ok && worst <= 1e-8, fmt("max |residual| / energy = %.2e, degree <= 6, both fields", worst)};
}

Outcome tubular() {
  bool ok = true;
  int samples = 0;
  for (const DomainGeometry* d : {&shared.disk, &shared.ellipse, &shared.kite, &shared.blob}) {
    const GeometricConstants& k = shared.k(*d);
    for (const auto& r : rho_bounds_check(*d, k, 0.9 * k.h_bar, 10000, 20240611)) {
      ok = ok && r.verdict == Verdict::Pass;
      samples += r.inequality_id == "rho-upper" ? static_cast<int>(r.rows.size()) : 0;
    }
    ok = ok && parallel_curvature_check(*d, 0.9 * k.h_bar, 512).verdict == Verdict::Pass;
  }
  const double reach = estimate_reach(shared.ellipse).h_bar;
  ok = ok && samples == 40000 && std::abs(reach - 2.0 / 3.0) <= 1e-6;
  return {ok, fmt("rho bounds on %d tubular points over 4 domains, parallel-curvature law, ellipse reach %.9f", samples,
                  reach)};
}

Outcome weyl() {
  const double d = weyl_ratio(shared.sigma(shared.disk), 200);
  const double e = weyl_ratio(shared.sigma(shared.ellipse), 100);
  return {std::abs(d - 1.0) <= 1e-9 && std::abs(e - 1.0) <= 0.05,
          fmt("disk ratio at j = 200: %.12f; ellipse ratio at j = 100: %.5f", d, e)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"disk spectrum accuracy", disk_spectrum},
      {"ball exact relation", ball_relation},
      {"oracle agreement", oracle_agreement},
      {"eigenvalue comparison suite", main_theorem},
      {"Steklov Riesz-mean bound", riesz_steklov},
      {"Laplacian Riesz-mean bound on the circle", riesz_laplacian},
      {"heat-trace bound", heat_trace},
      {"lower bound", lower_bound},
      {"Pohozaev identity", pohozaev},
      {"tubular properties", tubular},
      {"Weyl ratios", weyl},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
