#include "steklov/spectra.hpp"

#include "steklov/error.hpp"
#include "steklov/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace steklov {

std::string to_string(SpectrumKind k) {
  return k == SpectrumKind::Steklov ? "steklov" : "laplace-beltrami";
}

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::NystromDtn: return "nystrom-dtn";
    case SolverKind::MfsOracle: return "mfs-oracle";
    case SolverKind::ExactCurve: return "exact-curve";
    case SolverKind::AnalyticBall: return "analytic-ball";
  }
  return "unknown";
}

void assign_groups(SpectrumResult& s, double rel_tol) {
  s.group.assign(s.values.size(), 0);
  int g = 0;
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    const double prev = s.values[i - 1], cur = s.values[i];
    if (std::abs(cur - prev) > rel_tol * std::max(std::abs(cur), 1e-2)) ++g;
    s.group[i] = g;
  }
}

std::vector<std::pair<double, int>> SpectrumResult::grouped() const {
  std::vector<std::pair<double, int>> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || group[i] != group[i - 1]) {
      out.emplace_back(values[i], 1);
    } else {
      auto& [v, mult] = out.back();
      v = (v * mult + values[i]) / (mult + 1);
      ++mult;
    }
  }
  return out;
}

SpectrumResult lb_spectrum_curve(double perimeter, int n_modes, std::string domain_ref) {
  if (!(perimeter > 0)) throw Error(ErrorKind::Precondition, "perimeter must be positive");
  SpectrumResult s;
  s.kind = SpectrumKind::LaplaceBeltrami;
  s.solver = SolverKind::ExactCurve;
  s.domain_ref = std::move(domain_ref);
  s.hypersurface_dim = 1;
  s.boundary_measure = perimeter;
  for (int j = 0; j < n_modes; ++j) {
    const int k = (j + 1) / 2;
    const double root = 2.0 * std::numbers::pi * k / perimeter;
    s.values.push_back(root * root);
  }
  assign_groups(s);
  s.multiplicity_resolved = n_modes % 2 == 1;
  return s;
}

SpectrumResult disk_steklov_spectrum(double R, int n_modes, std::string domain_ref) {
  if (!(R > 0)) throw Error(ErrorKind::Precondition, "radius must be positive");
  SpectrumResult s;
  s.kind = SpectrumKind::Steklov;
  s.solver = SolverKind::AnalyticBall;
  s.domain_ref = std::move(domain_ref);
  s.hypersurface_dim = 1;
  s.boundary_measure = 2.0 * std::numbers::pi * R;
  for (int j = 0; j < n_modes; ++j) s.values.push_back(((j + 1) / 2) / R);
  assign_groups(s);
  s.multiplicity_resolved = n_modes % 2 == 1;
  return s;
}

long long harmonic_multiplicity(int N, int l) {
  if (N < 1 || l < 0) throw Error(ErrorKind::Precondition, "harmonic multiplicity needs N >= 1 and l >= 0");
  if (l == 0) return 1;
  if (N == 1) return 2;
  // (2l + N - 1)(l + N - 2)! / (l! (N - 1)!), accumulated as binomials
  long long binom = 1;  // C(l + N - 2, N - 2)
  for (int i = 1; i <= N - 2; ++i) binom = binom * (l + i) / i;
  return (2LL * l + N - 1) * binom / (N - 1);
}

BallSpectra ball_spectra(int N, double R, int l_max, std::string domain_ref) {
  if (N < 1 || !(R > 0) || l_max < 1)
    throw Error(ErrorKind::Precondition, "ball spectra need N >= 1, R > 0, l_max >= 1");
  BallSpectra out;
  const double measure = (N + 1) * unit_ball_volume(N + 1) * std::pow(R, N);
  for (SpectrumResult* s : {&out.steklov, &out.laplace_beltrami}) {
    s->solver = SolverKind::AnalyticBall;
    s->domain_ref = domain_ref;
    s->hypersurface_dim = N;
    s->boundary_measure = measure;
  }
  out.steklov.kind = SpectrumKind::Steklov;
  out.laplace_beltrami.kind = SpectrumKind::LaplaceBeltrami;
  for (int l = 0; l <= l_max; ++l) {
    const long long d = harmonic_multiplicity(N, l);
    for (long long i = 0; i < d; ++i) {
      out.steklov.values.push_back(l / R);
      out.laplace_beltrami.values.push_back(l * (l + N - 1.0) / (R * R));
    }
  }
  assign_groups(out.steklov);
  assign_groups(out.laplace_beltrami);
  return out;
}

double weyl_ratio(const SpectrumResult& spectrum, int j) {
  if (j == 0) throw Error(ErrorKind::UndefinedIndex, "the Weyl ratio is undefined at j = 0");
  if (j < 0 || j >= spectrum.size()) throw Error(ErrorKind::UndefinedIndex, "index beyond the computed spectrum");
  const int N = spectrum.hypersurface_dim;
  const double weyl =
      2.0 * std::numbers::pi * std::pow(unit_ball_volume(N) * spectrum.boundary_measure, -1.0 / N);
  const double scale = std::pow(static_cast<double>(j), 1.0 / N) * weyl;
  if (spectrum.kind == SpectrumKind::Steklov) return spectrum.values[j] / scale;
  return spectrum.values[j] / (scale * scale);
}

}  // namespace steklov
