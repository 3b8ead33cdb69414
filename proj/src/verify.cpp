#include "steklov/verify.hpp"

#include "steklov/report.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace steklov {

using nlohmann::json;

namespace {

bool is_solver_kind(ErrorKind k) { return k != ErrorKind::Config && k != ErrorKind::UnknownDomain; }

// Runs one stage; a module error becomes a failed placeholder report so the
// remaining stages still run.
void stage(DomainOutcome& out, const std::string& id, const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    out.errors.push_back(id + ": " + e.what());
    out.solver_error = out.solver_error || is_solver_kind(e.kind());
    BoundCheckReport r;
    r.domain_ref = out.domain;
    r.inequality_id = id;
    r.verdict = Verdict::Fail;
    r.note = std::string("error: ") + e.what();
    out.checks.push_back(std::move(r));
  } catch (const std::exception& e) {
    out.errors.push_back(id + ": " + e.what());
    out.solver_error = true;
    BoundCheckReport r;
    r.domain_ref = out.domain;
    r.inequality_id = id;
    r.verdict = Verdict::Fail;
    r.note = std::string("error: ") + e.what();
    out.checks.push_back(std::move(r));
  }
}

SteklovEigenfunctions leading(const SteklovEigenfunctions& ef, int count) {
  count = std::min<int>(count, ef.trace.cols());
  SteklovEigenfunctions out;
  out.quad = ef.quad;
  out.trace = ef.trace.leftCols(count);
  out.normal_derivative = ef.normal_derivative.leftCols(count);
  out.tangential_derivative = ef.tangential_derivative.leftCols(count);
  out.density = ef.density.leftCols(count);
  out.log_scale = ef.log_scale;
  return out;
}

BoundCheckReport spectrum_invariants(const SpectrumResult& s) {
  BoundCheckReport r;
  r.domain_ref = s.domain_ref;
  r.inequality_id = "spectrum-invariants-" + to_string(s.kind);
  r.parameter = "j";
  r.tolerance = 1e-9;
  if (!s.values.empty()) r.add(0, std::abs(s.values[0]), 0.0);
  for (int j = 1; j < s.size(); ++j) r.add(j, s.values[j - 1] - s.values[j], 0.0);
  r.note = "row 0: |value_0| must vanish; row j: value_{j-1} - value_j must not be positive";
  r.finalize();
  return r;
}

BallSpectra ball_spectra_covering(int N, double R, int count, const std::string& id) {
  int l_max = 1;
  while (true) {
    BallSpectra b = ball_spectra(N, R, l_max, id);
    if (b.steklov.size() >= count) return b;
    ++l_max;
  }
}

}  // namespace

int DomainOutcome::count(Verdict v) const {
  int n = 0;
  for (const auto& c : checks) n += c.verdict == v;
  return n;
}

DomainOutcome verify_domain(const DomainEntry& entry, const RunConfig& cfg) {
  DomainOutcome out;
  out.domain = entry.id;
  std::optional<DomainGeometry> dom;
  stage(out, "domain", [&] { dom.emplace(make_domain(entry)); });
  if (!dom) return out;
  stage(out, "constants", [&] {
    out.constants = compute_constants(*dom, cfg.reach_density, cfg.curvature_density);
  });
  if (!out.constants) return out;
  const GeometricConstants& k = *out.constants;
  const bool planar = !dom->is_ball();

  std::optional<SteklovSolution> sol;
  stage(out, "spectra", [&] {
    if (planar) {
      const int modes = std::min(cfg.n_modes, cfg.n_disc / 2 - 1);
      sol.emplace(steklov_spectrum_2d(*dom, modes, cfg.n_disc));
      out.steklov = sol->spectrum;
      out.laplace_beltrami = lb_spectrum_curve(k.perimeter, modes, entry.id);
    } else {
      const BallSpectra b = ball_spectra(k.N, dom->ball().radius, cfg.ball_l_max, entry.id);
      out.steklov = b.steklov;
      out.laplace_beltrami = b.laplace_beltrami;
    }
  });

  if (out.steklov) {
    const SpectrumResult& sigma = *out.steklov;
    const SpectrumResult& lambda = *out.laplace_beltrami;
    auto push = [&](BoundCheckReport r) { out.checks.push_back(std::move(r)); };
    auto push_all = [&](std::vector<BoundCheckReport> rs) {
      for (auto& r : rs) push(std::move(r));
    };
    const int last = sigma.size() - 1;
    push(spectrum_invariants(sigma));
    push(spectrum_invariants(lambda));
    stage(out, "eigenvalue-comparison", [&] {
      push_all(check_main_theorem(sigma, lambda, k.c_Omega, std::min(cfg.j_max, last)));
    });
    if (k.convex)
      stage(out, "convex-refinement",
            [&] { push_all(check_convex_refinement(sigma, lambda, k, std::min(cfg.j_max, last))); });
    stage(out, "riesz-mean-steklov", [&] {
      push(riesz_mean_steklov_check(sigma, cfg.z_grid.resolve(sigma.values.back()), k.c_Omega));
    });
    stage(out, "riesz-first-order-comparison", [&] {
      push(riesz_first_order_check(sigma, lambda, cfg.z_grid.resolve(sigma.values.back()), k.c_Omega));
    });
    stage(out, "riesz-mean-laplacian", [&] {
      push(riesz_mean_laplacian_check(lambda, cfg.lb_z_grid.resolve(lambda.values.back()), k.H_inf));
    });
    stage(out, "heat-trace", [&] {
      if (planar) {
        push(heat_trace_check(sigma, cfg.t_grid, k.c_Omega, cfg.heat_J));
        return;
      }
      // closed-form spectrum far enough out that the certified tail is negligible
      const BallSpectra deep = ball_spectra(k.N, dom->ball().radius, std::max(cfg.ball_l_max, 1000), entry.id);
      BoundCheckReport r = heat_trace_check(deep.steklov, cfg.t_grid, k.c_Omega, deep.steklov.size());
      r.note = "closed-form spectrum through degree " + std::to_string(std::max(cfg.ball_l_max, 1000));
      push(std::move(r));
    });
    stage(out, "sigma-lower", [&] { push(lower_bound_check(sigma, k.c_Omega, std::min(cfg.j_max_lower, last))); });
    stage(out, "weyl-upper-structural",
          [&] { push(weyl_upper_structural(sigma, std::min(cfg.j_max_lower, last))); });
    stage(out, "weyl-ratio", [&] {
      std::vector<int> idx;
      for (int j : {10, 50, 100, 200, 400, 800})
        if (j <= last) idx.push_back(j);
      push(weyl_ratio_report(sigma, idx));
      push(weyl_ratio_report(lambda, idx));
    });
  }

  const double h = 0.9 * k.h_bar;
  stage(out, "rho-bounds", [&] {
    for (auto& r : rho_bounds_check(*dom, k, h, cfg.property_samples, cfg.seed)) out.checks.push_back(std::move(r));
  });
  stage(out, "pohozaev-quadratic-form",
        [&] { out.checks.push_back(quadratic_form_check(*dom, k, h, cfg.quadratic_samples, cfg.seed + 1)); });

  if (planar) {
    stage(out, "parallel-curvature-law", [&] { out.checks.push_back(parallel_curvature_check(*dom, h, 512)); });
    stage(out, "pohozaev-tubular-field",
          [&] { out.checks.push_back(pohozaev_check(*dom, k, cfg.pohozaev_degree, true)); });
  }
  if (planar || dom->ambient_dim() <= 3)
    stage(out, "pohozaev-identity-field",
          [&] { out.checks.push_back(pohozaev_check(*dom, k, cfg.pohozaev_degree, false)); });
  if (planar || dom->ambient_dim() == 2)
    stage(out, "norm-equivalence", [&] {
      std::optional<SteklovEigenfunctions> ef;
      if (sol) ef = leading(sol->eigenfunctions, cfg.j_max_lower + 1);
      for (auto& r : norm_equivalence_reports(*dom, k, cfg.pohozaev_degree, ef ? &*ef : nullptr, 512))
        out.checks.push_back(std::move(r));
    });

  // exact relations where a closed form exists
  const Circle* circle = planar ? std::get_if<Circle>(&dom->curve().descriptor()) : nullptr;
  if (circle || !planar) {
    const double R = circle ? circle->R : dom->ball().radius;
    stage(out, "ball-eigenvalue-identity", [&] {
      BoundCheckReport r = check_ball_relation(k.N, R, cfg.ball_l_max);
      r.domain_ref = entry.id;
      out.checks.push_back(std::move(r));
    });
  }
  if (circle && out.steklov) {
    stage(out, "closed-form-agreement", [&] {
      const SpectrumResult exact = disk_steklov_spectrum(circle->R, out.steklov->size(), entry.id);
      BoundCheckReport r;
      r.domain_ref = entry.id;
      r.inequality_id = "closed-form-agreement";
      r.parameter = "j";
      for (int j = 0; j < std::min(exact.size(), 2 * cfg.j_max + 1); ++j)
        r.add(j, std::abs(out.steklov->values[j] - exact.values[j]), 1e-8);
      r.finalize();
      out.checks.push_back(std::move(r));
    });
  }
  if (planar && cfg.oracle && out.steklov) {
    stage(out, "oracle-agreement", [&] {
      out.oracle = mfs_oracle_spectrum(*dom, cfg.oracle_modes, cfg.oracle_charges);
      BoundCheckReport r;
      r.domain_ref = entry.id;
      r.inequality_id = "oracle-agreement";
      r.parameter = "j";
      if (!out.oracle->reliable) {
        r.verdict = Verdict::Vacuous;
        r.note = "MFS basis lost rank; the oracle is unreliable and was not compared";
      } else {
        const int n = std::min(out.oracle->size(), out.steklov->size());
        for (int j = 0; j < n; ++j)
          r.add(j, std::abs(out.steklov->values[j] - out.oracle->values[j]), cfg.oracle_tolerance);
      }
      r.finalize();
      out.checks.push_back(std::move(r));
    });
  }

  for (auto& r : out.checks)
    if (r.tolerance == kSolverSlack && r.tolerance != cfg.solver_slack) {
      r.tolerance = cfg.solver_slack;
      r.finalize();
    }
  return out;
}

json build_report(const RunConfig& cfg, const std::vector<DomainOutcome>& outcomes) {
  json domains = json::array();
  json failures = json::array();
  int passed = 0, failed = 0, vacuous = 0, informational = 0, errors = 0;
  for (const auto& o : outcomes) {
    json d{{"domain", o.domain}, {"status", o.errors.empty() ? "ok" : "error"}, {"errors", o.errors}};
    if (o.constants) d["constants"] = constants_to_json(*o.constants);
    json spectra = json::object();
    if (o.steklov) spectra["steklov"] = spectrum_to_json(*o.steklov);
    if (o.laplace_beltrami) spectra["laplace_beltrami"] = spectrum_to_json(*o.laplace_beltrami);
    if (o.oracle) spectra["oracle"] = spectrum_to_json(*o.oracle);
    d["spectra"] = spectra;
    json checks = json::array();
    for (const auto& c : o.checks) {
      checks.push_back(report_to_json(c));
      if (c.failed()) {
        std::ostringstream f;
        f << o.domain << ": " << c.inequality_id;
        if (c.worst_index >= 0) {
          const CheckRow& w = c.rows[c.worst_index];
          f << " at " << c.parameter << " = " << w.param << " (lhs " << w.lhs << ", rhs " << w.rhs << ")";
        } else if (!c.note.empty()) {
          f << " (" << c.note << ")";
        }
        failures.push_back(f.str());
      }
    }
    d["checks"] = checks;
    d["summary"] = {{"pass", o.count(Verdict::Pass)},
                    {"fail", o.count(Verdict::Fail)},
                    {"vacuous", o.count(Verdict::Vacuous)},
                    {"informational", o.count(Verdict::Informational)},
                    {"checks", o.checks.size()}};
    passed += o.count(Verdict::Pass);
    failed += o.count(Verdict::Fail);
    vacuous += o.count(Verdict::Vacuous);
    informational += o.count(Verdict::Informational);
    errors += !o.errors.empty();
    domains.push_back(std::move(d));
  }
  return {{"tool", "steklab"},
          {"timestamp", utc_timestamp()},
          {"seed", cfg.seed},
          {"config", cfg.to_json()},
          {"domains", domains},
          {"summary",
           {{"pass", passed},
            {"fail", failed},
            {"vacuous", vacuous},
            {"informational", informational},
            {"domains_with_errors", errors},
            {"failures", failures}}}};
}

VerifyResult run_verify(const RunConfig& cfg, bool write_files) {
  VerifyResult result;
  result.domains.resize(cfg.domains.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.domains.size(); i = next++)
      result.domains[i] = verify_domain(cfg.domains[i], cfg);
  };
  const int n_threads = std::max(1, std::min<int>(cfg.workers, static_cast<int>(cfg.domains.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  bool solver_error = false, failure = false;
  for (const auto& o : result.domains) {
    solver_error = solver_error || o.solver_error;
    failure = failure || o.count(Verdict::Fail) > 0;
  }
  result.exit_code = solver_error ? kExitSolver : failure ? kExitCheckFailure : kExitPass;
  result.report = build_report(cfg, result.domains);

  if (write_files) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir / "spectra");
    result.report_path = (dir / "report.json").string();
    write_json_file(result.report_path, result.report);
    result.checks_csv_path = (dir / "checks.csv").string();
    std::vector<BoundCheckReport> all;
    for (const auto& o : result.domains) all.insert(all.end(), o.checks.begin(), o.checks.end());
    std::ofstream csv(result.checks_csv_path);
    write_checks_csv(csv, all);
    for (const auto& o : result.domains)
      for (const auto* s : {&o.steklov, &o.laplace_beltrami, &o.oracle})
        if (*s) {
          const std::string name = o.domain + "_" + (s == &o.oracle ? std::string("oracle") : to_string((*s)->kind));
          std::ofstream f(dir / "spectra" / (name + ".csv"));
          write_spectrum_csv(f, **s);
        }
  }
  return result;
}

SpectrumResult run_spectrum(const DomainEntry& entry, int n_modes, int n_disc, const std::string& out_dir,
                            std::vector<std::string>* written) {
  const DomainGeometry dom = make_domain(entry);
  SpectrumResult s;
  if (dom.is_ball()) {
    s = ball_spectra_covering(dom.hypersurface_dim(), dom.ball().radius, n_modes, entry.id).steklov;
    s.values.resize(n_modes);
    assign_groups(s);
  } else {
    s = steklov_spectrum_2d(dom, n_modes, n_disc).spectrum;
  }
  if (!out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path csv = fs::path(out_dir) / (entry.id + "_steklov.csv");
    const fs::path js = fs::path(out_dir) / (entry.id + "_steklov.json");
    std::ofstream f(csv);
    write_spectrum_csv(f, s);
    write_json_file(js.string(), spectrum_to_json(s));
    if (written) *written = {csv.string(), js.string()};
  }
  return s;
}

}  // namespace steklov
