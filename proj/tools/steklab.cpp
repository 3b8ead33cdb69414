// steklab: verify the eigenvalue inequalities over a domain catalog, export
// spectra, and turn reports into plot-ready CSV.

#include "steklov/config.hpp"
#include "steklov/error.hpp"
#include "steklov/report.hpp"
#include "steklov/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace steklov;

namespace {

int exit_for(const Error& e) {
  return (e.kind() == ErrorKind::Config || e.kind() == ErrorKind::UnknownDomain) ? kExitUsage : kExitSolver;
}

int cmd_verify(const std::string& config_path, const std::string& domain, const std::string& out) {
  RunConfig cfg = config_path.empty() ? parse_config(nlohmann::json::object()) : load_config(config_path);
  if (!domain.empty()) {
    std::vector<DomainEntry> keep;
    for (const auto& e : cfg.domains)
      if (e.id == domain) keep.push_back(e);
    if (keep.empty()) keep.push_back(catalog_entry(domain));
    cfg.domains = keep;
  }
  if (!out.empty()) cfg.out_dir = out;

  const VerifyResult r = run_verify(cfg);
  const auto& summary = r.report["summary"];
  for (const auto& d : r.report["domains"]) {
    const auto& s = d["summary"];
    std::cout << d["domain"].get<std::string>() << ": " << s["pass"] << " pass, " << s["fail"] << " fail, "
              << s["vacuous"] << " vacuous, " << s["informational"] << " informational\n";
    for (const auto& e : d["errors"]) std::cout << "  error: " << e.get<std::string>() << "\n";
  }
  for (const auto& f : summary["failures"]) std::cout << "FAIL " << f.get<std::string>() << "\n";
  std::cout << "report: " << r.report_path << "\nchecks: " << r.checks_csv_path << "\n";
  return r.exit_code;
}

int cmd_spectrum(const std::string& domain, int modes, int disc, const std::string& out,
                 const std::string& config_path) {
  DomainEntry entry;
  bool found = false;
  if (!config_path.empty()) {
    for (const auto& e : load_config(config_path).domains)
      if (e.id == domain) {
        entry = e;
        found = true;
      }
  }
  if (!found) entry = catalog_entry(domain);
  std::vector<std::string> written;
  run_spectrum(entry, modes, disc, out, &written);
  for (const auto& w : written) std::cout << w << "\n";
  return kExitPass;
}

int cmd_plotdata(const std::string& report, const std::string& out) {
  const PlotFiles f = emit_plotdata(report, out);
  for (const auto& n : f.notes) std::cout << "note: " << n << "\n";
  std::cout << f.band << "\n" << f.riesz << "\n" << f.heat << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steklov and Laplace-Beltrami eigenvalue laboratory"};
  app.require_subcommand(1);

  std::string config_path, domain, out;
  auto* verify = app.add_subcommand("verify", "run every applicable check on the configured domains");
  verify->add_option("--config", config_path, "JSON run configuration (defaults to the built-in catalog)");
  verify->add_option("--domain", domain, "restrict the run to one domain id");
  verify->add_option("--out", out, "output directory (overrides the config)");

  std::string sp_domain, sp_out = ".", sp_config;
  int modes = 20, disc = 256;
  auto* spectrum = app.add_subcommand("spectrum", "compute and export a Steklov spectrum");
  spectrum->add_option("--domain", sp_domain, "catalog domain id")->required();
  spectrum->add_option("--modes", modes, "number of eigenvalues")->check(CLI::PositiveNumber);
  spectrum->add_option("--disc", disc, "boundary discretization size")->check(CLI::PositiveNumber);
  spectrum->add_option("--out", sp_out, "output directory");
  spectrum->add_option("--config", sp_config, "config whose domain list extends the catalog");

  std::string report, pd_out;
  auto* plot = app.add_subcommand("plotdata", "write plot-ready CSV from a verify report");
  plot->add_option("--report", report, "report.json from verify")->required();
  plot->add_option("--out", pd_out, "output directory (defaults to the report's directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(config_path, domain, out);
    if (*spectrum) return cmd_spectrum(sp_domain, modes, disc, sp_out, sp_config);
    if (*plot) return cmd_plotdata(report, pd_out);
  } catch (const Error& e) {
    std::cerr << "steklab: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "steklab: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}
