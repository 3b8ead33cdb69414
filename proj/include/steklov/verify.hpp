#pragma once

#include "steklov/bounds.hpp"
#include "steklov/config.hpp"
#include "steklov/error.hpp"
#include "steklov/spectra.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace steklov {

struct DomainOutcome {
  std::string domain;
  std::vector<std::string> errors;  // module errors, one per failed stage
  bool solver_error = false;
  std::optional<GeometricConstants> constants;
  std::optional<SpectrumResult> steklov;
  std::optional<SpectrumResult> laplace_beltrami;
  std::optional<SpectrumResult> oracle;
  std::vector<BoundCheckReport> checks;

  int count(Verdict v) const;
};

enum ExitCode { kExitPass = 0, kExitCheckFailure = 1, kExitUsage = 2, kExitSolver = 3 };

/// Constants, spectra, oracle cross-check and every applicable check for
/// one domain. Module errors are recorded, never thrown.
DomainOutcome verify_domain(const DomainEntry& entry, const RunConfig& config);

struct VerifyResult {
  std::vector<DomainOutcome> domains;
  int exit_code = kExitPass;
  nlohmann::json report;
  std::string report_path;  // empty when files were not written
  std::string checks_csv_path;
};

/// Runs every configured domain on `config.workers` threads; outcomes are
/// assembled in config order. Writes report.json, checks.csv and spectrum
/// CSVs into config.out_dir when `write_files` is set.
VerifyResult run_verify(const RunConfig& config, bool write_files = true);

/// JSON document for a finished run; "timestamp" is the only field that
/// differs between identical runs.
nlohmann::json build_report(const RunConfig& config, const std::vector<DomainOutcome>& outcomes);

/// Steklov spectrum of one domain: Nystrom for curves, closed form for
/// balls. Writes <id>_steklov.csv and .json into out_dir when non-empty.
SpectrumResult run_spectrum(const DomainEntry& entry, int n_modes, int n_disc, const std::string& out_dir,
                            std::vector<std::string>* written = nullptr);

}  // namespace steklov
