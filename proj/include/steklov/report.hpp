#pragma once

#include "steklov/bounds.hpp"
#include "steklov/spectra.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace steklov {

/// Rows beyond `max_rows` are elided from JSON (the worst row is kept);
/// the CSV export always carries every row.
nlohmann::json report_to_json(const BoundCheckReport& r, std::size_t max_rows = 2000);
nlohmann::json constants_to_json(const GeometricConstants& k);
/// Metadata plus the first `limit` values (all when negative).
nlohmann::json spectrum_to_json(const SpectrumResult& s, int limit = -1);

/// Columns: index,value,multiplicity_group,solver,n_disc.
void write_spectrum_csv(std::ostream& out, const SpectrumResult& s);
/// Columns: domain,inequality_id,param,lhs,rhs,margin.
void write_checks_csv(std::ostream& out, const std::vector<BoundCheckReport>& reports);

/// Writes `value` as sorted-key JSON with a trailing newline.
void write_json_file(const std::string& path, const nlohmann::json& value);

/// Current UTC time as ISO 8601; the only non-deterministic report field.
std::string utc_timestamp();

struct PlotFiles {
  std::string band;
  std::string riesz;
  std::string heat;
  std::vector<std::string> notes;  // sections that were missing
};

/// Plot-ready CSVs next to the report (or in `out_dir`): sigma_j against
/// sqrt(lambda_j) with the 2c band, Riesz-mean ratios and heat-trace ratios.
PlotFiles emit_plotdata(const std::string& report_path, const std::string& out_dir = "");

}  // namespace steklov
