#include "steklov/report.hpp"

#include "steklov/error.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace steklov {

using nlohmann::json;

namespace {

// JSON has no inf/nan; they are stored as strings so nothing is lost.
json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double as_double(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
  }
  return NAN;
}

json row_json(const CheckRow& r) {
  return {{"param", number(r.param)}, {"lhs", number(r.lhs)}, {"rhs", number(r.rhs)}, {"margin", number(r.margin)}};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
  out << std::setprecision(17);
  return out;
}

}  // namespace

json report_to_json(const BoundCheckReport& r, std::size_t max_rows) {
  json j{{"domain", r.domain_ref},
         {"inequality_id", r.inequality_id},
         {"parameter", r.parameter},
         {"min_margin", number(r.min_margin)},
         {"worst_index", r.worst_index},
         {"tolerance", r.tolerance},
         {"verdict", to_string(r.verdict)},
         {"rows_total", r.rows.size()}};
  if (!r.note.empty()) j["note"] = r.note;
  json extras = json::object();
  for (const auto& [k, v] : r.extras) extras[k] = number(v);
  j["extras"] = extras;
  if (r.worst_index >= 0) j["worst_row"] = row_json(r.rows[r.worst_index]);
  if (r.rows.size() <= max_rows) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(row_json(row));
    j["rows"] = rows;
  }
  return j;
}

json constants_to_json(const GeometricConstants& k) {
  return {{"N", k.N},
          {"h_bar", k.h_bar},
          {"reach",
           {{"h_bar", k.reach.h_bar},
            {"certified_lower", k.reach.certified_lower},
            {"method", to_string(k.reach.method)},
            {"sample_density", k.reach.sample_density}}},
          {"K_plus", k.K_plus},
          {"K_minus", k.K_minus},
          {"K_inf", k.K_inf},
          {"H_inf", k.H_inf},
          {"H_bar_inf", k.H_bar_inf},
          {"c_Omega", k.c_Omega},
          {"c_alt", k.c_alt},
          {"perimeter", k.perimeter},
          {"convex", k.convex}};
}

json spectrum_to_json(const SpectrumResult& s, int limit) {
  const int n = limit < 0 ? s.size() : std::min(limit, s.size());
  json values = json::array(), groups = json::array();
  for (int i = 0; i < n; ++i) {
    values.push_back(s.values[i]);
    groups.push_back(s.group[i]);
  }
  return {{"kind", to_string(s.kind)},
          {"solver", to_string(s.solver)},
          {"discretization", s.discretization},
          {"domain", s.domain_ref},
          {"hypersurface_dim", s.hypersurface_dim},
          {"boundary_measure", s.boundary_measure},
          {"multiplicity_resolved", s.multiplicity_resolved},
          {"reliable", s.reliable},
          {"count", s.size()},
          {"largest", s.values.empty() ? 0.0 : s.values.back()},
          {"values", values},
          {"multiplicity_group", groups}};
}

void write_spectrum_csv(std::ostream& out, const SpectrumResult& s) {
  out << std::setprecision(17) << "index,value,multiplicity_group,solver,n_disc\n";
  for (int i = 0; i < s.size(); ++i)
    out << i << ',' << s.values[i] << ',' << s.group[i] << ',' << to_string(s.solver) << ',' << s.discretization
        << '\n';
}

void write_checks_csv(std::ostream& out, const std::vector<BoundCheckReport>& reports) {
  out << std::setprecision(17) << "domain,inequality_id,param,lhs,rhs,margin\n";
  for (const auto& r : reports)
    for (const auto& row : r.rows)
      out << r.domain_ref << ',' << r.inequality_id << ',' << row.param << ',' << row.lhs << ',' << row.rhs << ','
          << row.margin << '\n';
}

void write_json_file(const std::string& path, const json& value) {
  std::ofstream out = open_out(path);
  out << value.dump(2) << '\n';
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

PlotFiles emit_plotdata(const std::string& report_path, const std::string& out_dir) {
  std::ifstream in(report_path);
  if (!in) throw Error(ErrorKind::Config, "cannot open report '" + report_path + "'");
  json report;
  try {
    report = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, report_path + ": " + e.what());
  }
  namespace fs = std::filesystem;
  const fs::path dir = out_dir.empty() ? fs::path(report_path).parent_path() : fs::path(out_dir);
  if (!dir.empty()) fs::create_directories(dir);

  PlotFiles files;
  files.band = (dir / "plot_band.csv").string();
  files.riesz = (dir / "plot_riesz.csv").string();
  files.heat = (dir / "plot_heat.csv").string();
  std::ofstream band = open_out(files.band), riesz = open_out(files.riesz), heat = open_out(files.heat);
  band << "# sigma_j against sqrt(lambda_j); the eigenvalue comparison requires |difference| <= band\n"
       << "# columns: domain, j, sigma, sqrt_lambda, difference = sigma - sqrt_lambda, band = 2 c_Omega\n"
       << "domain,j,sigma,sqrt_lambda,difference,band\n";
  riesz << "# Riesz mean sum (z - sigma_j)_+^2 against its upper bound\n"
        << "# columns: domain, z, lhs, rhs, ratio = lhs / rhs\n"
        << "domain,z,lhs,rhs,ratio\n";
  heat << "# heat trace sum exp(-t sigma_j) (partial sum plus certified tail) against its upper bound\n"
       << "# columns: domain, t, lhs, rhs, ratio = lhs / rhs\n"
       << "domain,t,lhs,rhs,ratio\n";

  const json domains = report.value("domains", json::array());
  for (const json& d : domains) {
    const std::string id = d.value("domain", std::string("?"));
    const json spectra = d.value("spectra", json::object());
    const json constants = d.value("constants", json::object());
    if (spectra.contains("steklov") && spectra.contains("laplace_beltrami") && constants.contains("c_Omega")) {
      const json& s = spectra["steklov"]["values"];
      const json& l = spectra["laplace_beltrami"]["values"];
      const double two_c = 2.0 * as_double(constants["c_Omega"]);
      for (std::size_t j = 0; j < std::min(s.size(), l.size()); ++j) {
        const double sig = as_double(s[j]), root = std::sqrt(as_double(l[j]));
        band << id << ',' << j << ',' << sig << ',' << root << ',' << sig - root << ',' << two_c << '\n';
      }
    } else {
      files.notes.push_back(id + ": no spectra or constants; band data skipped");
    }
    bool have_riesz = false, have_heat = false;
    for (const json& c : d.value("checks", json::array())) {
      const std::string cid = c.value("inequality_id", std::string());
      std::ofstream* target = cid == "riesz-mean-steklov" ? &riesz : cid == "heat-trace" ? &heat : nullptr;
      if (!target || !c.contains("rows")) continue;
      (cid == "heat-trace" ? have_heat : have_riesz) = true;
      for (const json& row : c["rows"]) {
        const double lhs = as_double(row["lhs"]), rhs = as_double(row["rhs"]);
        *target << id << ',' << as_double(row["param"]) << ',' << lhs << ',' << rhs << ',' << lhs / rhs << '\n';
      }
    }
    if (!have_riesz) files.notes.push_back(id + ": no Riesz-mean rows");
    if (!have_heat) files.notes.push_back(id + ": no heat-trace rows");
  }
  return files;
}

}  // namespace steklov
