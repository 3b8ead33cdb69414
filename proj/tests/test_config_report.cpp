#include "steklov/config.hpp"
#include "steklov/error.hpp"
#include "steklov/report.hpp"
#include "steklov/verify.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace steklov;
using nlohmann::json;

namespace {

std::string config_error(const json& doc) {
  try {
    parse_config(doc);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

RunConfig small_disk_config(const std::string& out) {
  return parse_config(json{{"domains", json::array({"disk-1"})},
                           {"n_disc", 256},
                           {"n_modes", 120},
                           {"j_max_lower", 40},
                           {"heat_J", 120},
                           {"t_grid", {1.0, 5.0}},
                           {"property_samples", 200},
                           {"quadratic_samples", 50},
                           {"oracle_modes", 10},
                           {"out_dir", out}});
}

json strip_timestamp(json j) {
  j.erase("timestamp");
  return j;
}

json strip_run_settings(json j) {
  j.erase("timestamp");
  j["config"].erase("workers");
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("defaults and catalog") {
  const RunConfig c = parse_config(json::object());
  CHECK(c.domains.size() == builtin_catalog().size());
  CHECK(c.n_disc == 2048);
  CHECK(c.seed == 20240611u);
  CHECK(catalog_entry("sphere-N2-R1").ambient_dim == 3);
  CHECK(make_domain(catalog_entry("kite")).hypersurface_dim() == 1);
  try {
    catalog_entry("torus");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownDomain);
  }
}

TEST_CASE("config errors name the offending field") {
  CHECK(contains(config_error(json::array()), "$"));
  CHECK(contains(config_error(json{{"n_dsic", 256}}), "$.n_dsic"));
  CHECK(contains(config_error(json{{"n_disc", 255}}), "$.n_disc"));
  CHECK(contains(config_error(json{{"n_modes", -3}}), "$.n_modes"));
  CHECK(contains(config_error(json{{"t_grid", {1.0, 0.5}}}), "$.t_grid[1]"));
  CHECK(contains(config_error(json{{"z_grid", {{"count", 10}, {"max_fraction", 1.2}}}}), "$.z_grid.max_fraction"));
  CHECK(contains(config_error(json{{"seed", -1}}), "$.seed"));
  CHECK(contains(config_error(json{{"domains", json::array()}}), "$.domains"));
  CHECK(contains(config_error(json{{"domains", {"disk-1", "nowhere"}}}), "$.domains[1]"));
  CHECK(contains(config_error(json{{"domains", {"disk-1", "disk-1"}}}), "$.domains[1].id"));

  const json bad_axis = {{"domains",
                          {"disk-1", "kite", {{"id", "e"}, {"family", "ellipse"}, {"params", {{"a", 1.5}, {"b", 0}}}}}}};
  CHECK(contains(config_error(bad_axis), "$.domains[2].params.b"));
  const json missing = {{"domains", {{{"id", "e"}, {"family", "ellipse"}, {"params", {{"a", 1.5}}}}}}};
  CHECK(contains(config_error(missing), "$.domains[0].params.b"));
  const json family = {{"domains", {{{"id", "x"}, {"family", "torus"}}}}};
  CHECK(contains(config_error(family), "$.domains[0].family"));
  const json extra = {{"domains", {{{"id", "c"}, {"family", "circle"}, {"params", {{"R", 1}, {"r", 2}}}}}}};
  CHECK(contains(config_error(extra), "$.domains[0].params.r"));
  const json planar = {{"domains", {{{"id", "c"}, {"family", "circle"}, {"params", {{"R", 1}}}, {"ambient_dim", 3}}}}};
  CHECK(contains(config_error(planar), "$.domains[0].ambient_dim"));

  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), Error);
}

TEST_CASE("grid resolution") {
  GridSpec g;
  g.count = 5;
  CHECK(g.resolve(10.0) == std::vector<double>{0.0, 2.25, 4.5, 6.75, 9.0});
  g.max = 4.0;
  CHECK(g.resolve(10.0).back() == 4.0);
}

TEST_CASE("config round trip") {
  const RunConfig c = small_disk_config("x");
  const RunConfig d = parse_config(c.to_json());
  CHECK(d.to_json() == c.to_json());
}

TEST_CASE("report JSON") {
  BoundCheckReport r;
  r.domain_ref = "d";
  r.inequality_id = "id";
  r.parameter = "j";
  for (int i = 0; i < 5; ++i) r.add(i, i, 10);
  r.add(5, 1.0 / 0.0, 1.0);
  r.finalize();
  const json j = report_to_json(r);
  CHECK(j["verdict"] == "fail");
  CHECK(j["worst_row"]["lhs"] == "inf");
  CHECK(j["rows"].size() == 6);
  CHECK_FALSE(report_to_json(r, 3).contains("rows"));
  CHECK(report_to_json(r, 3)["rows_total"] == 6);

  std::ostringstream csv;
  write_spectrum_csv(csv, disk_steklov_spectrum(1.0, 3, "disk"));
  CHECK(csv.str() == "index,value,multiplicity_group,solver,n_disc\n0,0,0,analytic-ball,0\n1,1,1,analytic-ball,0\n"
                     "2,1,1,analytic-ball,0\n");
}

TEST_CASE("verify on the disk is deterministic and reports the ball identity") {
  const auto dir = std::filesystem::temp_directory_path() / "steklab-test-determinism";
  std::filesystem::remove_all(dir);
  const RunConfig c = small_disk_config(dir.string());
  const VerifyResult a = run_verify(c);
  CHECK(a.exit_code == kExitPass);
  const std::string first = read_file(a.report_path);
  const VerifyResult b = run_verify(c);
  CHECK(strip_timestamp(a.report).dump() == strip_timestamp(b.report).dump());
  const json on_disk = json::parse(first);
  CHECK(strip_timestamp(on_disk) == strip_timestamp(a.report));
  CHECK(on_disk["seed"] == 20240611u);

  const json& d = a.report["domains"][0];
  bool identity = false;
  int families = 0;
  for (const auto& chk : d["checks"]) {
    if (chk["inequality_id"] == "ball-eigenvalue-identity") identity = true;
    if (chk["verdict"] != "informational") ++families;
  }
  CHECK(identity);
  CHECK(families >= 9);
  CHECK(a.report["summary"]["fail"] == 0);

  // workers do not change the result
  RunConfig par = c;
  par.workers = 3;
  par.domains = parse_config(json{{"domains", {"disk-1", "ellipse-1.5-1"}}}).domains;
  RunConfig seq = par;
  seq.workers = 1;
  CHECK(strip_run_settings(run_verify(par, false).report).dump() ==
        strip_run_settings(run_verify(seq, false).report).dump());

  // plot data: the disk band column is the constant 2 c = 2
  const PlotFiles p = emit_plotdata(a.report_path);
  std::ifstream band(p.band);
  std::string line;
  int rows = 0;
  while (std::getline(band, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("domain,", 0) == 0) continue;
    const double width = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(width == doctest::Approx(2.0).epsilon(1e-9));
    ++rows;
  }
  CHECK(rows > 0);
}

TEST_CASE("plot data from an empty report") {
  const auto dir = std::filesystem::temp_directory_path() / "steklab-test-empty";
  std::filesystem::create_directories(dir);
  write_json_file((dir / "report.json").string(), json::object());
  const PlotFiles p = emit_plotdata((dir / "report.json").string());
  CHECK(read_file(p.band).find("domain,j,sigma") != std::string::npos);
  CHECK(read_file(p.heat).find("domain,t,lhs") != std::string::npos);
  CHECK_THROWS_AS(emit_plotdata((dir / "missing.json").string()), Error);
}

TEST_CASE("spectrum export") {
  const auto dir = std::filesystem::temp_directory_path() / "steklab-test-spectrum";
  std::vector<std::string> written;
  const SpectrumResult s = run_spectrum(catalog_entry("disk-1"), 5, 64, dir.string(), &written);
  CHECK(written.size() == 2);
  const double expected[] = {0, 1, 1, 2, 2};
  for (int j = 0; j < 5; ++j) CHECK(s.values[j] == doctest::Approx(expected[j]).epsilon(1e-10));
  const SpectrumResult b = run_spectrum(catalog_entry("sphere-N2-R1"), 9, 0, "");
  CHECK(b.solver == SolverKind::AnalyticBall);
  CHECK(b.values[8] == doctest::Approx(2.0));
  CHECK_THROWS_AS(run_spectrum(catalog_entry("disk-1"), 50, 64, ""), Error);
}

TEST_CASE("Riesz ratio column is monotone on the ellipse") {
  const auto dir = std::filesystem::temp_directory_path() / "steklab-test-riesz";
  std::filesystem::remove_all(dir);
  RunConfig c = small_disk_config(dir.string());
  c.domains = {catalog_entry("ellipse-1.5-1")};
  const VerifyResult r = run_verify(c);
  REQUIRE(r.exit_code == kExitPass);
  std::ifstream in(emit_plotdata(r.report_path).riesz);
  std::string line;
  double last = -1.0;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("domain,", 0) == 0) continue;
    const double ratio = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(ratio >= last);
    last = ratio;
    ++rows;
  }
  CHECK(rows == 50);
}
