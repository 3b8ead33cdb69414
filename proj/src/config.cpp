#include "steklov/config.hpp"

#include "steklov/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace steklov {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Config, path + ": " + what);
}

double get_number(const json& obj, const std::string& key, const std::string& path, std::optional<double> fallback,
                  bool positive) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    fail(path + "." + key, "missing required number");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  const double x = v.get<double>();
  if (positive && !(x > 0)) fail(path + "." + key, "must be positive");
  return x;
}

int get_int(const json& obj, const std::string& key, const std::string& path, int fallback, int min_value = 1) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  const long long x = v.get<long long>();
  if (x < min_value) fail(path + "." + key, "must be >= " + std::to_string(min_value));
  return static_cast<int>(x);
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key())) fail(path + "." + it.key(), "unknown field");
}

std::vector<double> get_coeffs(const json& params, const std::string& key, const std::string& path) {
  std::vector<double> out;
  if (!params.contains(key)) return out;
  const json& arr = params.at(key);
  if (!arr.is_array()) fail(path + "." + key, "expected an array of numbers");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) fail(path + "." + key + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(arr[i].get<double>());
  }
  return out;
}

DomainEntry parse_entry(const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return catalog_entry(v.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  if (!v.is_object()) fail(path, "expected a catalog id or an object {id, family, params, ambient_dim}");
  reject_unknown(v, {"id", "family", "params", "ambient_dim"}, path);
  DomainEntry e;
  if (!v.contains("id") || !v.at("id").is_string()) fail(path + ".id", "missing or not a string");
  if (!v.contains("family") || !v.at("family").is_string()) fail(path + ".family", "missing or not a string");
  e.id = v.at("id").get<std::string>();
  e.family = v.at("family").get<std::string>();
  if (v.contains("params")) {
    if (!v.at("params").is_object()) fail(path + ".params", "expected an object");
    e.params = v.at("params");
  }
  e.ambient_dim = get_int(v, "ambient_dim", path, 2, 2);
  make_domain(e, path);  // validate now so errors carry the config path
  return e;
}

GridSpec parse_grid(const json& v, const std::string& path, GridSpec g) {
  if (!v.is_object()) fail(path, "expected an object {count, min, max, max_fraction}");
  reject_unknown(v, {"count", "min", "max", "max_fraction"}, path);
  g.count = get_int(v, "count", path, g.count, 2);
  g.min = get_number(v, "min", path, g.min, false);
  if (g.min < 0) fail(path + ".min", "must be >= 0");
  if (v.contains("max")) g.max = get_number(v, "max", path, std::nullopt, true);
  g.max_fraction = get_number(v, "max_fraction", path, g.max_fraction, true);
  if (g.max_fraction >= 1.0) fail(path + ".max_fraction", "must be below 1 so that truncation stays exact");
  if (g.max && !(*g.max > g.min)) fail(path + ".max", "must exceed min");
  return g;
}

}  // namespace

std::vector<double> GridSpec::resolve(double largest_eigenvalue) const {
  const double hi = max ? *max : max_fraction * largest_eigenvalue;
  std::vector<double> out;
  if (!(hi > min)) return out;
  for (int i = 0; i < count; ++i) out.push_back(min + (hi - min) * i / (count - 1));
  return out;
}

const std::vector<DomainEntry>& builtin_catalog() {
  static const std::vector<DomainEntry> catalog{
      {"disk-1", "circle", json{{"R", 1.0}}, 2},
      {"ellipse-1.5-1", "ellipse", json{{"a", 1.5}, {"b", 1.0}}, 2},
      {"kite", "kite", json{{"A", 0.65}, {"B", 1.5}}, 2},
      {"blob-3", "blob", json{{"r0", 1.0}, {"cos", {0.0, 0.0, 0.15}}}, 2},
      {"sphere-N2-R1", "ball", json{{"R", 1.0}}, 3},
  };
  return catalog;
}

DomainEntry catalog_entry(const std::string& id) {
  for (const auto& e : builtin_catalog())
    if (e.id == id) return e;
  std::string known;
  for (const auto& e : builtin_catalog()) known += (known.empty() ? "" : ", ") + e.id;
  throw Error(ErrorKind::UnknownDomain, "'" + id + "' is not in the catalog (" + known + ")");
}

DomainGeometry make_domain(const DomainEntry& entry, const std::string& path) {
  const json& p = entry.params;
  const std::string pp = path + ".params";
  try {
    if (entry.family == "ball") {
      reject_unknown(p, {"R"}, pp);
      return DomainGeometry(entry.id, BallDescriptor{get_number(p, "R", pp, std::nullopt, true), entry.ambient_dim});
    }
    if (entry.ambient_dim != 2) fail(path + ".ambient_dim", "curve families are planar (ambient_dim = 2)");
    if (entry.family == "circle") {
      reject_unknown(p, {"R"}, pp);
      return DomainGeometry(entry.id, ParametricCurve(Circle{get_number(p, "R", pp, std::nullopt, true)}));
    }
    if (entry.family == "ellipse") {
      reject_unknown(p, {"a", "b"}, pp);
      return DomainGeometry(entry.id, ParametricCurve(Ellipse{get_number(p, "a", pp, std::nullopt, true),
                                                              get_number(p, "b", pp, std::nullopt, true)}));
    }
    if (entry.family == "kite") {
      reject_unknown(p, {"A", "B"}, pp);
      return DomainGeometry(entry.id,
                            ParametricCurve(Kite{get_number(p, "A", pp, 0.65, false), get_number(p, "B", pp, 1.5, true)}));
    }
    if (entry.family == "blob") {
      reject_unknown(p, {"r0", "cos", "sin"}, pp);
      return DomainGeometry(entry.id, ParametricCurve(FourierBlob{get_number(p, "r0", pp, std::nullopt, true),
                                                                  get_coeffs(p, "cos", pp), get_coeffs(p, "sin", pp)}));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    fail(path, e.what());
  }
  fail(path + ".family", "unknown family '" + entry.family + "' (circle, ellipse, kite, blob, ball)");
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("$", "config must be a JSON object");
  reject_unknown(doc,
                 {"domains", "n_disc", "n_modes", "n_boundary", "n_normal", "reach_density", "curvature_density",
                  "j_max", "j_max_lower", "ball_l_max", "pohozaev_degree", "heat_J", "oracle", "oracle_modes",
                  "oracle_charges", "oracle_tolerance", "z_grid", "lb_z_grid", "t_grid", "solver_slack",
                  "property_samples", "quadratic_samples", "seed", "workers", "out_dir"},
                 "$");
  RunConfig c;
  if (doc.contains("domains")) {
    const json& d = doc.at("domains");
    if (!d.is_array() || d.empty()) fail("$.domains", "expected a non-empty array");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::string path = "$.domains[" + std::to_string(i) + "]";
      DomainEntry e = parse_entry(d[i], path);
      if (!seen.insert(e.id).second) fail(path + ".id", "duplicate domain id '" + e.id + "'");
      c.domains.push_back(std::move(e));
    }
  } else {
    c.domains = builtin_catalog();
  }
  c.n_disc = get_int(doc, "n_disc", "$", c.n_disc, 16);
  if (c.n_disc % 2 != 0) fail("$.n_disc", "must be even");
  c.n_modes = get_int(doc, "n_modes", "$", c.n_modes, 2);
  c.n_boundary = get_int(doc, "n_boundary", "$", c.n_boundary, 16);
  c.n_normal = get_int(doc, "n_normal", "$", c.n_normal, 2);
  c.reach_density = get_int(doc, "reach_density", "$", c.reach_density, 256);
  c.curvature_density = get_int(doc, "curvature_density", "$", c.curvature_density, 64);
  c.j_max = get_int(doc, "j_max", "$", c.j_max, 0);
  c.j_max_lower = get_int(doc, "j_max_lower", "$", c.j_max_lower, 0);
  c.ball_l_max = get_int(doc, "ball_l_max", "$", c.ball_l_max, 1);
  c.pohozaev_degree = get_int(doc, "pohozaev_degree", "$", c.pohozaev_degree, 0);
  c.heat_J = get_int(doc, "heat_J", "$", c.heat_J, 1);
  if (doc.contains("oracle")) {
    if (!doc.at("oracle").is_boolean()) fail("$.oracle", "expected true or false");
    c.oracle = doc.at("oracle").get<bool>();
  }
  c.oracle_modes = get_int(doc, "oracle_modes", "$", c.oracle_modes, 1);
  c.oracle_charges = get_int(doc, "oracle_charges", "$", c.oracle_charges, 8);
  c.oracle_tolerance = get_number(doc, "oracle_tolerance", "$", c.oracle_tolerance, true);
  if (doc.contains("z_grid")) c.z_grid = parse_grid(doc.at("z_grid"), "$.z_grid", c.z_grid);
  if (doc.contains("lb_z_grid")) c.lb_z_grid = parse_grid(doc.at("lb_z_grid"), "$.lb_z_grid", c.lb_z_grid);
  if (doc.contains("t_grid")) {
    const json& t = doc.at("t_grid");
    if (!t.is_array() || t.empty()) fail("$.t_grid", "expected a non-empty array of positive numbers");
    c.t_grid.clear();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string path = "$.t_grid[" + std::to_string(i) + "]";
      if (!t[i].is_number() || !(t[i].get<double>() > 0)) fail(path, "expected a positive number");
      const double x = t[i].get<double>();
      if (!c.t_grid.empty() && !(x > c.t_grid.back())) fail(path, "grid must be strictly increasing");
      c.t_grid.push_back(x);
    }
  }
  c.solver_slack = get_number(doc, "solver_slack", "$", c.solver_slack, true);
  c.property_samples = get_int(doc, "property_samples", "$", c.property_samples, 1);
  c.quadratic_samples = get_int(doc, "quadratic_samples", "$", c.quadratic_samples, 1);
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) fail("$.seed", "expected a non-negative integer");
    c.seed = doc.at("seed").get<std::uint64_t>();
  }
  c.workers = get_int(doc, "workers", "$", c.workers, 1);
  if (doc.contains("out_dir")) {
    if (!doc.at("out_dir").is_string()) fail("$.out_dir", "expected a string");
    c.out_dir = doc.at("out_dir").get<std::string>();
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Config, path + ": " + e.what());
  }
  return parse_config(doc);
}

json RunConfig::to_json() const {
  auto grid = [](const GridSpec& g) {
    json j{{"count", g.count}, {"min", g.min}, {"max_fraction", g.max_fraction}};
    if (g.max) j["max"] = *g.max;
    return j;
  };
  json doms = json::array();
  for (const auto& d : domains)
    doms.push_back({{"id", d.id}, {"family", d.family}, {"params", d.params}, {"ambient_dim", d.ambient_dim}});
  return {{"domains", doms},
          {"n_disc", n_disc},
          {"n_modes", n_modes},
          {"n_boundary", n_boundary},
          {"n_normal", n_normal},
          {"reach_density", reach_density},
          {"curvature_density", curvature_density},
          {"j_max", j_max},
          {"j_max_lower", j_max_lower},
          {"ball_l_max", ball_l_max},
          {"pohozaev_degree", pohozaev_degree},
          {"heat_J", heat_J},
          {"oracle", oracle},
          {"oracle_modes", oracle_modes},
          {"oracle_charges", oracle_charges},
          {"oracle_tolerance", oracle_tolerance},
          {"z_grid", grid(z_grid)},
          {"lb_z_grid", grid(lb_z_grid)},
          {"t_grid", t_grid},
          {"solver_slack", solver_slack},
          {"property_samples", property_samples},
          {"quadratic_samples", quadratic_samples},
          {"seed", seed},
          {"workers", workers},
          {"out_dir", out_dir}};
}

}  // namespace steklov
