#pragma once

#include "steklov/geometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace steklov {

/// One catalog entry: {"id", "family", "params", "ambient_dim"}.
struct DomainEntry {
  std::string id;
  std::string family;  // circle, ellipse, kite, blob, ball
  nlohmann::json params = nlohmann::json::object();
  int ambient_dim = 2;
};

/// Evenly spaced grid of `count` points on [min, max]. A missing max is
/// resolved per domain to `max_fraction` of the largest computed eigenvalue.
struct GridSpec {
  int count = 50;
  double min = 0.0;
  std::optional<double> max;
  double max_fraction = 0.9;

  std::vector<double> resolve(double largest_eigenvalue) const;
};

struct RunConfig {
  std::vector<DomainEntry> domains;
  int n_disc = 2048;
  int n_modes = 1000;
  int n_boundary = 256;  // boundary quadrature for Pohozaev and tubular checks
  int n_normal = 16;
  int reach_density = 1024;
  int curvature_density = 4096;
  int j_max = 40;         // eigenvalue-comparison checks
  int j_max_lower = 200;  // lower-bound and structural checks
  int ball_l_max = 20;
  int pohozaev_degree = 6;
  int heat_J = 2000;
  bool oracle = true;
  int oracle_modes = 20;
  int oracle_charges = 160;
  double oracle_tolerance = 1e-6;
  GridSpec z_grid;
  GridSpec lb_z_grid;
  std::vector<double> t_grid{0.05, 0.1, 0.5, 1.0, 5.0};
  double solver_slack = 1e-6;
  int property_samples = 10000;
  int quadratic_samples = 1000;
  std::uint64_t seed = 20240611;
  int workers = 1;
  std::string out_dir = "steklab-out";

  nlohmann::json to_json() const;
};

/// Built-in catalog: disk-1, ellipse-1.5-1, kite, blob-3, sphere-N2-R1.
const std::vector<DomainEntry>& builtin_catalog();

/// Catalog lookup; throws `UnknownDomain`.
DomainEntry catalog_entry(const std::string& id);

/// Validates an entry and builds the domain. Errors carry `path` as prefix.
DomainGeometry make_domain(const DomainEntry& entry, const std::string& path = "domain");

/// Parses a config document. Every error names the offending field path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

}  // namespace steklov
