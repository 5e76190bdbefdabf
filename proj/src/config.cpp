#include "lamina/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace lamina {

namespace {

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trimmed(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config: bad number for '" + key + "': " + v);
  }
}

long long to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("config: bad integer for '" + key + "': " + v);
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw config_error("config: bad flag for '" + key + "': " + v);
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string val = trimmed(line.substr(eq + 1));
    if (key.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = val;
  }

  for (const auto& [key, val] : kv) {
    if (val.empty()) continue;
    if (key == "family") {
      cfg.family_spec.family = family_from_name(val);
    } else if (key == "sheets") {
      cfg.family_spec.sheets = static_cast<int>(to_int(key, val));
    } else if (key == "sheet_spacing") {
      cfg.family_spec.sheet_spacing = to_double(key, val);
    } else if (key == "sheet_offset") {
      const auto parts = split(val, ',');
      if (parts.size() != 2) throw config_error("config: sheet_offset wants 're,im'");
      cfg.family_spec.sheet_offset = {to_double(key, parts[0]), to_double(key, parts[1])};
    } else if (key == "degree") {
      cfg.family_spec.degree = static_cast<int>(to_int(key, val));
    } else if (key == "branch") {
      const auto parts = split(val, ',');
      if (parts.size() != 2) throw config_error("config: branch wants 're,im'");
      cfg.family_spec.branch_center = {to_double(key, parts[0]), to_double(key, parts[1])};
    } else if (key == "poly_coeffs") {
      const auto parts = split(val, ',');
      if (parts.size() % 2 != 0) throw config_error("config: poly_coeffs wants re,im pairs");
      cfg.family_spec.poly_coeffs.clear();
      for (std::size_t i = 0; i < parts.size(); i += 2)
        cfg.family_spec.poly_coeffs.emplace_back(to_double(key, parts[i]),
                                                 to_double(key, parts[i + 1]));
    } else if (key == "tubes") {
      cfg.family_spec.tubes = static_cast<int>(to_int(key, val));
    } else if (key == "tube_spread") {
      cfg.family_spec.tube_spread = to_double(key, val);
    } else if (key == "resolution") {
      cfg.family_spec.resolution = to_double(key, val);
    } else if (key == "margin") {
      cfg.family_spec.margin = to_double(key, val);
    } else if (key == "half_plane_clip") {
      cfg.family_spec.half_plane_clip = to_double(key, val);
    } else if (key == "path") {
      cfg.family_spec.path = val;
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
      cfg.family_spec.seed = cfg.seed;
    } else if (key == "k_list") {
      cfg.k_list.clear();
      for (const std::string& p : split(val, ',')) cfg.k_list.push_back(static_cast<int>(to_int(key, p)));
    } else if (key == "direction_samples") {
      cfg.direction_samples = static_cast<int>(to_int(key, val));
    } else if (key == "trim") {
      cfg.trim_enabled = to_bool(key, val);
    } else if (key == "rho") {
      cfg.trim.rho = to_double(key, val);
    } else if (key == "rho_primes") {
      cfg.trim.rho_prime_candidates.clear();
      for (const std::string& p : split(val, ',')) cfg.trim.rho_prime_candidates.push_back(to_double(key, p));
    } else if (key == "budget") {
      cfg.trim.budget = to_double(key, val);
    } else if (key == "epsilon_override") {
      cfg.epsilon_override = to_double(key, val);
    } else if (key == "grid_clearance") {
      cfg.grid_clearance = to_double(key, val);
    } else if (key == "ramification_threshold") {
      cfg.tol.ramification_threshold = to_double(key, val);
    } else if (key == "island_degree_tol") {
      cfg.tol.island_degree_tol = to_double(key, val);
    } else if (key == "boundary_snap") {
      cfg.tol.boundary_snap_factor = to_double(key, val);
    } else if (key == "h_estimate") {
      cfg.h_estimate = to_double(key, val);
    } else if (key == "h_file") {
      cfg.h_file = val;
    } else if (key == "default_h") {
      cfg.default_h = to_double(key, val);
    } else if (key == "area_floor") {
      cfg.tol.fold_area_floor = to_double(key, val);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(to_int(key, val));
    } else if (key == "export_patches") {
      cfg.export_patches = to_bool(key, val);
    } else if (key == "out") {
      cfg.out_dir = val;
    } else if (key == "calibration_corpus") {
      cfg.calibration_corpus = split(val, ',');
    } else {
      throw config_error("config: unknown key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void validate_config(const RunConfig& cfg) {
  if (cfg.k_list.empty()) throw config_error("config: k_list must be nonempty");
  for (std::size_t i = 0; i < cfg.k_list.size(); ++i) {
    if (cfg.k_list[i] < 1) throw config_error("config: k values must be >= 1");
    if (i > 0 && cfg.k_list[i] <= cfg.k_list[i - 1])
      throw config_error("config: k_list must be strictly increasing");
  }
  if (cfg.direction_samples < 1) throw config_error("config: direction_samples must be >= 1");
  if (cfg.family_spec.resolution <= 0) throw config_error("config: resolution must be positive");
  if (cfg.trim_enabled) {
    if (!(cfg.trim.rho > 0 && cfg.trim.rho < 1))
      throw config_error("config: rho must lie in (0,1)");
    for (double rp : cfg.trim.rho_prime_candidates)
      if (!(rp > cfg.trim.rho && rp < 1))
        throw config_error("config: rho_primes must lie strictly between rho and 1");
  }
  if (cfg.family_spec.family == Family::from_file && cfg.family_spec.path.empty())
    throw config_error("config: family from_file needs 'path'");
}

bool k_list_is_doubling(const std::vector<int>& ks) {
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i] != 2 * ks[i - 1]) return false;
  return !ks.empty();
}

FamilySpec corpus_spec(const std::string& shorthand, const FamilySpec& base) {
  FamilySpec spec = base;
  spec.half_plane_clip = std::numeric_limits<double>::infinity();
  const auto parts = split(shorthand, ':');
  if (parts.empty()) throw config_error("empty calibration corpus entry");
  const std::string& name = parts[0];
  if (name == "half_sheet") {
    // A flat sheet clipped along a vertical line through the square: its
    // cross components have relative boundary, anchoring the h calibration.
    spec.family = Family::flat_sheets;
    spec.sheets = 1;
    spec.half_plane_clip = parts.size() > 1 ? to_double("half_sheet", parts[1]) : 0.1234;
    return spec;
  }
  spec.family = family_from_name(name);
  if (parts.size() > 1) {
    if (spec.family == Family::flat_sheets) spec.sheets = static_cast<int>(to_int(name, parts[1]));
    if (spec.family == Family::branched_cover) spec.degree = static_cast<int>(to_int(name, parts[1]));
    if (spec.family == Family::handle_body) spec.tubes = static_cast<int>(to_int(name, parts[1]));
  }
  return spec;
}

}  // namespace lamina
