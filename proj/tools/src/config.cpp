// Copyright 2026 The cohscat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace cohscat::cli {
namespace {

using json = nlohmann::ordered_json;

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) {
    throw ConfigError("config key '" + (path.empty() ? std::string("<root>") : path) +
                      "' must be an object");
  }
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const std::string& path) {
  require_object(j, path);
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError("unknown config key '" + join(path, item.key()) + "'");
    }
  }
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError("config key '" + path + "' must be a number");
  return j.get<double>();
}

int read_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError("config key '" + path + "' must be an integer");
  const auto v = j.get<long long>();
  if (v < -2147483647LL || v > 2147483647LL) {
    throw ConfigError("config key '" + path + "' is out of range");
  }
  return static_cast<int>(v);
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError("config key '" + path + "' must be a string");
  return j.get<std::string>();
}

Vec2 read_vec(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("config key '" + path + "' must be an array [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::complex<double> read_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("config key '" + path + "' must be a number or an array [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Region read_region(const json& j, const std::string& path) {
  check_keys(j, {"x0", "y0", "width", "height"}, path);
  Region r;
  if (j.contains("x0")) r.x0 = read_number(j["x0"], join(path, "x0"));
  if (j.contains("y0")) r.y0 = read_number(j["y0"], join(path, "y0"));
  if (j.contains("width")) r.width = read_number(j["width"], join(path, "width"));
  if (j.contains("height")) r.height = read_number(j["height"], join(path, "height"));
  return r;
}

// Assigns field from j[key] when present.
template <typename T, typename Reader>
void read_opt(const json& j, std::string_view key, const std::string& path, T& field,
              Reader reader) {
  const std::string k(key);
  if (j.contains(k)) field = reader(j[k], join(path, key));
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }
json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }
json region_json(const Region& r) {
  return json{{"x0", r.x0}, {"y0", r.y0}, {"width", r.width}, {"height", r.height}};
}

void parse_medium(const json& j, MediumSpec& m) {
  const std::string path = "medium";
  check_keys(j,
             {"file", "mode", "wavelength_nm", "n_scatterers", "region", "exclusion_radius",
              "alpha_bare", "k_ell"},
             path);
  read_opt(j, "file", path, m.file, read_string);
  if (j.contains("mode")) {
    const std::string mode = read_string(j["mode"], "medium.mode");
    if (mode != "TE" && mode != "TM") throw ConfigError("config key 'medium.mode' must be TE or TM");
    m.mode = pol_mode_from_string(mode);
  }
  read_opt(j, "wavelength_nm", path, m.wavelength_nm, read_number);
  read_opt(j, "n_scatterers", path, m.n_scatterers, read_int);
  read_opt(j, "region", path, m.region, read_region);
  read_opt(j, "exclusion_radius", path, m.exclusion_radius, read_number);
  if (j.contains("alpha_bare")) {
    if (j["alpha_bare"].is_null()) {
      m.alpha_bare.reset();
    } else {
      m.alpha_bare = read_number(j["alpha_bare"], "medium.alpha_bare");
    }
  }
  read_opt(j, "k_ell", path, m.k_ell, read_number);
  if (m.n_scatterers < 0) throw ConfigError("config key 'medium.n_scatterers' must be >= 0");
  if (!(m.wavelength_nm > 0.0)) throw ConfigError("config key 'medium.wavelength_nm' must be > 0");
  if (!(m.exclusion_radius >= 0.0)) {
    throw ConfigError("config key 'medium.exclusion_radius' must be >= 0");
  }
  if (!(m.k_ell > 0.0)) throw ConfigError("config key 'medium.k_ell' must be > 0");
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::gen_medium: return "gen-medium";
    case Command::diagnose: return "diagnose";
    case Command::g2: return "g2";
    case Command::g2_map: return "g2-map";
    case Command::dos_maps: return "dos-maps";
    case Command::find_detectors: return "find-detectors";
    case Command::validate: return "validate";
  }
  return "validate";
}

Command command_from_string(std::string_view text) {
  for (Command c : {Command::gen_medium, Command::diagnose, Command::g2, Command::g2_map,
                    Command::dos_maps, Command::find_detectors, Command::validate}) {
    if (text == to_string(c)) return c;
  }
  throw ConfigError("unknown command '" + std::string(text) + "'");
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root,
             {"schema_version", "command", "seed", "threads", "out", "medium", "emitters",
              "detectors", "grid", "search", "classification", "validate"},
             "");
  RunConfig c;
  if (!root.contains("schema_version")) throw ConfigError("config key 'schema_version' is required");
  c.schema_version = read_int(root["schema_version"], "schema_version");
  if (c.schema_version != kSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(c.schema_version) +
                      " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  if (root.contains("command")) c.command = command_from_string(read_string(root["command"], "command"));
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) {
      throw ConfigError("config key 'seed' must be a non-negative integer");
    }
    c.seed = root["seed"].get<std::uint64_t>();
  }
  read_opt(root, "threads", "", c.threads, read_int);
  if (c.threads < 0) throw ConfigError("config key 'threads' must be >= 0");
  read_opt(root, "out", "", c.out, read_string);

  if (root.contains("medium")) parse_medium(root["medium"], c.medium);

  if (root.contains("emitters")) {
    const json& j = root["emitters"];
    const std::string p = "emitters";
    check_keys(j, {"r1", "u1", "p1", "r2", "u2", "p2"}, p);
    EmitterSpec& e = c.emitters;
    read_opt(j, "r1", p, e.r1, read_vec);
    read_opt(j, "u1", p, e.u1, read_vec);
    read_opt(j, "p1", p, e.p1, read_complex);
    read_opt(j, "r2", p, e.r2, read_vec);
    read_opt(j, "u2", p, e.u2, read_vec);
    read_opt(j, "p2", p, e.p2, read_complex);
  }
  if (root.contains("detectors")) {
    const json& j = root["detectors"];
    const std::string p = "detectors";
    check_keys(j, {"ra", "ea", "rb", "eb"}, p);
    DetectorSpec& d = c.detectors;
    read_opt(j, "ra", p, d.ra, read_vec);
    read_opt(j, "ea", p, d.ea, read_vec);
    read_opt(j, "rb", p, d.rb, read_vec);
    read_opt(j, "eb", p, d.eb, read_vec);
  }
  if (root.contains("grid")) {
    const json& j = root["grid"];
    const std::string p = "grid";
    check_keys(j, {"extent", "nx", "ny"}, p);
    read_opt(j, "extent", p, c.grid.extent, read_region);
    read_opt(j, "nx", p, c.grid.nx, read_int);
    read_opt(j, "ny", p, c.grid.ny, read_int);
    if (c.grid.nx <= 0 || c.grid.ny <= 0) throw ConfigError("config keys 'grid.nx' and 'grid.ny' must be > 0");
  }
  if (root.contains("search")) {
    const json& j = root["search"];
    const std::string p = "search";
    check_keys(j, {"region", "center", "radius", "rectangle", "target", "coarse"}, p);
    SearchConfig& s = c.search;
    read_opt(j, "region", p, s.region, read_string);
    read_opt(j, "center", p, s.center, read_vec);
    read_opt(j, "radius", p, s.radius, read_number);
    read_opt(j, "rectangle", p, s.rectangle, read_region);
    read_opt(j, "target", p, s.target, read_string);
    read_opt(j, "coarse", p, s.coarse, read_int);
    if (s.region != "circle" && s.region != "rectangle") {
      throw ConfigError("config key 'search.region' must be circle or rectangle");
    }
    if (s.target != "maximize" && s.target != "minimize") {
      throw ConfigError("config key 'search.target' must be maximize or minimize");
    }
    if (s.coarse < 2) throw ConfigError("config key 'search.coarse' must be >= 2");
  }
  if (root.contains("classification")) {
    const json& j = root["classification"];
    const std::string p = "classification";
    check_keys(j, {"tol_super", "tol_sub"}, p);
    read_opt(j, "tol_super", p, c.classification.tol_super, read_number);
    read_opt(j, "tol_sub", p, c.classification.tol_sub, read_number);
  }
  if (root.contains("validate")) {
    const json& j = root["validate"];
    check_keys(j, {"samples"}, "validate");
    read_opt(j, "samples", "validate", c.validate.samples, read_int);
    if (c.validate.samples <= 0) throw ConfigError("config key 'validate.samples' must be > 0");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

namespace {

json medium_json(const MediumSpec& m) {
  json j;
  j["file"] = m.file;
  j["mode"] = std::string(to_string(m.mode));
  j["wavelength_nm"] = m.wavelength_nm;
  j["n_scatterers"] = m.n_scatterers;
  j["region"] = region_json(m.region);
  j["exclusion_radius"] = m.exclusion_radius;
  j["alpha_bare"] = m.alpha_bare ? json(*m.alpha_bare) : json(nullptr);
  j["k_ell"] = m.k_ell;
  return j;
}

json results_json(const RunConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  if (c.command) j["command"] = std::string(to_string(*c.command));
  j["seed"] = c.seed;
  j["medium"] = medium_json(c.medium);
  const EmitterSpec& e = c.emitters;
  j["emitters"] = json{{"r1", vec_json(e.r1)}, {"u1", vec_json(e.u1)}, {"p1", complex_json(e.p1)},
                       {"r2", vec_json(e.r2)}, {"u2", vec_json(e.u2)}, {"p2", complex_json(e.p2)}};
  const DetectorSpec& d = c.detectors;
  j["detectors"] = json{{"ra", vec_json(d.ra)}, {"ea", vec_json(d.ea)},
                        {"rb", vec_json(d.rb)}, {"eb", vec_json(d.eb)}};
  j["grid"] = json{{"extent", region_json(c.grid.extent)}, {"nx", c.grid.nx}, {"ny", c.grid.ny}};
  const SearchConfig& s = c.search;
  j["search"] = json{{"region", s.region},       {"center", vec_json(s.center)},
                     {"radius", s.radius},       {"rectangle", region_json(s.rectangle)},
                     {"target", s.target},       {"coarse", s.coarse}};
  j["classification"] =
      json{{"tol_super", c.classification.tol_super}, {"tol_sub", c.classification.tol_sub}};
  j["validate"] = json{{"samples", c.validate.samples}};
  return j;
}

}  // namespace

std::string serialize_config(const RunConfig& config) {
  json j = results_json(config);
  // Keep the documented key order: run settings first.
  json out;
  for (const auto& item : j.items()) {
    out[item.key()] = item.value();
    if (item.key() == "seed") {
      out["threads"] = config.threads;
      out["out"] = config.out;
    }
  }
  return out.dump(2) + "\n";
}

std::string result_fingerprint(const RunConfig& config) { return results_json(config).dump(); }

}  // namespace cohscat::cli
