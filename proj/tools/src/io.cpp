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


#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cohscat/em2d.hpp"
#include "config.hpp"
#include "json.hpp"

namespace cohscat::cli {
namespace {

using json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Wavelength value that maps back onto x exactly under multiplication by 2 pi,
// when one exists within a few ulps of x / 2 pi.
double exact_wavelengths(double x) {
  const double v = x / kTwoPi;
  double up = v, down = v;
  for (int step = 0; step < 4; ++step) {
    if (up * kTwoPi == x) return up;
    if (down * kTwoPi == x) return down;
    up = std::nextafter(up, HUGE_VAL);
    down = std::nextafter(down, -HUGE_VAL);
  }
  return v;
}

json region_json(const Region& r) {
  return json{{"x0", exact_wavelengths(r.x0)},
              {"y0", exact_wavelengths(r.y0)},
              {"width", exact_wavelengths(r.width)},
              {"height", exact_wavelengths(r.height)}};
}

Region region_from(const json& j) {
  return {from_wavelengths(j.at("x0").get<double>()), from_wavelengths(j.at("y0").get<double>()),
          from_wavelengths(j.at("width").get<double>()),
          from_wavelengths(j.at("height").get<double>())};
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& text, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw IoError("malformed number '" + text + "' in " + where);
  return v;
}

}  // namespace

std::string medium_json(const Medium2D& medium, const Header& provenance) {
  json j;
  j["format"] = "cohscat-medium";
  j["schema_version"] = kSchemaVersion;
  json prov = json::object();
  for (const auto& [k, v] : provenance) prov[k] = v;
  j["provenance"] = prov;
  j["mode"] = std::string(to_string(medium.mode));
  j["wavelength_nm"] = medium.wavelength_nm;
  if (medium.generation) {
    const GenerationInfo& g = *medium.generation;
    j["generation"] = json{{"seed", g.seed},
                           {"n_scatterers", g.n_scatterers},
                           {"region", region_json(g.region)},
                           {"alpha_bare", g.alpha_bare},
                           {"exclusion_radius", exact_wavelengths(g.exclusion_radius)}};
  } else {
    j["generation"] = nullptr;
  }
  json list = json::array();
  for (const Scatterer& s : medium.scatterers) {
    list.push_back(json::array(
        {exact_wavelengths(s.position.x), exact_wavelengths(s.position.y), s.pol.alpha_bare}));
  }
  j["scatterers"] = std::move(list);
  return j.dump(1) + "\n";
}

void write_medium(const Medium2D& medium, const std::string& path, const Header& provenance) {
  write_file(path, medium_json(medium, provenance));
}

Medium2D read_medium(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError("medium file '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    if (j.at("format") != "cohscat-medium") throw ConfigError("'" + path + "' is not a medium file");
    if (j.at("schema_version") != kSchemaVersion) {
      throw ConfigError("medium file '" + path + "' has an unsupported schema_version");
    }
    Medium2D m;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode != "TE" && mode != "TM") throw ConfigError("medium file '" + path + "': bad mode");
    m.mode = pol_mode_from_string(mode);
    m.wavelength_nm = j.at("wavelength_nm").get<double>();
    if (!j.at("generation").is_null()) {
      const json& g = j["generation"];
      m.generation = GenerationInfo{g.at("seed").get<std::uint64_t>(), g.at("n_scatterers").get<int>(),
                                    region_from(g.at("region")), g.at("alpha_bare").get<double>(),
                                    from_wavelengths(g.at("exclusion_radius").get<double>())};
    }
    for (const json& s : j.at("scatterers")) {
      if (!s.is_array() || s.size() != 3) {
        throw ConfigError("medium file '" + path + "': scatterers must be [x, y, alpha_bare]");
      }
      const Vec2 p = from_wavelengths(Vec2{s[0].get<double>(), s[1].get<double>()});
      m.scatterers.push_back({p, dress_polarizability(s[2].get<double>(), m.mode, 1.0)});
    }
    return m;
  } catch (const json::exception& e) {
    throw ConfigError("medium file '" + path + "': " + e.what());
  }
}

std::string csv_text(const MapGrid& map, const Header& provenance) {
  std::string out;
  for (const auto& [k, v] : provenance) out += "# " + k + ": " + v + "\n";
  for (const auto& [k, v] : map.metadata) out += "# " + k + ": " + v + "\n";
  const GridSpec& g = map.grid;
  out += "# grid: " + fmt17(to_wavelengths(g.origin.x)) + " " + fmt17(to_wavelengths(g.origin.y)) +
         " " + fmt17(to_wavelengths(g.width)) + " " + fmt17(to_wavelengths(g.height)) + " " +
         std::to_string(g.nx) + " " + std::to_string(g.ny) + "\n";
  out += "# columns: x,y,value (x and y in wavelengths)\n";
  out.reserve(out.size() + map.values.size() * 64);
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const Vec2 c = to_wavelengths(g.pixel_center(ix, iy));
      const double v = map.at(ix, iy);
      out += fmt17(c.x);
      out += ',';
      out += fmt17(c.y);
      out += ',';
      if (!std::isnan(v)) out += fmt17(v);
      out += '\n';
    }
  }
  return out;
}

void write_csv(const MapGrid& map, const std::string& path, const Header& provenance) {
  write_file(path, csv_text(map, provenance));
}

MapGrid read_csv(const std::string& path) {
  std::istringstream in(read_file(path));
  MapGrid map;
  bool have_grid = false;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::size_t colon = line.find(": ");
      if (colon == std::string::npos || colon < 2) continue;
      const std::string key = line.substr(2, colon - 2), value = line.substr(colon + 2);
      if (key == "grid") {
        std::istringstream g(value);
        double x0, y0, w, h;
        if (!(g >> x0 >> y0 >> w >> h >> map.grid.nx >> map.grid.ny) || map.grid.nx <= 0 ||
            map.grid.ny <= 0) {
          throw IoError("malformed grid line in '" + path + "'");
        }
        map.grid.origin = from_wavelengths(Vec2{x0, y0});
        map.grid.width = from_wavelengths(w);
        map.grid.height = from_wavelengths(h);
        map.values.assign(map.grid.size(), kMissing);
        have_grid = true;
      } else if (key == "channel") {
        map.channel = channel_from_string(value);
        map.metadata.emplace_back(key, value);
      } else if (key != "columns") {
        map.metadata.emplace_back(key, value);
      }
      continue;
    }
    if (!have_grid) throw IoError("'" + path + "' has data rows before the grid header");
    const std::vector<std::string> fields = split_commas(line);
    if (fields.size() != 3) throw IoError("'" + path + "': expected x,y,value rows");
    if (row >= map.values.size()) throw IoError("'" + path + "' has more rows than the grid");
    if (!fields[2].empty()) map.values[row] = parse_double(fields[2], path);
    ++row;
  }
  if (!have_grid) throw IoError("'" + path + "' has no grid header");
  if (row != map.values.size()) throw IoError("'" + path + "' has fewer rows than the grid");
  return map;
}

std::vector<unsigned char> pgm_bytes(const MapGrid& map, bool mask) {
  const GridSpec& g = map.grid;
  const std::string head = "P5\n" + std::to_string(g.nx) + " " + std::to_string(g.ny) + "\n65535\n";
  std::vector<unsigned char> bytes(head.begin(), head.end());
  bytes.reserve(bytes.size() + 2 * map.values.size());
  for (int iy = g.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      const double v = map.at(ix, iy);
      unsigned level = 0;
      if (mask) {
        level = std::isnan(v) ? 0u : 65535u;
      } else if (!std::isnan(v)) {
        level = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 1.0) * 65535.0));
      }
      bytes.push_back(static_cast<unsigned char>(level >> 8));
      bytes.push_back(static_cast<unsigned char>(level & 0xffu));
    }
  }
  return bytes;
}

void write_pgm(const MapGrid& map, const std::string& path) {
  const std::vector<unsigned char> b = pgm_bytes(map, false);
  write_file(path, std::string(b.begin(), b.end()));
}

void write_mask_pgm(const MapGrid& map, const std::string& path) {
  const std::vector<unsigned char> b = pgm_bytes(map, true);
  write_file(path, std::string(b.begin(), b.end()));
}

}  // namespace cohscat::cli
