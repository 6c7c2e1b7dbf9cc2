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


#include <stdlib.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cohscat/scan.hpp"
#include "config.hpp"
#include "doctest.h"
#include "io.hpp"
#include "run.hpp"

using namespace cohscat;
using namespace cohscat::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "cohscat-cli-XXXXXX").string();
    path = ::mkdtemp(tmpl.data());
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

}  // namespace

TEST_CASE("config round-trip") {
  const RunConfig defaults;
  CHECK(parse_config(serialize_config(defaults)) == defaults);

  const std::string custom = R"({
    "schema_version": 1, "command": "g2", "seed": 18446744073709551615, "threads": 3,
    "out": "runs/x",
    "medium": {"mode": "TM", "n_scatterers": 12, "alpha_bare": -0.75,
               "region": {"x0": -1, "y0": -2, "width": 3, "height": 4}},
    "emitters": {"r1": [0.1, 0.2], "p2": [0.5, -0.25], "u2": [0, 1]},
    "detectors": {"rb": [7, 8]},
    "grid": {"nx": 5, "ny": 7, "extent": {"x0": 0, "y0": 0, "width": 1, "height": 1}},
    "search": {"region": "rectangle", "target": "minimize", "coarse": 4},
    "classification": {"tol_super": 0.1},
    "validate": {"samples": 10}
  })";
  const RunConfig c = parse_config(custom);
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(c.medium.mode == PolMode::TM);
  CHECK(c.medium.alpha_bare == -0.75);
  CHECK(c.emitters.p2 == std::complex<double>(0.5, -0.25));
  CHECK(c.command == Command::g2);
  const RunConfig again = parse_config(serialize_config(c));
  CHECK(again == c);
  CHECK(serialize_config(again) == serialize_config(c));
}

TEST_CASE("config errors name the offending key") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("<no error>");
  };
  CHECK(message(R"({"schema_version": 1, "grid": {"nx": 3, "nz": 4}})").find("'grid.nz'") != std::string::npos);
  CHECK(message(R"({"schema_version": 1, "verbose": true})").find("'verbose'") != std::string::npos);
  CHECK(message(R"({"grid": {}})").find("schema_version") != std::string::npos);
  CHECK(message(R"({"schema_version": 1, "medium": {"mode": "TX"}})").find("medium.mode") != std::string::npos);
  CHECK(message(R"({"schema_version": 1, "emitters": {"r1": [1]}})").find("emitters.r1") != std::string::npos);
  CHECK(message("{not json") != "<no error>");
}

TEST_CASE("CSV export and re-import") {
  TempDir dir;
  MapGrid map;
  map.grid = {{-1.25, 0.5}, 3.0, 2.0, 4, 3};
  map.channel = Channel::CDOS;
  map.metadata = {{"channel", "CDOS"}, {"note", "x"}};
  for (int i = 0; i < 12; ++i) map.values.push_back(std::sin(1.0 + i) * std::pow(10.0, i - 6));
  map.values[5] = kMissing;
  write_csv(map, dir / "m.csv", {{"tool", "test"}});
  const std::string text = slurp(dir / "m.csv");
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.rfind("# tool: test\n", 0) == 0);

  const MapGrid back = read_csv(dir / "m.csv");
  CHECK(back.channel == Channel::CDOS);
  CHECK(back.grid.nx == 4);
  CHECK(back.grid.ny == 3);
  CHECK(std::abs(back.grid.width - 3.0) <= 1e-15 * 3.0);
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    if (std::isnan(map.values[i])) {
      CHECK(std::isnan(back.values[i]));
    } else {
      CHECK(std::abs(back.values[i] - map.values[i]) <= 1e-15 * std::abs(map.values[i]));
    }
  }
  // Pixel 5 is (ix 1, iy 1): its value field is empty.
  std::istringstream rows(text);
  std::string line;
  int data = 0;
  while (std::getline(rows, line)) {
    if (line[0] == '#') continue;
    if (data++ == 5) CHECK(line.back() == ',');
  }
  CHECK(data == 12);
  CHECK_THROWS_AS(read_csv(dir / "absent.csv"), IoError);
}

TEST_CASE("PGM encoding") {
  MapGrid one;
  one.grid = {{0, 0}, 1, 1, 1, 1};
  one.values = {1.0};
  const std::vector<unsigned char> bytes = pgm_bytes(one, false);
  const std::string head = "P5\n1 1\n65535\n";
  REQUIRE(bytes.size() == head.size() + 2);
  CHECK(std::string(bytes.begin(), bytes.begin() + static_cast<long>(head.size())) == head);
  CHECK(bytes[head.size()] == 0xff);
  CHECK(bytes[head.size() + 1] == 0xff);

  MapGrid two;
  two.grid = {{0, 0}, 2, 2, 2, 1};
  two.values = {kMissing, 0.5};
  const std::vector<unsigned char> img = pgm_bytes(two, false), mask = pgm_bytes(two, true);
  const std::size_t h = std::string("P5\n2 1\n65535\n").size();
  CHECK(img[h] == 0);
  CHECK(img[h + 1] == 0);
  CHECK(((img[h + 2] << 8) | img[h + 3]) == 32768);
  CHECK(mask[h] == 0);
  CHECK(mask[h + 1] == 0);
  CHECK(mask[h + 2] == 0xff);
  CHECK(mask[h + 3] == 0xff);

  // Top image row is the largest y.
  MapGrid column;
  column.grid = {{0, 0}, 1, 2, 1, 2};
  column.values = {0.0, 1.0};
  const std::vector<unsigned char> c = pgm_bytes(column, false);
  const std::size_t hc = std::string("P5\n1 2\n65535\n").size();
  CHECK(c[hc] == 0xff);
  CHECK(c[hc + 2] == 0);
}

TEST_CASE("medium files reproduce the generated medium bit for bit") {
  TempDir dir;
  MediumSpec spec;
  spec.n_scatterers = 60;
  spec.region = {-1.5, -1.0, 3.0, 2.0};
  const Medium2D generated = build_medium(spec, 77);
  write_medium(generated, dir / "m.json", {});
  const Medium2D loaded = read_medium(dir / "m.json");
  REQUIRE(loaded.size() == generated.size());
  CHECK(positions_digest(loaded) == positions_digest(generated));
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded.scatterers[i].pol.alpha == generated.scatterers[i].pol.alpha);
  }
  CHECK(loaded.generation->region == generated.generation->region);
  CHECK(diffusion_diagnostics(loaded).k_ell == diffusion_diagnostics(generated).k_ell);
  CHECK(std::abs(diffusion_diagnostics(generated).k_ell - 5.0) < 1e-8);
}

TEST_CASE("gen-medium is byte-reproducible") {
  TempDir dir;
  CHECK(invoke({"gen-medium", "--seed", "42", "--out", dir / "a"}) == kExitOk);
  CHECK(invoke({"gen-medium", "--seed", "42", "--out", dir / "b"}) == kExitOk);
  CHECK(invoke({"gen-medium", "--seed", "43", "--out", dir / "c"}) == kExitOk);
  CHECK(slurp(dir / "a.medium.json") == slurp(dir / "b.medium.json"));
  CHECK(slurp(dir / "a.medium.json") != slurp(dir / "c.medium.json"));
}

TEST_CASE("g2-map end to end, deterministic across thread counts") {
  TempDir dir;
  spit(dir / "cfg.json", R"({"schema_version": 1, "medium": {"n_scatterers": 60},
                            "grid": {"nx": 17, "ny": 13}})");
  CHECK(invoke({"g2-map", "--config", dir / "cfg.json", "--threads", "1", "--out", dir / "t1"}) == kExitOk);
  CHECK(invoke({"g2-map", "--config", dir / "cfg.json", "--threads", "3", "--out", dir / "t3"}) == kExitOk);
  for (const char* ext : {".g2.csv", ".g2.pgm", ".g2.mask.pgm", ".class.csv", ".class.pgm"}) {
    CHECK(fs::exists(dir / (std::string("t1") + ext)));
    CHECK(slurp(dir / (std::string("t1") + ext)) == slurp(dir / (std::string("t3") + ext)));
  }
  const MapGrid map = read_csv(dir / "t1.g2.csv");
  CHECK(map.values.size() == 17u * 13u);
  for (double v : map.values) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
  const std::string csv = slurp(dir / "t1.g2.csv");
  for (const char* key : {"# seed: 42", "# tool: cohscat", "# k_ell: ", "# medium_digest: "}) {
    CHECK(csv.find(key) != std::string::npos);
  }
  CHECK(csv.find("threads") == std::string::npos);
}

TEST_CASE("other commands run") {
  TempDir dir;
  spit(dir / "cfg.json", R"({"schema_version": 1, "medium": {"n_scatterers": 30, "mode": "TM", "alpha_bare": 2.0},
                            "grid": {"nx": 9, "ny": 9}, "search": {"coarse": 6}})");
  std::string text;
  CHECK(invoke({"diagnose", "--config", dir / "cfg.json", "--out", dir / "d"}, &text) == kExitOk);
  CHECK(text.find("\"k_ell\"") != std::string::npos);
  CHECK(invoke({"g2", "--config", dir / "cfg.json", "--out", dir / "g"}) == kExitOk);
  CHECK(fs::exists(dir / "g.g2.json"));
  CHECK(invoke({"dos-maps", "--config", dir / "cfg.json", "--out", dir / "m"}) == kExitOk);
  CHECK(read_csv(dir / "m.ldos.csv").channel == Channel::LDOS);
  CHECK(read_csv(dir / "m.cdos.csv").channel == Channel::CDOS);
  CHECK(invoke({"find-detectors", "--config", dir / "cfg.json", "--out", dir / "f"}) == kExitOk);
  CHECK(fs::exists(dir / "f.detectors.json"));
  CHECK(invoke({"g2", "--dump-config", "--seed", "5"}, &text) == kExitOk);
  CHECK(parse_config(text).seed == 5);
  CHECK(invoke({"--version"}, &text) == kExitOk);
  CHECK(text.find("cohscat") != std::string::npos);
}

TEST_CASE("validate command") {
  std::string text;
  TempDir dir;
  spit(dir / "v.json", R"({"schema_version": 1, "validate": {"samples": 100}})");
  CHECK(invoke({"validate", "--config", dir / "v.json"}, &text) == kExitOk);
  CHECK(text.find("FAIL") == std::string::npos);
  CHECK(text.find("all checks passed") != std::string::npos);
}

TEST_CASE("exit-code contract under fault injection") {
  TempDir dir;
  auto with = [&](const std::string& name, const std::string& json) {
    spit(dir / name, json);
    return dir / name;
  };
  // 1: configuration and I/O
  CHECK(invoke({"g2", "--config", with("k.json", R"({"schema_version": 1, "emiters": {}})")}) == kExitConfig);
  CHECK(invoke({"g2", "--config", dir / "missing.json"}) == kExitConfig);
  CHECK(invoke({"g2", "--config", with("bad.json", "{")}) == kExitConfig);
  CHECK(invoke({"g2", "--config", with("cmd.json", R"({"schema_version": 1, "command": "validate"})")}) == kExitConfig);
  CHECK(invoke({"gen-medium", "--out", dir / "no/such/dir/x"}) == kExitConfig);
  CHECK(invoke({"g2", "--threads", "-2"}) == kExitConfig);
  CHECK(invoke({"frobnicate"}) == kExitConfig);
  CHECK(invoke({"diagnose", "--config", with("e.json", R"({"schema_version": 1, "medium": {"n_scatterers": 0}})")}) == kExitConfig);
  // 2: numerical (undefined correlation)
  CHECK(invoke({"g2", "--out", dir / "u", "--config", with("u.json", R"({"schema_version": 1,
      "medium": {"n_scatterers": 0},
      "emitters": {"r1": [0, 0], "u1": [1, 0], "r2": [3, 3], "p2": 0},
      "detectors": {"ra": [0, 0.3], "ea": [0, 1], "rb": [0.8, 0.8]}})")}) == kExitNumerical);
  // 3: geometry and packing
  CHECK(invoke({"g2", "--out", dir / "c", "--config", with("c.json", R"({"schema_version": 1,
      "emitters": {"r1": [0, 0], "r2": [0, 0]}, "detectors": {"ra": [0, 0]}})")}) == kExitGeometry);
  CHECK(invoke({"gen-medium", "--out", dir / "p", "--config", with("p.json", R"({"schema_version": 1,
      "medium": {"n_scatterers": 50, "region": {"width": 1, "height": 1}, "exclusion_radius": 0.5}})")}) == kExitGeometry);
}
