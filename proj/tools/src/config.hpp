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


#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cohscat/em2d.hpp"
#include "cohscat/geometry.hpp"

namespace cohscat::cli {

inline constexpr int kSchemaVersion = 1;

/// Bad or unreadable configuration (exit status 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written (exit status 1).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { gen_medium, diagnose, g2, g2_map, dos_maps, find_detectors, validate };

std::string_view to_string(Command c);
Command command_from_string(std::string_view text);

// All lengths below are in wavelengths.

struct MediumSpec {
  /// Saved medium file; when set, the generation parameters are ignored.
  std::string file;
  PolMode mode = PolMode::TE;
  double wavelength_nm = 698.0;
  int n_scatterers = 300;
  Region region{-3.0, -3.0, 6.0, 6.0};
  double exclusion_radius = 0.05;
  /// Bare polarizability; when absent it is tuned to reach k_ell.
  std::optional<double> alpha_bare;
  double k_ell = 5.0;

  bool operator==(const MediumSpec&) const = default;
};

struct EmitterSpec {
  Vec2 r1{0.0, 0.0};
  Vec2 u1{1.0, 0.0};
  std::complex<double> p1{1.0, 0.0};
  Vec2 r2{0.5, 0.0};
  Vec2 u2{1.0, 0.0};
  std::complex<double> p2{1.0, 0.0};

  bool operator==(const EmitterSpec&) const = default;
};

struct DetectorSpec {
  Vec2 ra{0.0, 4.0};
  Vec2 ea{1.0, 0.0};
  Vec2 rb{0.0, -4.0};
  Vec2 eb{1.0, 0.0};

  bool operator==(const DetectorSpec&) const = default;
};

struct GridConfig {
  Region extent{-3.0, -3.0, 6.0, 6.0};
  int nx = 201;
  int ny = 201;

  bool operator==(const GridConfig&) const = default;
};

struct SearchConfig {
  std::string region = "circle";  ///< "circle" or "rectangle"
  Vec2 center{0.0, 0.0};
  double radius = 5.0;
  Region rectangle{-5.0, 4.0, 10.0, 2.0};
  std::string target = "maximize";  ///< "maximize" or "minimize"
  int coarse = 12;

  bool operator==(const SearchConfig&) const = default;
};

struct ClassificationConfig {
  double tol_super = 0.05;
  double tol_sub = 0.05;

  bool operator==(const ClassificationConfig&) const = default;
};

struct ValidateConfig {
  int samples = 1000;

  bool operator==(const ValidateConfig&) const = default;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  std::optional<Command> command;
  std::uint64_t seed = 42;
  /// Worker count; 0 picks the hardware concurrency. Never affects output.
  int threads = 0;
  std::string out = "cohscat";
  MediumSpec medium;
  EmitterSpec emitters;
  DetectorSpec detectors;
  GridConfig grid;
  SearchConfig search;
  ClassificationConfig classification;
  ValidateConfig validate;

  bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON document. Keys not in the schema raise ConfigError naming
/// the key; missing keys keep their defaults.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// Full JSON form of the config, every field included.
std::string serialize_config(const RunConfig& config);

/// Compact JSON of the fields that determine results (no threads, no out).
std::string result_fingerprint(const RunConfig& config);

}  // namespace cohscat::cli
