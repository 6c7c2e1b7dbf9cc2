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

#include <string>
#include <utility>
#include <vector>

#include "cohscat/maps.hpp"
#include "cohscat/solver.hpp"

namespace cohscat::cli {

using Header = std::vector<std::pair<std::string, std::string>>;

/// Medium file: JSON with positions and generation parameters in
/// wavelengths. Loading multiplies by 2 pi, the same operation the generator
/// path applies, so a saved medium reproduces its source bit for bit.
void write_medium(const Medium2D& medium, const std::string& path, const Header& provenance);
Medium2D read_medium(const std::string& path);
std::string medium_json(const Medium2D& medium, const Header& provenance);

/// CSV raster: `# key: value` header lines, then `x,y,value` rows with x
/// fastest, coordinates in wavelengths, 17 significant digits, LF endings.
/// Missing pixels have an empty value field.
void write_csv(const MapGrid& map, const std::string& path, const Header& provenance);
std::string csv_text(const MapGrid& map, const Header& provenance);
/// Inverse of write_csv. Grid geometry comes from the `grid` header line.
MapGrid read_csv(const std::string& path);

/// Binary P5 with maxval 65535, big-endian samples, top row = largest y.
/// Values are clamped to [0, 1] and scaled; missing pixels become 0.
void write_pgm(const MapGrid& map, const std::string& path);
/// Sidecar mask in the same format: 65535 for valid pixels, 0 for missing.
void write_mask_pgm(const MapGrid& map, const std::string& path);
std::vector<unsigned char> pgm_bytes(const MapGrid& map, bool mask);

}  // namespace cohscat::cli
