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
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cohscat/coherence.hpp"
#include "cohscat/geometry.hpp"
#include "cohscat/solver.hpp"

namespace cohscat {

/// Raster geometry in reduced units. Pixel (ix, iy) is centred at
/// origin + ((ix + 1/2) width / nx, (iy + 1/2) height / ny).
struct GridSpec {
  Vec2 origin;
  double width = 0.0;
  double height = 0.0;
  int nx = 0;
  int ny = 0;

  Vec2 pixel_center(int ix, int iy) const {
    return {origin.x + (ix + 0.5) * width / nx, origin.y + (iy + 0.5) * height / ny};
  }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

enum class Channel { G2, LDOS, CDOS, Classification };
std::string_view to_string(Channel c);
Channel channel_from_string(std::string_view text);

/// Marks undefined pixels (on a scatterer, or no emission).
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

/// Classification raster codes.
inline constexpr double kCodeSubradiant = 0.0;
inline constexpr double kCodeIntermediate = 0.5;
inline constexpr double kCodeSuperradiant = 1.0;

/// Row-major raster (x fastest) with provenance metadata.
struct MapGrid {
  GridSpec grid;
  Channel channel = Channel::G2;
  std::vector<double> values;
  std::vector<std::pair<std::string, std::string>> metadata;

  double at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * static_cast<std::size_t>(grid.nx) +
                  static_cast<std::size_t>(ix)];
  }
};

/// Pixels closer than this to a scatterer (reduced units, 1e-9 wavelengths)
/// are reported as missing.
inline constexpr double kPixelExclusion = 1e-9 * kTwoPi;

struct FixedEmitter {
  Vec2 r;
  Vec2 u{1.0, 0.0};
  std::complex<double> p{1.0, 0.0};
};

struct ScanningEmitter {
  Vec2 u{1.0, 0.0};
  std::complex<double> p{1.0, 0.0};
};

/// Worker threads for raster scans; results never depend on it.
struct ScanOptions {
  int threads = 1;
};

/// Integrated correlation factor with emitter 2 at each pixel centre.
MapGrid g2_map(const SystemFactorization& fact, const FixedEmitter& fixed,
               const ScanningEmitter& scanning, const GridSpec& grid,
               const ScanOptions& options = {});

struct DosMaps {
  MapGrid ldos;
  MapGrid cdos;
};

/// LDOS channel: u . Im G(r, r) . u. CDOS channel: u_ref . Im G(r_ref, r) . u.
DosMaps dos_maps(const SystemFactorization& fact, Vec2 reference, Vec2 reference_u,
                 Vec2 scanning_u, const GridSpec& grid, const ScanOptions& options = {});

/// Thresholded G2 raster: subradiant 0, intermediate 0.5, superradiant 1.
MapGrid classification_map(const MapGrid& g2, double tol_super = kDefaultTolSuper,
                           double tol_sub = kDefaultTolSub);

/// Provenance entries describing a medium (seed, digest, mode, k*ell, ...).
std::vector<std::pair<std::string, std::string>> medium_metadata(const Medium2D& medium);

}  // namespace cohscat
