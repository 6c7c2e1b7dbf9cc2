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

#include "cohscat/coherence.hpp"
#include "cohscat/geometry.hpp"
#include "cohscat/solver.hpp"

namespace cohscat {

/// Where both detectors may be placed: an axis-aligned rectangle (two
/// coordinates per detector) or a circle (one angle per detector).
struct SearchRegion {
  enum class Kind { rectangle, circle };
  Kind kind = Kind::rectangle;
  Region rectangle;
  Vec2 center;
  double radius = 0.0;

  static SearchRegion make_rectangle(const Region& r) { return {Kind::rectangle, r, {}, 0.0}; }
  static SearchRegion make_circle(Vec2 c, double radius) { return {Kind::circle, {}, c, radius}; }
};

enum class SearchTarget { maximize, minimize };

struct SearchOptions {
  /// Coarse grid: n x n points per detector (rectangle) or n angles (circle).
  int coarse = 12;
  /// Refinement stops once every step is below this length (1e-4 wavelengths).
  double min_step = 1e-4 * kTwoPi;
  Vec2 e_a{1.0, 0.0};
  Vec2 e_b{1.0, 0.0};
};

struct ExtremalDetectors {
  Detector da;
  Detector db;
  double g2 = 0.0;
  /// Best value found on the coarse grid before refinement.
  double coarse_g2 = 0.0;
};

/// Coarse exhaustive search over detector pairs followed by coordinate descent
/// with halving steps. The result is never worse than the best coarse value
/// and reproduces bit-exactly through g2_detectors.
ExtremalDetectors find_extremal_detectors(const SystemFactorization& fact, const EmitterPair& em,
                                          const SearchRegion& region, SearchTarget target,
                                          const SearchOptions& options = {});

}  // namespace cohscat
