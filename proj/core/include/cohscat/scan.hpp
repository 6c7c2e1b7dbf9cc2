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

#include <cstdint>

#include "cohscat/em2d.hpp"
#include "cohscat/geometry.hpp"
#include "cohscat/solver.hpp"

namespace cohscat {

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed constants, identical stream on
/// every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Rejection-sampling budget shared by all scatterers of one medium.
inline constexpr long kMaxPlacementAttempts = 1'000'000;

/// Uniform random positions in `region` (reduced units) with pairwise
/// distances above `exclusion_radius`. Each candidate consumes two draws, x
/// then y. Throws PackingError when the attempt budget runs out.
Medium2D generate_medium(std::uint64_t seed, int n_scatterers, const Region& region,
                         double alpha_bare, double exclusion_radius, PolMode mode,
                         double wavelength_nm = 698.0);

/// FNV-1a over the IEEE-754 bit patterns of every (x, y), in order.
std::uint64_t positions_digest(const Medium2D& medium);

struct DiffusionDiagnostics {
  double sigma_s = 0.0;            ///< scattering cross-section (length)
  double ell = 0.0;                ///< independent-scattering mean free path
  double k_ell = 0.0;
  double optical_thickness = 0.0;  ///< smaller side of the region over ell
  bool diffusive = false;          ///< k_ell > 1 and optical thickness > 3
};

/// Measures sigma_s by far-field quadrature of the power scattered by an
/// isolated scatterer under a unit plane wave. Uses the generation region if
/// recorded, otherwise the scatterers' bounding box.
DiffusionDiagnostics diffusion_diagnostics(const Medium2D& medium);

/// Bare polarizability giving the requested k*ell at a number density, from
/// sigma_s = |alpha|^2 ImG0(r,r). Throws InvalidInputError if the target
/// needs more than the unitary limit.
double alpha_bare_for_k_ell(double k_ell, double density, PolMode mode);

}  // namespace cohscat
