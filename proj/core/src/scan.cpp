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

#include "cohscat/scan.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "cohscat/errors.hpp"

namespace cohscat {
namespace {

constexpr double kDiagnosticRadius = 1e5;
constexpr int kDiagnosticAngles = 256;

}  // namespace

Medium2D generate_medium(std::uint64_t seed, int n_scatterers, const Region& region,
                         double alpha_bare, double exclusion_radius, PolMode mode,
                         double wavelength_nm) {
  if (n_scatterers < 0) throw InvalidInputError("generate_medium: negative scatterer count");
  if (n_scatterers > 0 && !(region.width > 0.0 && region.height > 0.0)) {
    throw GeometryError("generate_medium: region must have positive width and height");
  }
  if (exclusion_radius < 0.0) throw InvalidInputError("generate_medium: negative exclusion radius");

  Medium2D medium;
  medium.mode = mode;
  medium.wavelength_nm = wavelength_nm;
  medium.generation = GenerationInfo{seed, n_scatterers, region, alpha_bare, exclusion_radius};
  if (n_scatterers == 0) return medium;

  const Polarizability pol = dress_polarizability(alpha_bare, mode, 1.0);
  SplitMix64 rng(seed);
  medium.scatterers.reserve(static_cast<std::size_t>(n_scatterers));
  long attempts = 0;
  while (static_cast<int>(medium.scatterers.size()) < n_scatterers) {
    if (attempts++ >= kMaxPlacementAttempts) {
      throw PackingError("generate_medium: placed only " +
                         std::to_string(medium.scatterers.size()) + " of " +
                         std::to_string(n_scatterers) + " scatterers in " +
                         std::to_string(kMaxPlacementAttempts) + " attempts");
    }
    const double x = region.x0 + rng.uniform() * region.width;
    const double y = region.y0 + rng.uniform() * region.height;
    const Vec2 candidate{x, y};
    const bool clear = std::all_of(medium.scatterers.begin(), medium.scatterers.end(),
                                   [&](const Scatterer& s) {
                                     return distance(s.position, candidate) > exclusion_radius;
                                   });
    if (clear) medium.scatterers.push_back({candidate, pol});
  }
  return medium;
}

std::uint64_t positions_digest(const Medium2D& medium) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](double value) {
    const auto bits = std::bit_cast<std::uint64_t>(value);
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (bits >> (8 * byte)) & 0xffULL;
      hash *= 0x100000001b3ULL;
    }
  };
  for (const Scatterer& s : medium.scatterers) {
    mix(s.position.x);
    mix(s.position.y);
  }
  return hash;
}

DiffusionDiagnostics diffusion_diagnostics(const Medium2D& medium) {
  if (medium.scatterers.empty()) {
    throw InvalidInputError("diffusion_diagnostics: medium has no scatterers");
  }

  // Cross-sections are cached per bare polarizability; generated media share one.
  std::map<double, double> sigma_by_alpha;
  double sigma_total = 0.0;
  for (const Scatterer& s : medium.scatterers) {
    auto it = sigma_by_alpha.find(s.pol.alpha_bare);
    if (it == sigma_by_alpha.end()) {
      const double sigma =
          single_scatterer_balance(s.pol, medium.mode, kDiagnosticRadius, kDiagnosticAngles)
              .scattered;
      it = sigma_by_alpha.emplace(s.pol.alpha_bare, sigma).first;
    }
    sigma_total += it->second;
  }

  Region region;
  if (medium.generation) {
    region = medium.generation->region;
  } else {
    double x_min = std::numeric_limits<double>::infinity(), y_min = x_min;
    double x_max = -x_min, y_max = -x_min;
    for (const Scatterer& s : medium.scatterers) {
      x_min = std::min(x_min, s.position.x);
      x_max = std::max(x_max, s.position.x);
      y_min = std::min(y_min, s.position.y);
      y_max = std::max(y_max, s.position.y);
    }
    region = {x_min, y_min, x_max - x_min, y_max - y_min};
  }

  const double n = static_cast<double>(medium.scatterers.size());
  DiffusionDiagnostics d;
  d.sigma_s = sigma_total / n;
  const double density = n / region.area();
  d.ell = 1.0 / (density * d.sigma_s);
  d.k_ell = d.ell;  // k = 1
  d.optical_thickness = std::min(region.width, region.height) / d.ell;
  d.diffusive = d.k_ell > 1.0 && d.optical_thickness > 3.0;
  return d;
}

double alpha_bare_for_k_ell(double k_ell, double density, PolMode mode) {
  if (!(k_ell > 0.0) || !(density > 0.0)) {
    throw InvalidInputError("alpha_bare_for_k_ell: k_ell and density must be positive");
  }
  const double c = green0_im_coincident(mode);
  const double sigma = 1.0 / (density * k_ell);
  const double alpha_sq = sigma / c;
  // |alpha|^2 = a^2 / (1 + c^2 a^2) saturates at 1/c^2.
  const double headroom = 1.0 - c * c * alpha_sq;
  if (!(headroom > 0.0)) {
    throw InvalidInputError("alpha_bare_for_k_ell: requested k_ell " + std::to_string(k_ell) +
                            " is below the unitary limit for this density");
  }
  return std::sqrt(alpha_sq / headroom);
}

}  // namespace cohscat
