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

#include "cohscat/maps.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <vector>

#include "cohscat/errors.hpp"
#include "cohscat/scan.hpp"
#include "parallel.hpp"

namespace cohscat {
namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_vec(Vec2 v) { return format_double(v.x) + " " + format_double(v.y); }

std::string format_complex(std::complex<double> z) {
  return format_double(z.real()) + " " + format_double(z.imag());
}

bool on_scatterer(const Medium2D& medium, Vec2 p) {
  for (const Scatterer& s : medium.scatterers) {
    if (distance(p, s.position) < kPixelExclusion) return true;
  }
  return false;
}

void check_grid(const GridSpec& grid) {
  if (grid.nx <= 0 || grid.ny <= 0 || !(grid.width > 0.0) || !(grid.height > 0.0)) {
    throw GeometryError("map grid must have positive extent and resolution");
  }
}

// Pixels are solved in fixed blocks of consecutive indices so that the
// batching, and hence every bit of the output, is independent of threads.
constexpr std::size_t kPixelBlock = 32;

// Calls fn(i, field) for every pixel i not on a scatterer, where field is the
// radiation of a dipole with orientation u placed at the pixel centre.
template <typename Fn>
void scan_pixels(const SystemFactorization& fact, const GridSpec& grid, Vec2 u, int threads,
                 Fn&& fn) {
  const std::size_t blocks = (grid.size() + kPixelBlock - 1) / kPixelBlock;
  detail::parallel_for(blocks, threads, [&](std::size_t block) {
    std::vector<std::size_t> index;
    std::vector<Vec2> centres;
    const std::size_t end = std::min(grid.size(), (block + 1) * kPixelBlock);
    for (std::size_t i = block * kPixelBlock; i < end; ++i) {
      const int ix = static_cast<int>(i % static_cast<std::size_t>(grid.nx));
      const int iy = static_cast<int>(i / static_cast<std::size_t>(grid.nx));
      const Vec2 r = grid.pixel_center(ix, iy);
      if (on_scatterer(fact.medium(), r)) continue;
      index.push_back(i);
      centres.push_back(r);
    }
    if (index.empty()) return;
    const std::vector<DipoleField> fields = fact.radiate_from(centres, u);
    for (std::size_t k = 0; k < index.size(); ++k) fn(index[k], fields[k]);
  });
}

MapGrid empty_map(const GridSpec& grid, Channel channel) {
  MapGrid map;
  map.grid = grid;
  map.channel = channel;
  map.values.assign(grid.size(), kMissing);
  return map;
}

}  // namespace

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::G2: return "G2";
    case Channel::LDOS: return "LDOS";
    case Channel::CDOS: return "CDOS";
    case Channel::Classification: return "classification";
  }
  return "G2";
}

Channel channel_from_string(std::string_view text) {
  for (Channel c : {Channel::G2, Channel::LDOS, Channel::CDOS, Channel::Classification}) {
    if (text == to_string(c)) return c;
  }
  throw InvalidInputError("unknown map channel '" + std::string(text) + "'");
}

std::vector<std::pair<std::string, std::string>> medium_metadata(const Medium2D& medium) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("mode", std::string(to_string(medium.mode)));
  meta.emplace_back("wavelength_nm", format_double(medium.wavelength_nm));
  meta.emplace_back("n_scatterers", std::to_string(medium.size()));
  if (medium.generation) {
    meta.emplace_back("seed", std::to_string(medium.generation->seed));
    meta.emplace_back("alpha_bare", format_double(medium.generation->alpha_bare));
  }
  char digest[32];
  std::snprintf(digest, sizeof digest, "%016" PRIx64, positions_digest(medium));
  meta.emplace_back("medium_digest", digest);
  if (!medium.scatterers.empty()) {
    const DiffusionDiagnostics d = diffusion_diagnostics(medium);
    meta.emplace_back("k_ell", format_double(d.k_ell));
    meta.emplace_back("optical_thickness", format_double(d.optical_thickness));
  } else {
    meta.emplace_back("k_ell", "inf");
  }
  return meta;
}

MapGrid g2_map(const SystemFactorization& fact, const FixedEmitter& fixed,
               const ScanningEmitter& scanning, const GridSpec& grid,
               const ScanOptions& options) {
  check_grid(grid);
  MapGrid map = empty_map(grid, Channel::G2);
  map.metadata = medium_metadata(fact.medium());
  map.metadata.emplace_back("channel", "G2");
  map.metadata.emplace_back("fixed_r_lambda", format_vec(to_wavelengths(fixed.r)));
  map.metadata.emplace_back("fixed_u", format_vec(fixed.u));
  map.metadata.emplace_back("fixed_p", format_complex(fixed.p));
  map.metadata.emplace_back("scanning_u", format_vec(scanning.u));
  map.metadata.emplace_back("scanning_p", format_complex(scanning.p));

  const DipoleField field1 = fact.radiate(fixed.r, fixed.u);
  const double g11 = im_green_projected(field1, fixed.r, fixed.u);
  const FieldProbe at_fixed = fact.probe(fixed.r, fixed.u);
  scan_pixels(fact, grid, scanning.u, options.threads, [&](std::size_t i, const DipoleField& field2) {
    try {
      const Vec2 r2 = field2.source();
      EmitterPair em{fixed.r, r2, fixed.u, scanning.u, fixed.p, scanning.p};
      ImGreenPair im;
      im.g11 = g11;
      im.g22 = im_green_projected(field2, r2, scanning.u);
      im.g12 = im_green_projected(field2, at_fixed);
      map.values[i] = big_g2(em, im);
    } catch (const Error&) {
      map.values[i] = kMissing;
    }
  });
  return map;
}

DosMaps dos_maps(const SystemFactorization& fact, Vec2 reference, Vec2 reference_u,
                 Vec2 scanning_u, const GridSpec& grid, const ScanOptions& options) {
  check_grid(grid);
  fact.check_evaluation_point(reference);
  DosMaps maps{empty_map(grid, Channel::LDOS), empty_map(grid, Channel::CDOS)};
  auto meta = medium_metadata(fact.medium());
  meta.emplace_back("reference_r_lambda", format_vec(to_wavelengths(reference)));
  meta.emplace_back("reference_u", format_vec(reference_u));
  meta.emplace_back("scanning_u", format_vec(scanning_u));
  maps.ldos.metadata = meta;
  maps.ldos.metadata.emplace_back("channel", "LDOS");
  maps.cdos.metadata = std::move(meta);
  maps.cdos.metadata.emplace_back("channel", "CDOS");

  const FieldProbe at_reference = fact.probe(reference, reference_u);
  scan_pixels(fact, grid, scanning_u, options.threads, [&](std::size_t i, const DipoleField& field) {
    try {
      maps.ldos.values[i] = im_green_projected(field, field.source(), scanning_u);
      maps.cdos.values[i] = im_green_projected(field, at_reference);
    } catch (const Error&) {
      maps.ldos.values[i] = kMissing;
      maps.cdos.values[i] = kMissing;
    }
  });
  return maps;
}

MapGrid classification_map(const MapGrid& g2, double tol_super, double tol_sub) {
  MapGrid map;
  map.grid = g2.grid;
  map.channel = Channel::Classification;
  map.metadata = g2.metadata;
  for (auto& [key, value] : map.metadata) {
    if (key == "channel") value = "classification";
  }
  map.metadata.emplace_back("tol_super", format_double(tol_super));
  map.metadata.emplace_back("tol_sub", format_double(tol_sub));
  map.values.reserve(g2.values.size());
  for (double g : g2.values) {
    if (std::isnan(g)) {
      map.values.push_back(kMissing);
      continue;
    }
    switch (classify(g, tol_super, tol_sub)) {
      case Emission::superradiant: map.values.push_back(kCodeSuperradiant); break;
      case Emission::subradiant: map.values.push_back(kCodeSubradiant); break;
      case Emission::intermediate: map.values.push_back(kCodeIntermediate); break;
    }
  }
  return map;
}

}  // namespace cohscat
