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

#include "cohscat/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "cohscat/errors.hpp"

namespace cohscat {
namespace {

constexpr int kMaxSweeps = 200000;

// Search coordinates: (xa, ya, xb, yb) for rectangles, (theta_a, theta_b) for circles.
struct Parametrization {
  const SearchRegion& region;

  int dims() const { return region.kind == SearchRegion::Kind::rectangle ? 4 : 2; }

  std::pair<Vec2, Vec2> points(const std::array<double, 4>& q) const {
    if (region.kind == SearchRegion::Kind::rectangle) return {{q[0], q[1]}, {q[2], q[3]}};
    return {region.center + region.radius * unit_from_angle(q[0]),
            region.center + region.radius * unit_from_angle(q[1])};
  }

  void clamp(std::array<double, 4>& q) const {
    if (region.kind != SearchRegion::Kind::rectangle) return;
    const Region& r = region.rectangle;
    q[0] = std::clamp(q[0], r.x0, r.x0 + r.width);
    q[2] = std::clamp(q[2], r.x0, r.x0 + r.width);
    q[1] = std::clamp(q[1], r.y0, r.y0 + r.height);
    q[3] = std::clamp(q[3], r.y0, r.y0 + r.height);
  }

  // Step length in each coordinate converted to a distance.
  double scale(int) const {
    return region.kind == SearchRegion::Kind::rectangle ? 1.0 : region.radius;
  }
};

}  // namespace

ExtremalDetectors find_extremal_detectors(const SystemFactorization& fact, const EmitterPair& em,
                                          const SearchRegion& region, SearchTarget target,
                                          const SearchOptions& options) {
  const bool is_rect = region.kind == SearchRegion::Kind::rectangle;
  if (is_rect ? !(region.rectangle.width > 0.0 && region.rectangle.height > 0.0)
              : !(region.radius > 0.0)) {
    throw GeometryError("find_extremal_detectors: empty search region");
  }
  if (options.coarse < 2) throw InvalidInputError("find_extremal_detectors: coarse grid too small");

  const DipoleField f1 = fact.radiate(em.r1, em.u1);
  const DipoleField f2 = fact.radiate(em.r2, em.u2);
  const bool maximize = target == SearchTarget::maximize;
  auto better = [maximize](double candidate, double incumbent) {
    return maximize ? candidate > incumbent : candidate < incumbent;
  };

  // Full-path evaluation, shared with g2_detectors for bit-exact reproduction.
  auto evaluate = [&](Vec2 ra, Vec2 rb) -> std::optional<double> {
    try {
      return g2_detectors(fact, em, {ra, options.e_a}, {rb, options.e_b});
    } catch (const Error&) {
      return std::nullopt;
    }
  };

  // Coarse stage: tabulate both propagators at every candidate point once.
  const int n = options.coarse;
  std::vector<double> coords;  // per candidate: x, y (rect) or theta (circle)
  std::vector<Vec2> candidates;
  if (is_rect) {
    const Region& r = region.rectangle;
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        candidates.push_back({r.x0 + (ix + 0.5) * r.width / n, r.y0 + (iy + 0.5) * r.height / n});
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / n;
      coords.push_back(theta);
      candidates.push_back(region.center + region.radius * unit_from_angle(theta));
    }
  }

  struct Tab {
    bool valid = false;
    std::complex<double> a1, a2, b1, b2;
  };
  std::vector<Tab> tab(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    try {
      tab[i] = {true, f1.projected(candidates[i], options.e_a), f2.projected(candidates[i], options.e_a),
                f1.projected(candidates[i], options.e_b), f2.projected(candidates[i], options.e_b)};
    } catch (const Error&) {
      tab[i].valid = false;
    }
  }

  std::optional<std::pair<std::size_t, std::size_t>> best_pair;
  double best = 0.0;
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    if (!tab[a].valid) continue;
    for (std::size_t b = 0; b < candidates.size(); ++b) {
      if (!tab[b].valid) continue;
      double value = 0.0;
      try {
        value = g2_from_amplitudes(em, {tab[a].a1, tab[a].a2, tab[b].b1, tab[b].b2});
      } catch (const Error&) {
        continue;
      }
      if (!best_pair || better(value, best)) {
        best = value;
        best_pair = {a, b};
      }
    }
  }
  if (!best_pair) {
    throw GeometryError("find_extremal_detectors: no valid detector placement in search region");
  }

  const Parametrization param{region};
  std::array<double, 4> q{};
  std::array<double, 4> step{};
  if (is_rect) {
    const Vec2 a = candidates[best_pair->first];
    const Vec2 b = candidates[best_pair->second];
    q = {a.x, a.y, b.x, b.y};
    const double sx = region.rectangle.width / n;
    const double sy = region.rectangle.height / n;
    step = {sx, sy, sx, sy};
  } else {
    q = {coords[best_pair->first], coords[best_pair->second], 0.0, 0.0};
    step = {2.0 * std::numbers::pi / n, 2.0 * std::numbers::pi / n, 0.0, 0.0};
  }

  // Refinement. The incumbent is re-evaluated through the full path so the
  // returned value is exactly what g2_detectors reports.
  auto [ra, rb] = param.points(q);
  double current = evaluate(ra, rb).value_or(best);
  const double coarse_best = best;
  const int dims = param.dims();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool improved = false;
    for (int d = 0; d < dims; ++d) {
      for (double sign : {1.0, -1.0}) {
        std::array<double, 4> trial = q;
        trial[d] += sign * step[d];
        param.clamp(trial);
        if (trial == q) continue;
        const auto [ta, tb] = param.points(trial);
        const std::optional<double> value = evaluate(ta, tb);
        if (value && better(*value, current)) {
          q = trial;
          current = *value;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      double largest = 0.0;
      for (int d = 0; d < dims; ++d) {
        step[d] *= 0.5;
        largest = std::max(largest, step[d] * param.scale(d));
      }
      if (largest < options.min_step) break;
    }
  }

  // The coarse optimum itself might have been invalid on the full path.
  std::tie(ra, rb) = param.points(q);
  const std::optional<double> final_value = evaluate(ra, rb);
  if (!final_value) {
    throw GeometryError("find_extremal_detectors: refined placement is not evaluable");
  }
  return {{ra, options.e_a}, {rb, options.e_b}, *final_value, coarse_best};
}

}  // namespace cohscat
