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


#include "validate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>

#include "cohscat/coherence.hpp"
#include "cohscat/errors.hpp"
#include "cohscat/maps.hpp"
#include "cohscat/scan.hpp"

namespace cohscat::cli {
namespace {

using cd = std::complex<double>;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Vec2 point(double half) { return {uniform(-half, half), uniform(-half, half)}; }
  Vec2 unit() { return unit_from_angle(uniform(0.0, kTwoPi)); }
  cd amplitude() { return std::polar(uniform(0.1, 2.0), uniform(0.0, kTwoPi)); }

  // Medium of up to 40 scatterers in a 4-wavelength box.
  Medium2D medium() {
    const PolMode mode = rng_() % 2 ? PolMode::TE : PolMode::TM;
    const int n = static_cast<int>(rng_() % 41);
    double alpha = uniform(-3.0, 3.0);
    if (std::abs(alpha) < 0.2) alpha = 0.2;
    const double half = 2.0 * kTwoPi;
    return generate_medium(rng_(), n, {-half, -half, 2 * half, 2 * half}, alpha, 0.05 * kTwoPi,
                           mode);
  }

  EmitterPair pair() {
    EmitterPair em;
    em.r1 = point(2.5 * kTwoPi);
    em.r2 = point(2.5 * kTwoPi);
    em.u1 = unit();
    em.u2 = unit();
    em.p1 = amplitude();
    em.p2 = amplitude();
    return em;
  }

  Detector detector() { return {point(4.0 * kTwoPi), unit()}; }

 private:
  std::mt19937_64 rng_;
};

// Runs fn over `samples` configurations drawn from media refreshed every 20
// samples. fn returns the violation measure (<= 0 passes).
CheckResult sampled(const std::string& name, int samples, std::uint64_t seed,
                    const std::function<double(Sampler&, const SystemFactorization&)>& fn,
                    const char* detail_pattern) {
  Sampler s(seed);
  double worst = -HUGE_VAL;
  int skipped = 0;
  std::optional<SystemFactorization> fact;
  for (int i = 0; i < samples; ++i) {
    if (i % 20 == 0) fact.emplace(assemble(s.medium()));
    try {
      worst = std::max(worst, fn(s, *fact));
    } catch (const UndefinedCorrelationError&) {
      ++skipped;
    } catch (const GeometryError&) {
      ++skipped;
    }
  }
  CheckResult r{name, worst <= 0.0, fmt(detail_pattern, worst)};
  if (skipped > 0) r.detail += " (" + std::to_string(skipped) + " degenerate samples skipped)";
  return r;
}

template <typename Fn>
CheckResult guarded(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_validation(int samples, std::uint64_t seed, int threads) {
  std::vector<CheckResult> out;

  out.push_back(guarded("antibunching bound", [&] {
    return sampled("antibunching bound", samples, seed,
                   [](Sampler& s, const SystemFactorization& f) {
                     const EmitterPair em = s.pair();
                     const double g2 = g2_detectors(f, em, s.detector(), s.detector());
                     const double big = big_g2(f, em);
                     return std::max({-g2, g2 - 1.0 - 1e-12, -big, big - 1.0 - 1e-12});
                   },
                   "worst excursion outside [0, 1 + 1e-12]: %.3g");
  }));

  out.push_back(guarded("path equivalence", [&] {
    return sampled("path equivalence", samples, seed + 1,
                   [](Sampler& s, const SystemFactorization& f) {
                     const EmitterPair em = s.pair();
                     const DetectorAmplitudes g = detector_amplitudes(f, em, s.detector(), s.detector());
                     return std::abs(g2_from_projection(em, g) - g2_from_amplitudes(em, g)) - 1e-12;
                   },
                   "worst difference minus 1e-12: %.3g");
  }));

  out.push_back(guarded("integrated consistency", [&] {
    return sampled("integrated consistency", samples, seed + 2,
                   [](Sampler& s, const SystemFactorization& f) {
                     const EmitterPair em = s.pair();
                     const ImGreenPair im = im_green_pair(f, em);
                     const double p1 = p1_integrated(em, im), big = big_g2(em, im);
                     return std::abs(p2_integrated(em, im) / (p1 * p1) - big) - 1e-14 * big;
                   },
                   "worst |P2/P1^2 - G2| beyond 1e-14 relative: %.3g");
  }));

  out.push_back(guarded("amplitude invariance", [&] {
    return sampled("amplitude invariance", samples / 4 + 1, seed + 3,
                   [](Sampler& s, const SystemFactorization& f) {
                     EmitterPair em = s.pair();
                     const Detector da = s.detector(), db = s.detector();
                     const double g2 = g2_detectors(f, em, da, db);
                     const double sub = condition_residuals(f, em, da, db).subradiance;
                     const cd c = 5.0 * s.amplitude();
                     em.p1 *= c;
                     em.p2 *= c;
                     return std::max(std::abs(g2_detectors(f, em, da, db) - g2) - 1e-13 * g2,
                                     std::abs(condition_residuals(f, em, da, db).subradiance - sub) -
                                         1e-13 * sub);
                   },
                   "worst change beyond 1e-13 relative: %.3g");
  }));

  out.push_back(guarded("extremum equivalence", [&] {
    Sampler s(seed + 4);
    double worst = -HUGE_VAL;
    for (int i = 0; i < samples; ++i) {
      EmitterPair em;
      em.p1 = s.amplitude();
      em.p2 = s.amplitude();
      DetectorAmplitudes g{s.amplitude(), s.amplitude(), s.amplitude(), {}};
      g.b2 = std::conj(std::norm(em.p1) * g.a1 * std::conj(g.b1) / (std::norm(em.p2) * g.a2));
      const ConditionResiduals sup = condition_residuals(em, g);
      if (sup.amplitude < 1e-10 && sup.phase < 1e-8) {
        worst = std::max(worst, 1.0 - 1e-6 - g2_from_amplitudes(em, g));
      } else {
        worst = std::max(worst, 1.0);
      }
      g.b2 = -g.a2 * g.b1 / g.a1;
      if (condition_residuals(em, g).subradiance < 1e-10) {
        worst = std::max(worst, g2_from_amplitudes(em, g) - 1e-6);
      } else {
        worst = std::max(worst, 1.0);
      }
    }
    return CheckResult{"extremum equivalence", worst <= 0.0, fmt("worst margin: %.3g", worst)};
  }));

  out.push_back(guarded("CDOS-LDOS inequality", [&] {
    return sampled("CDOS-LDOS inequality", samples, seed + 5,
                   [](Sampler& s, const SystemFactorization& f) {
                     const Vec2 r1 = s.point(2.5 * kTwoPi), r2 = s.point(2.5 * kTwoPi);
                     const double res = cdos_bound_residual(f, r1, r2, s.unit(), s.unit());
                     const double ldos = im_green_projected(f, r1, r1, {1, 0}, {1, 0});
                     return std::max(-res - 1e-10, -ldos - 1e-12);
                   },
                   "worst bound violation: %.3g");
  }));

  out.push_back(guarded("reciprocity", [&] {
    return sampled("reciprocity", std::max(samples / 10, 20), seed + 6,
                   [](Sampler& s, const SystemFactorization& f) {
                     const Vec2 r = s.point(2.5 * kTwoPi), rp = s.point(2.5 * kTwoPi);
                     const GreenValue a = total_green(f, r, rp), b = total_green(f, rp, r);
                     return (a.tensor - b.tensor.transpose()).norm() - 1e-10 * a.tensor.norm();
                   },
                   "worst asymmetry beyond 1e-10 relative: %.3g");
  }));

  out.push_back(guarded("optical theorem", [&] {
    double worst = 0.0;
    for (PolMode mode : {PolMode::TM, PolMode::TE}) {
      for (int i = 0; i < 20; ++i) {
        const double a = (i % 2 ? -1.0 : 1.0) * std::pow(10.0, -2.0 + 4.0 * i / 19.0);
        const ScatteringBalance b =
            single_scatterer_balance(dress_polarizability(a, mode, 1.0), mode, 1e6, 64);
        worst = std::max(worst, std::abs(b.scattered - b.extinction) / b.extinction);
      }
    }
    return CheckResult{"optical theorem", worst <= 1e-10,
                       fmt("worst relative imbalance: %.3g (limit 1e-10)", worst)};
  }));

  out.push_back(guarded("free-space closed form", [&] {
    Medium2D vacuum;
    vacuum.mode = PolMode::TM;
    const SystemFactorization f = assemble(vacuum);
    EmitterPair em;
    double worst = std::abs(big_g2(f, em) - 1.0);
    for (int i = 1; i <= 100; ++i) {
      const double d = 0.15 * i;
      em.r2 = {d, 0.0};
      const double j0 = std::cyl_bessel_j(0.0, d);
      worst = std::max(worst, std::abs(big_g2(f, em) - 0.5 * (1.0 + j0 * j0)));
    }
    return CheckResult{"free-space closed form", worst <= 1e-10,
                       fmt("worst deviation: %.3g (limit 1e-10)", worst)};
  }));

  out.push_back(guarded("far-field identity", [&] {
    Sampler s(seed + 7);
    const double half = 2.0 * kTwoPi;
    const Medium2D m = generate_medium(seed + 7, 20, {-half, -half, 2 * half, 2 * half}, 1.5,
                                       0.05 * kTwoPi, PolMode::TE);
    const SystemFactorization f = assemble(m);
    const EmitterPair em = s.pair();
    const double quad = farfield_power_check(f, em, 1, 1e3, 2048);
    const double exact = p1_integrated(f, em);
    const double rel = std::abs(quad - exact) / exact;
    return CheckResult{"far-field identity", rel <= 0.01,
                       fmt("order-1 relative error: %.3g (limit 0.01)", rel)};
  }));

  out.push_back(guarded("map determinism", [&] {
    Sampler s(seed + 8);
    Medium2D m = s.medium();
    const SystemFactorization f = assemble(m);
    const GridSpec grid{{-2.5 * kTwoPi, -2.5 * kTwoPi}, 5 * kTwoPi, 5 * kTwoPi, 23, 19};
    const MapGrid a = g2_map(f, {{0.1, 0.2}}, {}, grid, {1});
    const MapGrid b = g2_map(f, {{0.1, 0.2}}, {}, grid, {std::max(threads, 4)});
    bool same = true;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      same = same && std::bit_cast<std::uint64_t>(a.values[i]) == std::bit_cast<std::uint64_t>(b.values[i]);
    }
    return CheckResult{"map determinism", same, same ? "bit-identical across thread counts"
                                                     : "rasters differ across thread counts"};
  }));

  return out;
}

}  // namespace cohscat::cli
