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

// Test-only reference computations. Nothing here calls into the library's
// Bessel code, so each oracle stays independent of the path it checks.

#include <quadmath.h>

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "cohscat/em2d.hpp"
#include "cohscat/geometry.hpp"

namespace oracle {

using quad = __float128;

/// J0, J1, Y0, Y1 by ascending series in 113-bit arithmetic. Accurate to
/// well below 1e-15 relative to the Hankel modulus for 0 < x <= 35.
struct QuadBessel {
  double j0, j1, y0, y1;
};

inline QuadBessel bessel_series(double xd) {
  const quad x = xd;
  const quad q = x * x / 4;
  const quad gamma = 0.5772156649015328606065120900824024Q;
  const quad pi = M_PIq;
  quad t0 = 1, t1 = 1, j0 = 1, s1 = 1, y0s = 0, y1s = -2 * gamma + 1, h = 0;
  for (int k = 1; k < 400; ++k) {
    t0 *= -q / (quad(k) * k);
    t1 *= -q / (quad(k) * (k + 1));
    const quad h_next = h + quad(1) / k + quad(1) / (k + 1);
    h += quad(1) / k;
    j0 += t0;
    s1 += t1;
    y0s -= h * t0;
    y1s += (-2 * gamma + h + h_next) * t1;
    if (fabsq(t0) < 1e-40Q && fabsq(t1) < 1e-40Q && k > 4) break;
  }
  const quad lg = logq(x / 2);
  const quad j1 = x / 2 * s1;
  const quad y0 = 2 / pi * ((lg + gamma) * j0 + y0s);
  const quad y1 = -2 / (pi * x) + 2 / pi * lg * j1 - x / (2 * pi) * y1s;
  return {double(j0), double(j1), double(y0), double(y1)};
}

inline double j0(double x) { return bessel_series(x).j0; }

/// First zero of J0 by bisection on the quad-precision series.
inline double first_j0_zero() {
  quad lo = 2.0Q, hi = 3.0Q;
  for (int i = 0; i < 200; ++i) {
    const quad mid = (lo + hi) / 2;
    if (bessel_series(double(mid)).j0 > 0) lo = mid; else hi = mid;
    if (hi - lo < 1e-17Q) break;
  }
  return double((lo + hi) / 2);
}

inline std::complex<double> h0(double x) {
  const QuadBessel b = bessel_series(x);
  return {b.j0, b.y0};
}

/// Two-scatterer Green function with the multiple-scattering series summed in
/// closed form: x1 = (I - a1 a2 G12 G21)^-1 (G0(r1,rp) + a2 G12 G0(r2,rp)).
inline Eigen::Matrix2cd two_scatterer_green(cohscat::PolMode mode, cohscat::Vec2 s1,
                                            std::complex<double> a1, cohscat::Vec2 s2,
                                            std::complex<double> a2, cohscat::Vec2 r,
                                            cohscat::Vec2 rp) {
  using cohscat::green0;
  auto g = [mode](cohscat::Vec2 a, cohscat::Vec2 b) -> Eigen::Matrix2cd {
    Eigen::Matrix2cd t = green0(mode, 1.0, a, b).tensor;
    if (mode == cohscat::PolMode::TM) t(1, 1) = t(0, 0);  // scalar as c * I
    return t;
  };
  const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd g12 = g(s1, s2), g21 = g(s2, s1);
  const Eigen::Matrix2cd x1 = (I - a1 * a2 * g12 * g21).inverse() * (g(s1, rp) + a2 * g12 * g(s2, rp));
  const Eigen::Matrix2cd x2 = g(s2, rp) + a1 * g21 * x1;
  Eigen::Matrix2cd out = g(r, rp) + a1 * g(r, s1) * x1 + a2 * g(r, s2) * x2;
  if (mode == cohscat::PolMode::TM) out(1, 1) = 0.0;
  return out;
}

inline double rel_diff(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return (a - b).norm() / b.norm();
}

inline cohscat::Vec2 random_point(std::mt19937_64& rng, const cohscat::Region& r) {
  std::uniform_real_distribution<double> ux(r.x0, r.x0 + r.width), uy(r.y0, r.y0 + r.height);
  const double x = ux(rng);
  return {x, uy(rng)};
}

inline cohscat::Vec2 random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(0.0, cohscat::kTwoPi);
  return cohscat::unit_from_angle(a(rng));
}

}  // namespace oracle
