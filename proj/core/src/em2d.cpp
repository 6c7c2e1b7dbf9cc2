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

#include "cohscat/em2d.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cohscat/errors.hpp"
#include "cohscat/specfun.hpp"

namespace cohscat {
namespace {

constexpr std::complex<double> kQuarterI(0.0, 0.25);

// G = (i/4)[(H0 - H1/x) I + (2 H1/x - H0) rhat rhat] with x = k rho. This is
// (I + grad grad / k^2) applied to (i/4) H0(k rho), using H0' = -H1 and
// H1' = H0 - H1/x.
Eigen::Matrix2cd te_tensor(double x, Vec2 rhat) {
  const specfun::CylFnPair h = specfun::hankel01(x);
  const std::complex<double> h0 = h.order0.h1();
  const std::complex<double> h1_over_x = h.order1.h1() / x;
  const std::complex<double> transverse = kQuarterI * (h0 - h1_over_x);
  const std::complex<double> outer = kQuarterI * (2.0 * h1_over_x - h0);
  Eigen::Matrix2cd g;
  g(0, 0) = transverse + outer * (rhat.x * rhat.x);
  g(1, 1) = transverse + outer * (rhat.y * rhat.y);
  g(0, 1) = outer * (rhat.x * rhat.y);
  g(1, 0) = g(0, 1);
  return g;
}

}  // namespace

std::string_view to_string(PolMode mode) { return mode == PolMode::TE ? "TE" : "TM"; }

PolMode pol_mode_from_string(std::string_view text) {
  if (text == "TE") return PolMode::TE;
  if (text == "TM") return PolMode::TM;
  throw InvalidInputError("unknown polarization mode '" + std::string(text) +
                          "' (expected TE or TM)");
}

std::complex<double> GreenValue::project(Vec2 e, Vec2 u) const {
  if (mode == PolMode::TM) return tensor(0, 0);
  return e.x * (tensor(0, 0) * u.x + tensor(0, 1) * u.y) +
         e.y * (tensor(1, 0) * u.x + tensor(1, 1) * u.y);
}

namespace detail {

std::complex<double> green0_tm(Vec2 d) {
  return kQuarterI * specfun::hankel01(norm(d)).order0.h1();
}

Eigen::Matrix2cd green0_te(Vec2 d) {
  const double rho = norm(d);
  return te_tensor(rho, (1.0 / rho) * d);
}

}  // namespace detail

GreenValue green0(PolMode mode, double k, Vec2 r, Vec2 rp) {
  if (!(k > 0.0)) throw DomainError("green0: wavenumber must be positive");
  const Vec2 d = r - rp;
  const double rho = norm(d);
  if (rho < kCoincidenceRadius) {
    throw GeometryError("green0: source and observation points coincide");
  }
  GreenValue g;
  g.mode = mode;
  if (mode == PolMode::TM) {
    g.tensor(0, 0) = kQuarterI * specfun::hankel01(k * rho).order0.h1();
  } else {
    g.tensor = te_tensor(k * rho, (1.0 / rho) * d);
  }
  return g;
}

double green0_im_coincident(PolMode mode) { return mode == PolMode::TM ? 0.25 : 0.125; }

Polarizability dress_polarizability(double alpha_bare, PolMode mode, double k) {
  if (alpha_bare == 0.0 || !std::isfinite(alpha_bare)) {
    throw DegenerateScattererError("dress_polarizability: bare polarizability must be nonzero");
  }
  if (!(k > 0.0)) throw DomainError("dress_polarizability: wavenumber must be positive");
  // With mu0 omega^2 = 1 the radiative correction does not depend on k in 2D.
  const double im_g0 = green0_im_coincident(mode);
  const std::complex<double> alpha =
      alpha_bare / (1.0 - std::complex<double>(0.0, im_g0 * alpha_bare));
  return {alpha_bare, alpha};
}

ScatteringBalance single_scatterer_balance(const Polarizability& pol, PolMode mode,
                                           double radius, int n_angles) {
  if (n_angles < 3) throw InvalidInputError("single_scatterer_balance: need at least 3 angles");
  // E0 = e^{ix} e, e = y-hat in TE; at the origin E0 = e.
  const Vec2 e0{0.0, 1.0};
  const std::complex<double> p = pol.alpha;

  ScatteringBalance balance;
  balance.extinction = std::imag(p);  // Im(conj(E0) . p), |E0| = 1

  const double weight = radius * 2.0 * std::numbers::pi / n_angles;
  double sum = 0.0;
  for (int i = 0; i < n_angles; ++i) {
    const Vec2 s = radius * unit_from_angle(2.0 * std::numbers::pi * i / n_angles);
    if (mode == PolMode::TM) {
      sum += std::norm(detail::green0_tm(s) * p);
    } else {
      const Eigen::Vector2cd field = detail::green0_te(s) * Eigen::Vector2cd(e0.x * p, e0.y * p);
      sum += field.squaredNorm();
    }
  }
  balance.scattered = weight * sum;
  return balance;
}

}  // namespace cohscat
