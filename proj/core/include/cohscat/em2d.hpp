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
#include <string_view>

#include <Eigen/Core>

#include "cohscat/geometry.hpp"

namespace cohscat {

/// 2D polarization convention. TE: electric field in the plane, 2x2 tensor
/// Green function. TM: electric field along z, scalar Green function.
enum class PolMode { TM, TE };

std::string_view to_string(PolMode mode);
/// Accepts "TM" or "TE"; throws InvalidInputError otherwise.
PolMode pol_mode_from_string(std::string_view text);

/// Green function value. TM values live in tensor(0,0); the remaining
/// entries are zero.
struct GreenValue {
  PolMode mode = PolMode::TM;
  Eigen::Matrix2cd tensor = Eigen::Matrix2cd::Zero();

  std::complex<double> scalar() const { return tensor(0, 0); }
  /// e . G . u for TE, the scalar for TM.
  std::complex<double> project(Vec2 e, Vec2 u) const;
};

/// Isotropic point-scatterer polarizability: the bare strength and the value
/// dressed with the radiative reaction of its own field.
struct Polarizability {
  double alpha_bare = 0.0;
  std::complex<double> alpha;
};

/// Free-space Green function of (curl curl - k^2) in 2D, normalized so that
/// the scalar part is (i/4) H0(k rho). Throws GeometryError when the points
/// coincide.
GreenValue green0(PolMode mode, double k, Vec2 r, Vec2 rp);

/// Im G0(r, r): 1/4 for TM, 1/8 on each diagonal entry for TE.
double green0_im_coincident(PolMode mode);

/// alpha = alpha_bare / (1 - i ImG0(r,r) alpha_bare), which makes
/// Im(1/alpha) = -ImG0(r,r) exactly (lossless scatterer).
Polarizability dress_polarizability(double alpha_bare, PolMode mode, double k);

/// Power budget of one scatterer at the origin under a unit plane wave
/// travelling along +x (polarized along y in TE). Extinction is Im(E0* . p);
/// scattering is the trapezoidal far-field integral of |E_s|^2 on a circle.
struct ScatteringBalance {
  double extinction = 0.0;
  double scattered = 0.0;
};

ScatteringBalance single_scatterer_balance(const Polarizability& pol, PolMode mode,
                                           double radius, int n_angles);

namespace detail {
// Hot-path free-space kernels in reduced units (k = 1), no coincidence check.
std::complex<double> green0_tm(Vec2 d);
Eigen::Matrix2cd green0_te(Vec2 d);
}  // namespace detail

}  // namespace cohscat
