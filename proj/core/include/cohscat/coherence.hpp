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

#include "cohscat/geometry.hpp"
#include "cohscat/solver.hpp"

namespace cohscat {

/// Two independent two-level emitters with transition dipoles p_i u_i at r_i.
/// Orientations are ignored in TM.
struct EmitterPair {
  Vec2 r1;
  Vec2 r2;
  Vec2 u1{1.0, 0.0};
  Vec2 u2{1.0, 0.0};
  std::complex<double> p1{1.0, 0.0};
  std::complex<double> p2{1.0, 0.0};
};

/// Point detector selecting polarization e (ignored in TM).
struct Detector {
  Vec2 r;
  Vec2 e{1.0, 0.0};
};

enum class Emission { superradiant, subradiant, intermediate };
std::string_view to_string(Emission e);

/// Default thresholds on 1 - g and g for the classification maps.
inline constexpr double kDefaultTolSuper = 0.05;
inline constexpr double kDefaultTolSub = 0.05;

/// Propagators G_ai = e_a . G(r_a, r_i) . u_i between both emitters and both detectors.
struct DetectorAmplitudes {
  std::complex<double> a1, a2, b1, b2;
};

DetectorAmplitudes detector_amplitudes(const SystemFactorization& fact, const EmitterPair& em,
                                       const Detector& da, const Detector& db);

/// Normalized emitter state after one photon is detected at a:
/// c_ge |ge> + c_eg |eg>, where |ge> has emitter 1 in its ground state.
struct ProjectedState {
  std::complex<double> c_ge;
  std::complex<double> c_eg;
};

struct ConditionResiduals {
  /// Normalized mismatch of |p1|^2 |G_a1 G_b1| and |p2|^2 |G_a2 G_b2|.
  double amplitude = 0.0;
  /// |arg(G_a1 G_b2) - arg(G_a2 G_b1)| wrapped to [0, pi].
  double phase = 0.0;
  /// |G_a1 G_b2 + G_a2 G_b1| / (|G_a1 G_b2| + |G_a2 G_b1|); zero iff g2 = 0.
  double subradiance = 0.0;
};

struct CoherenceReport {
  double g2 = 0.0;
  ConditionResiduals residuals;
  ProjectedState projected;
  Emission classification = Emission::intermediate;
};

// Pure kernels on precomputed propagators.
double g2_from_amplitudes(const EmitterPair& em, const DetectorAmplitudes& g);
ProjectedState projected_state(const EmitterPair& em, std::complex<double> g_a1,
                               std::complex<double> g_a2);
/// g2 as <Psi_a|Phi_1(b)|Psi_a> / <ee|Phi_1(b)|ee>, built from the projected state.
double g2_from_projection(const EmitterPair& em, const DetectorAmplitudes& g);
ConditionResiduals condition_residuals(const EmitterPair& em, const DetectorAmplitudes& g);

/// Second-order correlation for two point detectors. Throws
/// UndefinedCorrelationError when either detector sees no emission.
double g2_detectors(const SystemFactorization& fact, const EmitterPair& em, const Detector& da,
                    const Detector& db);
ProjectedState projected_state(const SystemFactorization& fact, const EmitterPair& em,
                               const Detector& da);
ConditionResiduals condition_residuals(const SystemFactorization& fact, const EmitterPair& em,
                                       const Detector& da, const Detector& db);
CoherenceReport coherence_report(const SystemFactorization& fact, const EmitterPair& em,
                                 const Detector& da, const Detector& db,
                                 double tol_super = kDefaultTolSuper,
                                 double tol_sub = kDefaultTolSub);

/// Projected Im G_jk for the pair: LDOS-type g11, g22 and CDOS-type g12.
struct ImGreenPair {
  double g11 = 0.0;
  double g22 = 0.0;
  double g12 = 0.0;
};

ImGreenPair im_green_pair(const SystemFactorization& fact, const EmitterPair& em);

double big_g2(const EmitterPair& em, const ImGreenPair& im);
double p1_integrated(const EmitterPair& em, const ImGreenPair& im);
double p2_integrated(const EmitterPair& em, const ImGreenPair& im);

/// Correlation factor for detection over all output channels,
/// 2|p1 p2|^2 (ImG11 ImG22 + ImG12^2) / (|p1|^2 ImG11 + |p2|^2 ImG22)^2.
double big_g2(const SystemFactorization& fact, const EmitterPair& em);
/// Integrated one- and two-photon detection probabilities in reduced units
/// (mu0 = omega = 1, radiometric prefactor 1/2).
double p1_integrated(const SystemFactorization& fact, const EmitterPair& em);
double p2_integrated(const SystemFactorization& fact, const EmitterPair& em);

/// Far-field quadrature of the one- (order 1) or two-photon (order 2)
/// detection probability over a circle of the given radius, summed over both
/// in-plane polarizations in TE. Independent check of p1_integrated /
/// p2_integrated. Requires radius >= 1000 and every scatterer and emitter
/// within radius / 2 of the origin, otherwise FarFieldValidityError.
double farfield_power_check(const SystemFactorization& fact, const EmitterPair& em, int order,
                            double radius, int n_angles);

/// sqrt(ImG11 ImG22) - |ImG12|; non-negative in any lossless medium.
double cdos_bound_residual(const SystemFactorization& fact, Vec2 r1, Vec2 r2, Vec2 u1, Vec2 u2);

struct EmissionReport {
  Emission classification = Emission::intermediate;
  double big_g2 = 0.0;
  /// | |p1|^2 ImG11 - |p2|^2 ImG22 |, zero when both emit the same power.
  double power_imbalance = 0.0;
  /// ImG11 ImG22 - ImG12^2, zero when the CDOS is maximal.
  double cdos_deficit = 0.0;
};

Emission classify(double g, double tol_super, double tol_sub);
EmissionReport classify_emission(const EmitterPair& em, const ImGreenPair& im, double tol_super,
                                 double tol_sub);
EmissionReport classify_emission(const SystemFactorization& fact, const EmitterPair& em,
                                 double tol_super = kDefaultTolSuper,
                                 double tol_sub = kDefaultTolSub);

}  // namespace cohscat
