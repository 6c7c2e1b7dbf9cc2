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

#include "cohscat/coherence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cohscat/errors.hpp"

namespace cohscat {
namespace {

constexpr double kUnitTolerance = 1e-9;

void check_unit(Vec2 v, const char* what) {
  if (std::abs(norm(v) - 1.0) > kUnitTolerance) {
    throw InvalidInputError(std::string(what) + " must be a unit vector");
  }
}

void validate(const SystemFactorization& fact, const EmitterPair& em) {
  if (em.p1 == 0.0 && em.p2 == 0.0) {
    throw InvalidInputError("emitter amplitudes p1 and p2 are both zero");
  }
  if (fact.mode() == PolMode::TE) {
    check_unit(em.u1, "emitter orientation u1");
    check_unit(em.u2, "emitter orientation u2");
  }
}

void validate(const SystemFactorization& fact, const Detector& d) {
  if (fact.mode() == PolMode::TE) check_unit(d.e, "detector polarization");
}

double single_detection(const EmitterPair& em, std::complex<double> g1, std::complex<double> g2) {
  return std::norm(em.p1 * g1) + std::norm(em.p2 * g2);
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw UndefinedCorrelationError(std::string(what) + " vanishes; correlation undefined");
  }
}

}  // namespace

std::string_view to_string(Emission e) {
  switch (e) {
    case Emission::superradiant: return "superradiant";
    case Emission::subradiant: return "subradiant";
    case Emission::intermediate: return "intermediate";
  }
  return "intermediate";
}

DetectorAmplitudes detector_amplitudes(const SystemFactorization& fact, const EmitterPair& em,
                                       const Detector& da, const Detector& db) {
  validate(fact, em);
  validate(fact, da);
  validate(fact, db);
  const DipoleField f1 = fact.radiate(em.r1, em.u1);
  const DipoleField f2 = fact.radiate(em.r2, em.u2);
  return {f1.projected(da.r, da.e), f2.projected(da.r, da.e), f1.projected(db.r, db.e),
          f2.projected(db.r, db.e)};
}

double g2_from_amplitudes(const EmitterPair& em, const DetectorAmplitudes& g) {
  const double phi1_a = single_detection(em, g.a1, g.a2);
  const double phi1_b = single_detection(em, g.b1, g.b2);
  require_positive(phi1_a, "single-detection probability at detector a");
  require_positive(phi1_b, "single-detection probability at detector b");
  const double phi2 = std::norm(em.p1 * em.p2) * std::norm(g.a1 * g.b2 + g.a2 * g.b1);
  return phi2 / (phi1_a * phi1_b);
}

ProjectedState projected_state(const EmitterPair& em, std::complex<double> g_a1,
                               std::complex<double> g_a2) {
  const double norm2 = single_detection(em, g_a1, g_a2);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw UndefinedCorrelationError("projected state undefined: no emission reaches detector a");
  }
  const double n = std::sqrt(norm2);
  return {em.p1 * g_a1 / n, em.p2 * g_a2 / n};
}

double g2_from_projection(const EmitterPair& em, const DetectorAmplitudes& g) {
  const ProjectedState psi = projected_state(em, g.a1, g.a2);
  // E_b |ge> = p2 G_b2 |gg>, E_b |eg> = p1 G_b1 |gg>.
  const double conditional = std::norm(psi.c_ge * em.p2 * g.b2 + psi.c_eg * em.p1 * g.b1);
  const double unconditional = single_detection(em, g.b1, g.b2);
  require_positive(unconditional, "single-detection probability at detector b");
  return conditional / unconditional;
}

ConditionResiduals condition_residuals(const EmitterPair& em, const DetectorAmplitudes& g) {
  require_positive(single_detection(em, g.a1, g.a2), "single-detection probability at detector a");
  require_positive(single_detection(em, g.b1, g.b2), "single-detection probability at detector b");

  ConditionResiduals r;
  const double side1 = std::norm(em.p1) * std::abs(g.a1 * g.b1);
  const double side2 = std::norm(em.p2) * std::abs(g.a2 * g.b2);
  r.amplitude = (side1 + side2) > 0.0 ? std::abs(side1 - side2) / (side1 + side2) : 0.0;

  const std::complex<double> path_12 = g.a1 * g.b2;
  const std::complex<double> path_21 = g.a2 * g.b1;
  r.phase = std::abs(std::arg(path_12 * std::conj(path_21)));

  const double scale = std::abs(path_12) + std::abs(path_21);
  r.subradiance = scale > 0.0 ? std::abs(path_12 + path_21) / scale : 0.0;
  return r;
}

double g2_detectors(const SystemFactorization& fact, const EmitterPair& em, const Detector& da,
                    const Detector& db) {
  return g2_from_amplitudes(em, detector_amplitudes(fact, em, da, db));
}

ProjectedState projected_state(const SystemFactorization& fact, const EmitterPair& em,
                               const Detector& da) {
  validate(fact, em);
  validate(fact, da);
  const std::complex<double> g_a1 = fact.radiate(em.r1, em.u1).projected(da.r, da.e);
  const std::complex<double> g_a2 = fact.radiate(em.r2, em.u2).projected(da.r, da.e);
  return projected_state(em, g_a1, g_a2);
}

ConditionResiduals condition_residuals(const SystemFactorization& fact, const EmitterPair& em,
                                       const Detector& da, const Detector& db) {
  return condition_residuals(em, detector_amplitudes(fact, em, da, db));
}

CoherenceReport coherence_report(const SystemFactorization& fact, const EmitterPair& em,
                                 const Detector& da, const Detector& db, double tol_super,
                                 double tol_sub) {
  const DetectorAmplitudes g = detector_amplitudes(fact, em, da, db);
  CoherenceReport report;
  report.g2 = g2_from_amplitudes(em, g);
  report.residuals = condition_residuals(em, g);
  report.projected = projected_state(em, g.a1, g.a2);
  report.classification = classify(report.g2, tol_super, tol_sub);
  return report;
}

ImGreenPair im_green_pair(const SystemFactorization& fact, const EmitterPair& em) {
  validate(fact, em);
  const DipoleField f1 = fact.radiate(em.r1, em.u1);
  const DipoleField f2 = fact.radiate(em.r2, em.u2);
  ImGreenPair im;
  im.g11 = im_green_projected(f1, em.r1, em.u1);
  im.g22 = im_green_projected(f2, em.r2, em.u2);
  im.g12 = im_green_projected(f2, em.r1, em.u1);
  return im;
}

double p1_integrated(const EmitterPair& em, const ImGreenPair& im) {
  return 0.5 * (std::norm(em.p1) * im.g11 + std::norm(em.p2) * im.g22);
}

double p2_integrated(const EmitterPair& em, const ImGreenPair& im) {
  return 0.5 * std::norm(em.p1 * em.p2) * (im.g11 * im.g22 + im.g12 * im.g12);
}

double big_g2(const EmitterPair& em, const ImGreenPair& im) {
  const double emitted = std::norm(em.p1) * im.g11 + std::norm(em.p2) * im.g22;
  require_positive(emitted, "integrated emission");
  return 2.0 * std::norm(em.p1 * em.p2) * (im.g11 * im.g22 + im.g12 * im.g12) /
         (emitted * emitted);
}

double big_g2(const SystemFactorization& fact, const EmitterPair& em) {
  return big_g2(em, im_green_pair(fact, em));
}

double p1_integrated(const SystemFactorization& fact, const EmitterPair& em) {
  return p1_integrated(em, im_green_pair(fact, em));
}

double p2_integrated(const SystemFactorization& fact, const EmitterPair& em) {
  return p2_integrated(em, im_green_pair(fact, em));
}

double farfield_power_check(const SystemFactorization& fact, const EmitterPair& em, int order,
                            double radius, int n_angles) {
  if (order != 1 && order != 2) {
    throw InvalidInputError("farfield_power_check: order must be 1 or 2");
  }
  if (n_angles < 3) throw InvalidInputError("farfield_power_check: need at least 3 angles");
  if (!(radius >= 1e3)) {
    throw FarFieldValidityError("farfield_power_check: k * radius must be at least 1000");
  }
  const double inner = 0.5 * radius;
  auto inside = [inner](Vec2 p) { return norm(p) <= inner; };
  if (!inside(em.r1) || !inside(em.r2)) {
    throw FarFieldValidityError("farfield_power_check: emitters must lie within radius / 2");
  }
  for (const Scatterer& s : fact.medium().scatterers) {
    if (!inside(s.position)) {
      throw FarFieldValidityError("farfield_power_check: scatterers must lie within radius / 2");
    }
  }
  validate(fact, em);

  const DipoleField f1 = fact.radiate(em.r1, em.u1);
  const DipoleField f2 = fact.radiate(em.r2, em.u2);

  // One channel per (angle, polarization): radial and tangential in TE.
  const int n_pol = fact.mode() == PolMode::TE ? 2 : 1;
  std::vector<std::array<std::complex<double>, 2>> channels;
  channels.reserve(static_cast<std::size_t>(n_angles * n_pol));
  for (int i = 0; i < n_angles; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / n_angles;
    const Vec2 radial = unit_from_angle(theta);
    const Vec2 s = radius * radial;
    const Eigen::Vector2cd e1 = f1.at(s);
    const Eigen::Vector2cd e2 = f2.at(s);
    if (n_pol == 1) {
      channels.push_back({e1(0), e2(0)});
    } else {
      const Vec2 tangential{-radial.y, radial.x};
      for (Vec2 e : {radial, tangential}) {
        channels.push_back({e.x * e1(0) + e.y * e1(1), e.x * e2(0) + e.y * e2(1)});
      }
    }
  }

  const double weight = radius * 2.0 * std::numbers::pi / n_angles;
  if (order == 1) {
    double sum = 0.0;
    for (const auto& c : channels) sum += std::norm(em.p1 * c[0]) + std::norm(em.p2 * c[1]);
    return 0.5 * weight * sum;
  }
  double sum = 0.0;
  for (const auto& a : channels) {
    double row = 0.0;
    for (const auto& b : channels) row += std::norm(a[0] * b[1] + a[1] * b[0]);
    sum += row;
  }
  return 0.25 * std::norm(em.p1 * em.p2) * weight * weight * sum;
}

double cdos_bound_residual(const SystemFactorization& fact, Vec2 r1, Vec2 r2, Vec2 u1, Vec2 u2) {
  EmitterPair em;
  em.r1 = r1;
  em.r2 = r2;
  em.u1 = u1;
  em.u2 = u2;
  const ImGreenPair im = im_green_pair(fact, em);
  return std::sqrt(std::max(0.0, im.g11 * im.g22)) - std::abs(im.g12);
}

Emission classify(double g, double tol_super, double tol_sub) {
  if (1.0 - g <= tol_super) return Emission::superradiant;
  if (g <= tol_sub) return Emission::subradiant;
  return Emission::intermediate;
}

EmissionReport classify_emission(const EmitterPair& em, const ImGreenPair& im, double tol_super,
                                 double tol_sub) {
  EmissionReport report;
  report.big_g2 = big_g2(em, im);
  report.classification = classify(report.big_g2, tol_super, tol_sub);
  report.power_imbalance = std::abs(std::norm(em.p1) * im.g11 - std::norm(em.p2) * im.g22);
  report.cdos_deficit = im.g11 * im.g22 - im.g12 * im.g12;
  return report;
}

EmissionReport classify_emission(const SystemFactorization& fact, const EmitterPair& em,
                                 double tol_super, double tol_sub) {
  return classify_emission(em, im_green_pair(fact, em), tol_super, tol_sub);
}

}  // namespace cohscat
