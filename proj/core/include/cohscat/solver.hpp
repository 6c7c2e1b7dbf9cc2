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
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cohscat/em2d.hpp"
#include "cohscat/geometry.hpp"

namespace cohscat {

struct Scatterer {
  Vec2 position;
  Polarizability pol;
};

/// How a random medium was drawn (see generate_medium).
struct GenerationInfo {
  std::uint64_t seed = 0;
  int n_scatterers = 0;
  Region region;
  double alpha_bare = 0.0;
  double exclusion_radius = 0.0;
};

/// Set of point scatterers in a homogeneous background. Positions are in
/// reduced units (k = 1); the wavelength is only a label for reports.
struct Medium2D {
  PolMode mode = PolMode::TE;
  double wavelength_nm = 698.0;
  std::vector<Scatterer> scatterers;
  std::optional<GenerationInfo> generation;

  std::size_t size() const { return scatterers.size(); }
  int block() const { return mode == PolMode::TE ? 2 : 1; }
};

/// Condition estimates above this flag the system as ill-conditioned.
inline constexpr double kConditionWarning = 1e12;

class DipoleField;
class FieldProbe;

/// Factorized Foldy-Lax interaction matrix of a medium.
///
/// The matrix has identity diagonal blocks and blocks -alpha_m G0(r_j, r_m)
/// off the diagonal. It is factorized once by partial-pivoting LU and then
/// shared by every source point; all members are const and safe to call from
/// concurrent threads.
class SystemFactorization {
 public:
  /// Throws GeometryError for duplicate scatterers and SingularSystemError when
  /// the factorization is numerically singular.
  static SystemFactorization assemble(Medium2D medium);

  const Medium2D& medium() const;
  PolMode mode() const;
  int dimension() const;
  /// Reciprocal of the LU-based 1-norm rcond estimate; 1 for an empty medium.
  double condition_estimate() const;
  bool ill_conditioned() const { return condition_estimate() > kConditionWarning; }

  /// Field G(r, source) . orientation radiated by a unit dipole inside the
  /// medium. One triangular solve; the result can be evaluated anywhere.
  DipoleField radiate(Vec2 source, Vec2 orientation) const;
  /// Same for several orientations at one source, batched into one solve.
  std::vector<DipoleField> radiate(Vec2 source, std::span<const Vec2> orientations) const;
  /// One orientation at several sources, batched into one solve. Map scans
  /// use this with fixed-size blocks of pixels.
  std::vector<DipoleField> radiate_from(std::span<const Vec2> sources, Vec2 orientation) const;

  /// Precomputes the scattered-field weights seen at r along e, so that many
  /// fields can then be projected there in O(N) without Green evaluations.
  FieldProbe probe(Vec2 r, Vec2 e) const;

  /// Solves M x = rhs in place for a batch of right-hand sides.
  void solve_in_place(Eigen::MatrixXcd& rhs) const;

  /// Throws GeometryError if p lies on a scatterer.
  void check_evaluation_point(Vec2 p) const;

 private:
  struct State;
  explicit SystemFactorization(std::shared_ptr<const State> state) : state_(std::move(state)) {}

  std::shared_ptr<const State> state_;

  friend class DipoleField;
};

/// Field of one dipole source in a factorized medium.
class DipoleField {
 public:
  Vec2 source() const { return source_; }
  Vec2 orientation() const { return orientation_; }
  PolMode mode() const;

  /// G(r, source) . u. TM fields are returned in component 0.
  Eigen::Vector2cd at(Vec2 r) const;
  /// e . G(r, source) . u (TM: the scalar).
  std::complex<double> projected(Vec2 r, Vec2 e) const;
  /// Scattered part of the field only. Finite at r = source.
  Eigen::Vector2cd scattered_at(Vec2 r) const;
  /// e . G(r, source) . u with r and e taken from the probe.
  std::complex<double> projected(const FieldProbe& probe) const;
  /// u . G_s(source, source) . u, reusing the incident vector (G0 is symmetric).
  std::complex<double> self_scattered() const;

 private:
  friend class SystemFactorization;
  DipoleField(std::shared_ptr<const SystemFactorization::State> state, Vec2 source,
              Vec2 orientation, Eigen::VectorXcd incident, Eigen::VectorXcd exciting)
      : state_(std::move(state)),
        source_(source),
        orientation_(orientation),
        incident_(std::move(incident)),
        exciting_(std::move(exciting)) {}

  std::shared_ptr<const SystemFactorization::State> state_;
  Vec2 source_;
  Vec2 orientation_;
  Eigen::VectorXcd incident_;  // direct field of the source at each scatterer
  Eigen::VectorXcd exciting_;  // field exciting each scatterer
};

/// Observation point and polarization with precomputed scattering weights.
class FieldProbe {
 public:
  Vec2 point() const { return r_; }
  Vec2 polarization() const { return e_; }

 private:
  friend class SystemFactorization;
  friend class DipoleField;
  Vec2 r_;
  Vec2 e_;
  Eigen::VectorXcd weights_;  // e . G0(r, r_j) alpha_j, per component
};

inline SystemFactorization assemble(Medium2D medium) {
  return SystemFactorization::assemble(std::move(medium));
}

/// Full Green function of the medium,
/// G(r, rp) = G0(r, rp) + sum_j G0(r, r_j) alpha_j x_j with M x = [G0(r_j, rp)].
GreenValue total_green(const SystemFactorization& fact, Vec2 r, Vec2 rp);

/// u_j . Im G(r_j, r_k) . u_k. For r_j = r_k the free-space part is replaced by
/// its finite imaginary limit, so this is the LDOS-type quantity there.
double im_green_projected(const SystemFactorization& fact, Vec2 r_j, Vec2 r_k, Vec2 u_j,
                          Vec2 u_k);
/// Same quantity from an already radiated field (source r_k, orientation u_k).
double im_green_projected(const DipoleField& field, Vec2 r_j, Vec2 u_j);
/// Same with r_j and u_j taken from a probe.
double im_green_projected(const DipoleField& field, const FieldProbe& probe);

}  // namespace cohscat
