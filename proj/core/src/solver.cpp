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

#include "cohscat/solver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "cohscat/errors.hpp"

namespace cohscat {

struct SystemFactorization::State {
  Medium2D medium;
  int dimension = 0;
  double condition = 1.0;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
};

namespace {

// Free-space propagator block from rp to r in reduced units.
Eigen::Matrix2cd g0_block(PolMode mode, Vec2 r, Vec2 rp) {
  if (mode == PolMode::TE) return detail::green0_te(r - rp);
  Eigen::Matrix2cd g = Eigen::Matrix2cd::Zero();
  g(0, 0) = detail::green0_tm(r - rp);
  return g;
}

std::string describe(Vec2 p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

// sum_j G0(r, r_j) alpha_j x_j for one exciting-field column.
Eigen::Vector2cd scattered_sum(const Medium2D& medium, const Eigen::VectorXcd& exciting, Vec2 r) {
  Eigen::Vector2cd out = Eigen::Vector2cd::Zero();
  const auto& scatterers = medium.scatterers;
  if (medium.mode == PolMode::TE) {
    for (std::size_t j = 0; j < scatterers.size(); ++j) {
      const Eigen::Vector2cd x = exciting.segment<2>(2 * static_cast<Eigen::Index>(j));
      out += scatterers[j].pol.alpha * (detail::green0_te(r - scatterers[j].position) * x);
    }
  } else {
    for (std::size_t j = 0; j < scatterers.size(); ++j) {
      out(0) += scatterers[j].pol.alpha * detail::green0_tm(r - scatterers[j].position) *
                exciting(static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

}  // namespace

const Medium2D& SystemFactorization::medium() const { return state_->medium; }
PolMode SystemFactorization::mode() const { return state_->medium.mode; }
int SystemFactorization::dimension() const { return state_->dimension; }
double SystemFactorization::condition_estimate() const { return state_->condition; }

SystemFactorization SystemFactorization::assemble(Medium2D medium) {
  auto state = std::make_shared<State>();
  const auto& scatterers = medium.scatterers;
  const int n = static_cast<int>(scatterers.size());
  const int b = medium.block();
  state->dimension = b * n;

  for (int j = 0; j < n; ++j) {
    for (int m = j + 1; m < n; ++m) {
      if (distance(scatterers[j].position, scatterers[m].position) < kCoincidenceRadius) {
        throw GeometryError("assemble: scatterers " + std::to_string(j) + " and " +
                            std::to_string(m) + " share position " +
                            describe(scatterers[j].position));
      }
    }
  }

  if (n > 0) {
    Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Identity(b * n, b * n);
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) {
        if (m == j) continue;
        const Eigen::Matrix2cd g = g0_block(medium.mode, scatterers[j].position,
                                            scatterers[m].position);
        matrix.block(b * j, b * m, b, b) = -scatterers[m].pol.alpha * g.topLeftCorner(b, b);
      }
    }
    state->lu.compute(matrix);
    const double rcond = state->lu.rcond();
    state->condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!std::isfinite(state->condition) ||
        rcond < 4.0 * std::numeric_limits<double>::epsilon()) {
      throw SingularSystemError("assemble: interaction matrix is numerically singular "
                                "(condition estimate " + std::to_string(state->condition) + ")",
                                state->condition);
    }
  }
  state->medium = std::move(medium);
  return SystemFactorization(std::move(state));
}

void SystemFactorization::solve_in_place(Eigen::MatrixXcd& rhs) const {
  if (state_->dimension == 0) return;
  rhs = state_->lu.solve(rhs);
}

void SystemFactorization::check_evaluation_point(Vec2 p) const {
  for (const Scatterer& s : state_->medium.scatterers) {
    if (distance(p, s.position) < kCoincidenceRadius) {
      throw GeometryError("evaluation point " + describe(p) + " coincides with a scatterer");
    }
  }
}

namespace {

// Column c of rhs receives G0(r_j, source) . u for every scatterer j.
void fill_incident(const Medium2D& medium, Eigen::MatrixXcd& rhs, Eigen::Index c, Vec2 source,
                   Vec2 u) {
  const int b = medium.block();
  for (std::size_t j = 0; j < medium.size(); ++j) {
    const Eigen::Index row = b * static_cast<Eigen::Index>(j);
    if (b == 2) {
      rhs.block<2, 1>(row, c) =
          detail::green0_te(medium.scatterers[j].position - source) * Eigen::Vector2cd(u.x, u.y);
    } else {
      rhs(row, c) = detail::green0_tm(medium.scatterers[j].position - source);
    }
  }
}

}  // namespace

std::vector<DipoleField> SystemFactorization::radiate(Vec2 source,
                                                     std::span<const Vec2> orientations) const {
  check_evaluation_point(source);
  const auto columns = static_cast<Eigen::Index>(orientations.size());
  Eigen::MatrixXcd rhs(state_->dimension, columns);
  for (Eigen::Index c = 0; c < columns; ++c) {
    fill_incident(state_->medium, rhs, c, source, orientations[static_cast<std::size_t>(c)]);
  }
  const Eigen::MatrixXcd incident = rhs;
  solve_in_place(rhs);
  std::vector<DipoleField> fields;
  fields.reserve(orientations.size());
  for (Eigen::Index c = 0; c < columns; ++c) {
    fields.push_back(DipoleField(state_, source, orientations[static_cast<std::size_t>(c)],
                                 incident.col(c), rhs.col(c)));
  }
  return fields;
}

std::vector<DipoleField> SystemFactorization::radiate_from(std::span<const Vec2> sources,
                                                          Vec2 orientation) const {
  for (Vec2 s : sources) check_evaluation_point(s);
  const auto columns = static_cast<Eigen::Index>(sources.size());
  Eigen::MatrixXcd rhs(state_->dimension, columns);
  for (Eigen::Index c = 0; c < columns; ++c) {
    fill_incident(state_->medium, rhs, c, sources[static_cast<std::size_t>(c)], orientation);
  }
  const Eigen::MatrixXcd incident = rhs;
  solve_in_place(rhs);
  std::vector<DipoleField> fields;
  fields.reserve(sources.size());
  for (Eigen::Index c = 0; c < columns; ++c) {
    fields.push_back(DipoleField(state_, sources[static_cast<std::size_t>(c)], orientation,
                                 incident.col(c), rhs.col(c)));
  }
  return fields;
}

DipoleField SystemFactorization::radiate(Vec2 source, Vec2 orientation) const {
  return std::move(radiate(source, std::span<const Vec2>(&orientation, 1)).front());
}

PolMode DipoleField::mode() const { return state_->medium.mode; }

Eigen::Vector2cd DipoleField::scattered_at(Vec2 r) const {
  return scattered_sum(state_->medium, exciting_, r);
}

Eigen::Vector2cd DipoleField::at(Vec2 r) const {
  const Medium2D& medium = state_->medium;
  if (distance(r, source_) < kCoincidenceRadius) {
    throw GeometryError("field evaluated at its own source " + describe(r));
  }
  for (const Scatterer& s : medium.scatterers) {
    if (distance(r, s.position) < kCoincidenceRadius) {
      throw GeometryError("evaluation point " + describe(r) + " coincides with a scatterer");
    }
  }
  Eigen::Vector2cd direct;
  if (medium.mode == PolMode::TE) {
    direct = detail::green0_te(r - source_) * Eigen::Vector2cd(orientation_.x, orientation_.y);
  } else {
    direct << detail::green0_tm(r - source_), 0.0;
  }
  return direct + scattered_sum(medium, exciting_, r);
}

FieldProbe SystemFactorization::probe(Vec2 r, Vec2 e) const {
  check_evaluation_point(r);
  const Medium2D& medium = state_->medium;
  FieldProbe p;
  p.r_ = r;
  p.e_ = e;
  p.weights_.resize(state_->dimension);
  for (std::size_t j = 0; j < medium.size(); ++j) {
    const auto& s = medium.scatterers[j];
    if (medium.mode == PolMode::TE) {
      const Eigen::RowVector2cd row =
          s.pol.alpha * (Eigen::RowVector2cd(e.x, e.y) * detail::green0_te(r - s.position));
      p.weights_.segment<2>(2 * static_cast<Eigen::Index>(j)) = row.transpose();
    } else {
      p.weights_(static_cast<Eigen::Index>(j)) = s.pol.alpha * detail::green0_tm(r - s.position);
    }
  }
  return p;
}

std::complex<double> DipoleField::projected(const FieldProbe& probe) const {
  if (distance(probe.r_, source_) < kCoincidenceRadius) {
    throw GeometryError("field evaluated at its own source " + describe(probe.r_));
  }
  const Vec2 d = probe.r_ - source_;
  std::complex<double> direct;
  if (state_->medium.mode == PolMode::TE) {
    direct = (Eigen::RowVector2cd(probe.e_.x, probe.e_.y) * detail::green0_te(d) *
              Eigen::Vector2cd(orientation_.x, orientation_.y))(0);
  } else {
    direct = detail::green0_tm(d);
  }
  return direct + probe.weights_.cwiseProduct(exciting_).sum();
}

std::complex<double> DipoleField::self_scattered() const {
  const Medium2D& medium = state_->medium;
  const int b = medium.block();
  std::complex<double> sum = 0.0;
  for (std::size_t j = 0; j < medium.size(); ++j) {
    const Eigen::Index row = b * static_cast<Eigen::Index>(j);
    std::complex<double> bx = incident_(row) * exciting_(row);
    if (b == 2) bx += incident_(row + 1) * exciting_(row + 1);
    sum += medium.scatterers[j].pol.alpha * bx;
  }
  return sum;
}

std::complex<double> DipoleField::projected(Vec2 r, Vec2 e) const {
  const Eigen::Vector2cd f = at(r);
  if (state_->medium.mode == PolMode::TM) return f(0);
  return e.x * f(0) + e.y * f(1);
}

GreenValue total_green(const SystemFactorization& fact, Vec2 r, Vec2 rp) {
  if (distance(r, rp) < kCoincidenceRadius) {
    throw GeometryError("total_green: source and observation points coincide");
  }
  fact.check_evaluation_point(r);
  GreenValue g;
  g.mode = fact.mode();
  if (fact.mode() == PolMode::TM) {
    g.tensor(0, 0) = fact.radiate(rp, {1.0, 0.0}).at(r)(0);
  } else {
    // Two columns: unit dipoles along x and y at rp.
    const Vec2 basis[] = {{1.0, 0.0}, {0.0, 1.0}};
    const std::vector<DipoleField> fields = fact.radiate(rp, basis);
    g.tensor.col(0) = fields[0].at(r);
    g.tensor.col(1) = fields[1].at(r);
  }
  return g;
}

double im_green_projected(const DipoleField& field, Vec2 r_j, Vec2 u_j) {
  const PolMode mode = field.mode();
  if (distance(r_j, field.source()) < kCoincidenceRadius) {
    if (mode == PolMode::TM) return green0_im_coincident(mode) + field.self_scattered().imag();
    if (u_j == field.orientation()) {
      return green0_im_coincident(mode) + field.self_scattered().imag();
    }
    const Eigen::Vector2cd s = field.scattered_at(r_j);
    return green0_im_coincident(mode) * dot(u_j, field.orientation()) +
           (u_j.x * s(0) + u_j.y * s(1)).imag();
  }
  return field.projected(r_j, u_j).imag();
}

double im_green_projected(const DipoleField& field, const FieldProbe& probe) {
  if (distance(probe.point(), field.source()) < kCoincidenceRadius) {
    return im_green_projected(field, probe.point(), probe.polarization());
  }
  return field.projected(probe).imag();
}

double im_green_projected(const SystemFactorization& fact, Vec2 r_j, Vec2 r_k, Vec2 u_j,
                          Vec2 u_k) {
  fact.check_evaluation_point(r_j);
  return im_green_projected(fact.radiate(r_k, u_k), r_j, u_j);
}

}  // namespace cohscat
