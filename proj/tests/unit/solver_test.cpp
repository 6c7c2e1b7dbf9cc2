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
#include <random>

#include "cohscat/errors.hpp"
#include "cohscat/scan.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cohscat;
using cd = std::complex<double>;

namespace {

Medium2D make_medium(PolMode mode, std::initializer_list<std::pair<Vec2, double>> items) {
  Medium2D m;
  m.mode = mode;
  for (const auto& [p, a] : items) m.scatterers.push_back({p, dress_polarizability(a, mode, 1.0)});
  return m;
}

// Random medium in a 4-wavelength box; positions in reduced units.
Medium2D random_medium(std::uint64_t seed, int n, PolMode mode, double alpha_bare = 1.5) {
  return generate_medium(seed, n, {-12.5, -12.5, 25.0, 25.0}, alpha_bare, 0.3, mode);
}

}  // namespace

TEST_CASE("empty medium reproduces free space exactly") {
  for (PolMode mode : {PolMode::TM, PolMode::TE}) {
    const SystemFactorization fact = assemble(Medium2D{mode});
    CHECK(fact.dimension() == 0);
    CHECK(fact.condition_estimate() == 1.0);
    const Vec2 r{1.0, 2.0}, rp{-0.5, 0.3};
    CHECK(total_green(fact, r, rp).tensor == green0(mode, 1.0, r, rp).tensor);
  }
}

TEST_CASE("one scatterer matches G0 + G0 alpha G0") {
  for (PolMode mode : {PolMode::TM, PolMode::TE}) {
    const Vec2 s{0.7, -0.4};
    const Medium2D m = make_medium(mode, {{s, 2.3}});
    const cd alpha = m.scatterers[0].pol.alpha;
    const SystemFactorization fact = assemble(m);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
      const Vec2 r = oracle::random_point(rng, {-4, -4, 8, 8});
      const Vec2 rp = oracle::random_point(rng, {-4, -4, 8, 8});
      const Eigen::Matrix2cd expected =
          green0(mode, 1.0, r, rp).tensor +
          alpha * green0(mode, 1.0, r, s).tensor * green0(mode, 1.0, s, rp).tensor;
      CHECK(oracle::rel_diff(total_green(fact, r, rp).tensor, expected) <= 1e-12);
    }
  }
}

TEST_CASE("two scatterers match the resummed multiple-scattering series") {
  for (PolMode mode : {PolMode::TM, PolMode::TE}) {
    const Vec2 s1{0.0, 0.0}, s2{0.9, 0.5};
    const Medium2D m = make_medium(mode, {{s1, 3.0}, {s2, -1.7}});
    const SystemFactorization fact = assemble(m);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 20; ++i) {
      const Vec2 r = oracle::random_point(rng, {-4, -4, 8, 8});
      const Vec2 rp = oracle::random_point(rng, {-4, -4, 8, 8});
      const Eigen::Matrix2cd expected = oracle::two_scatterer_green(
          mode, s1, m.scatterers[0].pol.alpha, s2, m.scatterers[1].pol.alpha, r, rp);
      CHECK(oracle::rel_diff(total_green(fact, r, rp).tensor, expected) <= 1e-10);
    }
  }
}

TEST_CASE("total Green function is reciprocal in a 50-scatterer medium") {
  for (PolMode mode : {PolMode::TM, PolMode::TE}) {
    const SystemFactorization fact = assemble(random_medium(21, 50, mode));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
      const Vec2 r = oracle::random_point(rng, {-15, -15, 30, 30});
      const Vec2 rp = oracle::random_point(rng, {-15, -15, 30, 30});
      const Eigen::Matrix2cd forward = total_green(fact, r, rp).tensor;
      const Eigen::Matrix2cd backward = total_green(fact, rp, r).tensor;
      CHECK(oracle::rel_diff(backward.transpose(), forward) <= 1e-10);
    }
  }
}

TEST_CASE("weak scatterer perturbs free space at O(alpha)") {
  const Vec2 r{2.0, 1.0}, rp{-1.0, 0.5};
  for (double a : {1e-3, 1e-6, 1e-9}) {
    const SystemFactorization fact = assemble(make_medium(PolMode::TE, {{{0.3, 0.2}, a}}));
    const Eigen::Matrix2cd g0 = green0(PolMode::TE, 1.0, r, rp).tensor;
    CHECK((total_green(fact, r, rp).tensor - g0).norm() <= 10.0 * a);
  }
}

TEST_CASE("projected Im G in free space") {
  const SystemFactorization tm = assemble(Medium2D{PolMode::TM});
  CHECK(im_green_projected(tm, {1, 1}, {1, 1}, {1, 0}, {1, 0}) == 0.25);
  for (double d : {0.1, 1.0, 2.404825557695773, 7.3, 30.0}) {
    CHECK(std::abs(im_green_projected(tm, {0, 0}, {d, 0}, {1, 0}, {1, 0}) - 0.25 * oracle::j0(d)) < 1e-14);
  }
  const SystemFactorization te = assemble(Medium2D{PolMode::TE});
  CHECK(im_green_projected(te, {1, 1}, {1, 1}, {0, 1}, {0, 1}) == 0.125);
  CHECK(im_green_projected(te, {1, 1}, {1, 1}, {1, 0}, {0, 1}) == 0.0);
}

TEST_CASE("LDOS positivity, CDOS symmetry and bound in random media") {
  std::mt19937_64 rng(77);
  int samples = 0;
  for (PolMode mode : {PolMode::TM, PolMode::TE}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const SystemFactorization fact = assemble(random_medium(seed, 40, mode, seed % 2 ? 2.0 : -4.0));
      for (int i = 0; i < 100; ++i) {
        const Vec2 r1 = oracle::random_point(rng, {-14, -14, 28, 28});
        const Vec2 r2 = oracle::random_point(rng, {-14, -14, 28, 28});
        const Vec2 u1 = oracle::random_unit(rng), u2 = oracle::random_unit(rng);
        const double g11 = im_green_projected(fact, r1, r1, u1, u1);
        const double g22 = im_green_projected(fact, r2, r2, u2, u2);
        const double g12 = im_green_projected(fact, r1, r2, u1, u2);
        const double g21 = im_green_projected(fact, r2, r1, u2, u1);
        CHECK(g11 >= -1e-12);
        CHECK(g22 >= -1e-12);
        CHECK(std::abs(g12 - g21) <= 1e-12);
        CHECK(std::abs(g12) <= std::sqrt(g11 * g22) + 1e-10);
        ++samples;
      }
    }
  }
  CHECK(samples >= 1000);
}

TEST_CASE("geometry and singularity errors") {
  CHECK_THROWS_AS(assemble(make_medium(PolMode::TM, {{{1, 1}, 1.0}, {{1, 1}, 2.0}})), GeometryError);

  const SystemFactorization fact = assemble(make_medium(PolMode::TE, {{{1, 1}, 1.0}}));
  CHECK_THROWS_AS(total_green(fact, {1, 1}, {0, 0}), GeometryError);
  CHECK_THROWS_AS(total_green(fact, {0, 0}, {1, 1}), GeometryError);
  CHECK_THROWS_AS(total_green(fact, {0, 0}, {0, 0}), GeometryError);
  CHECK_THROWS_AS(im_green_projected(fact, {1, 1}, {0, 0}, {1, 0}, {1, 0}), GeometryError);

  // alpha = 1 / G0(d) on both scatterers makes M = [[1, -1], [-1, 1]].
  Medium2D singular;
  singular.mode = PolMode::TM;
  const cd inverse_g = 1.0 / green0(PolMode::TM, 1.0, {0, 0}, {1.3, 0}).scalar();
  singular.scatterers = {{{0, 0}, {1.0, inverse_g}}, {{1.3, 0}, {1.0, inverse_g}}};
  try {
    assemble(singular);
    FAIL("expected SingularSystemError");
  } catch (const SingularSystemError& e) {
    CHECK(e.condition_estimate() > 1e15);
  }
}

TEST_CASE("condition estimate is recorded") {
  const SystemFactorization fact = assemble(random_medium(3, 30, PolMode::TE));
  CHECK(fact.dimension() == 60);
  CHECK(fact.condition_estimate() >= 1.0);
  CHECK(std::isfinite(fact.condition_estimate()));
  CHECK(fact.ill_conditioned() == (fact.condition_estimate() > kConditionWarning));
}

TEST_CASE("batched and single-column solves agree bitwise") {
  const SystemFactorization fact = assemble(random_medium(8, 25, PolMode::TE));
  const Vec2 src{0.1, 0.2};
  const Vec2 basis[] = {{1, 0}, {0, 1}};
  const auto both = fact.radiate(src, basis);
  const Vec2 r{3.0, -2.0};
  CHECK(both[0].at(r) == fact.radiate(src, {1, 0}).at(r));
  CHECK(both[1].at(r) == fact.radiate(src, {0, 1}).at(r));
}

TEST_CASE("probe and self-term shortcuts match direct evaluation") {
  std::mt19937_64 rng(77);
  for (PolMode mode : {PolMode::TM, PolMode::TE}) {
    const SystemFactorization fact = assemble(random_medium(13, 40, mode));
    for (int i = 0; i < 50; ++i) {
      const Vec2 src = oracle::random_point(rng, {-12, -12, 24, 24});
      const Vec2 obs = oracle::random_point(rng, {-12, -12, 24, 24});
      const Vec2 u = oracle::random_unit(rng), e = oracle::random_unit(rng);
      const DipoleField field = fact.radiate(src, u);
      const FieldProbe probe = fact.probe(obs, e);
      const std::complex<double> direct = field.projected(obs, e);
      CHECK(std::abs(field.projected(probe) - direct) <= 1e-13 * std::abs(direct));
      CHECK(std::abs(im_green_projected(field, probe) - direct.imag()) <= 1e-13 * std::abs(direct));

      const Eigen::Vector2cd s = field.scattered_at(src);
      const std::complex<double> self = mode == PolMode::TM ? s(0) : u.x * s(0) + u.y * s(1);
      CHECK(std::abs(field.self_scattered() - self) <= 1e-12 * std::abs(self) + 1e-15);
    }
    const Vec2 on = fact.medium().scatterers[0].position;
    CHECK_THROWS_AS(fact.probe(on, {1, 0}), GeometryError);
  }
}

TEST_CASE("multi-source batch matches single-source fields") {
  const SystemFactorization fact = assemble(random_medium(21, 30, PolMode::TE));
  const std::vector<Vec2> sources = {{0.1, 0.2}, {3.0, -4.0}, {-7.5, 1.25}};
  const std::vector<DipoleField> batch = fact.radiate_from(sources, {0.6, 0.8});
  REQUIRE(batch.size() == 3);
  for (std::size_t k = 0; k < sources.size(); ++k) {
    CHECK(batch[k].source() == sources[k]);
    const DipoleField single = fact.radiate(sources[k], {0.6, 0.8});
    const std::complex<double> a = batch[k].projected({5, 5}, {1, 0});
    const std::complex<double> b = single.projected({5, 5}, {1, 0});
    CHECK(std::abs(a - b) <= 1e-13 * std::abs(b));
  }
}
