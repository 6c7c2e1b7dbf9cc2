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

#include "cohscat/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "cohscat/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cohscat;
using specfun::hankel1;
using specfun::hankel01;

namespace {

double hankel_error(const specfun::CylFnPair& v, double j0, double y0, double j1, double y1) {
  const double e0 = std::abs(v.order0.h1() - std::complex<double>(j0, y0)) / std::hypot(j0, y0);
  const double e1 = std::abs(v.order1.h1() - std::complex<double>(j1, y1)) / std::hypot(j1, y1);
  return std::max(e0, e1);
}

double wronskian_residual(double x) {
  const auto v = hankel01(x);
  return std::abs(v.order1.j * v.order0.y - v.order0.j * v.order1.y - 2.0 / (std::numbers::pi * x));
}

}  // namespace

TEST_CASE("small argument: J0 -> 1, Y0 -> -infinity logarithmically") {
  const auto v = hankel1(0, 1e-10);
  CHECK(v.j == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::isfinite(v.y));
  CHECK(v.y < -10.0);
  // Y0 ~ (2/pi)(ln(x/2) + gamma)
  CHECK(v.y == doctest::Approx(2.0 / std::numbers::pi * (std::log(5e-11) + std::numbers::egamma)).epsilon(1e-12));
  CHECK(v.h1() == std::complex<double>(v.j, v.y));
}

TEST_CASE("J0 vanishes at its first zero") {
  const double root = oracle::first_j0_zero();
  CHECK(std::abs(root - 2.404825557695773) < 1e-15);
  CHECK(std::abs(hankel1(0, 2.404825557695773).j) < 1e-12);
}

TEST_CASE("Wronskian identity") {
  CHECK(wronskian_residual(1.0) < 1e-12);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * i / 999.0);
    CHECK(wronskian_residual(x) <= 1e-11 * std::max(1.0, 2.0 / (std::numbers::pi * x)));
  }
}

TEST_CASE("agreement with quad-precision series oracle up to x = 30") {
  double worst = 0.0;
  for (int i = 0; i <= 3000; ++i) {
    const double x = std::pow(10.0, -6.0 + (6.0 + std::log10(30.0)) * i / 3000.0);
    const auto o = oracle::bessel_series(x);
    worst = std::max(worst, hankel_error(hankel01(x), o.j0, o.y0, o.j1, o.y1));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("agreement with Boost.Math for large arguments") {
  double worst = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double x = std::pow(10.0, std::log10(30.0) + (4.0 - std::log10(30.0)) * i / 2000.0);
    worst = std::max(worst, hankel_error(hankel01(x), boost::math::cyl_bessel_j(0, x),
                                         boost::math::cyl_neumann(0, x),
                                         boost::math::cyl_bessel_j(1, x),
                                         boost::math::cyl_neumann(1, x)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("regimes agree across both crossovers") {
  auto diff = [](const specfun::CylFnPair& a, const specfun::CylFnPair& b) {
    return std::max(std::abs(a.order0.h1() - b.order0.h1()) / std::abs(b.order0.h1()),
                    std::abs(a.order1.h1() - b.order1.h1()) / std::abs(b.order1.h1()));
  };
  for (double x = 7.0; x <= 9.0; x += 0.05) {
    CHECK(diff(specfun::detail::series(x), specfun::detail::recurrence(x)) < 1e-10);
  }
  for (double x = 23.0; x <= 27.0; x += 0.05) {
    CHECK(diff(specfun::detail::asymptotic(x), specfun::detail::recurrence(x)) < 1e-10);
  }
}

TEST_CASE("H1 is minus the derivative of H0") {
  // With h = 1e-5 x the central-difference truncation error grows like
  // x^1.5 * 1e-11, so the 1e-8 bound is only meaningful up to x ~ 50.
  for (int i = 0; i <= 200; ++i) {
    const double x = std::pow(10.0, -2.0 + (2.0 + std::log10(50.0)) * i / 200.0);
    const double h = 1e-5 * x;
    const std::complex<double> derivative =
        (hankel1(0, x + h).h1() - hankel1(0, x - h).h1()) / (2.0 * h);
    CHECK(std::abs(hankel1(1, x).h1() + derivative) <= 1e-8);
  }
}

TEST_CASE("domain and order errors") {
  CHECK_THROWS_AS(hankel1(0, 0.0), DomainError);
  CHECK_THROWS_AS(hankel1(1, -1.0), DomainError);
  CHECK_THROWS_AS(hankel1(0, std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(hankel1(2, 1.0), UnsupportedOrderError);
  CHECK_THROWS_AS(hankel1(-1, 1.0), UnsupportedOrderError);
}
