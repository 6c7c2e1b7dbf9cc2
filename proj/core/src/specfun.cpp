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
#include <string>
#include <vector>

#include "cohscat/errors.hpp"

namespace cohscat::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

}  // namespace

namespace detail {

// Ascending series (A&S 9.1.10, 9.1.11). With q = x^2/4:
//   J0 = sum (-q)^k / (k!)^2
//   J1 = (x/2) sum (-q)^k / (k! (k+1)!)
//   Y0 = (2/pi)(ln(x/2)+gamma) J0 + (2/pi) sum_{k>=1} (-1)^(k+1) H_k q^k / (k!)^2
//   Y1 = -2/(pi x) + (2/pi) ln(x/2) J1
//        - (x/(2 pi)) sum (psi(k+1)+psi(k+2)) (-q)^k / (k! (k+1)!)
CylFnPair series(double x) {
  const double q = 0.25 * x * x;
  const double half_x = 0.5 * x;
  const double log_half_x = std::log(half_x);

  double t0 = 1.0;  // (-q)^k / (k!)^2
  double t1 = 1.0;  // (-q)^k / (k! (k+1)!)
  double j0 = 1.0;
  double j1_sum = 1.0;
  double y0_sum = 0.0;
  // psi(1) + psi(2) = -2 gamma + 1
  double y1_sum = -2.0 * kEulerGamma + 1.0;
  double harmonic = 0.0;  // H_k

  for (int k = 1; k < 200; ++k) {
    t0 *= -q / (double(k) * double(k));
    t1 *= -q / (double(k) * double(k + 1));
    const double harmonic_next = harmonic + 1.0 / k + 1.0 / (k + 1);
    harmonic += 1.0 / k;
    j0 += t0;
    j1_sum += t1;
    y0_sum -= harmonic * t0;  // (-1)^(k+1) q^k/(k!)^2 = -t0
    // psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
    y1_sum += (-2.0 * kEulerGamma + harmonic + harmonic_next) * t1;
    if (std::abs(t0) < 1e-18 && std::abs(t1) < 1e-18 && k > 2) break;
  }

  const double j1 = half_x * j1_sum;
  const double y0 = (2.0 / kPi) * ((log_half_x + kEulerGamma) * j0 + y0_sum);
  const double y1 = -2.0 / (kPi * x) + (2.0 / kPi) * log_half_x * j1 -
                    (half_x / kPi) * y1_sum;
  return {{j0, y0}, {j1, y1}};
}

// Miller's algorithm: recur J_n downward from a start order well above x,
// normalize with J0 + 2 sum J_2k = 1, then
//   (pi/2) Y0 = (ln(x/2)+gamma) J0 - 2 sum_{k>=1} (-1)^k J_2k / k
//   (pi/2) Y1 = -J0/x + (ln(x/2)+gamma) J1 + sum_{k>=1} (-1)^k (J_2k-1 - J_2k+1) / k
// The second line is minus the derivative of the first.
CylFnPair recurrence(double x) {
  int start = static_cast<int>(x + 30.0 + 10.0 * std::cbrt(x));
  start += start % 2;

  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[start] = 1e-30;
  for (int n = start; n >= 1; --n) {
    j[n - 1] = (2.0 * n / x) * j[n] - j[n + 1];
    if (std::abs(j[n - 1]) > 1e200) {
      for (int m = n - 1; m <= start; ++m) j[m] *= 1e-200;
    }
  }

  // Accumulate from high order down so that small terms are added first.
  double norm = 0.0;
  double neumann0 = 0.0;
  double neumann1 = 0.0;
  for (int k = start / 2; k >= 1; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    norm += 2.0 * j[2 * k];
    neumann0 += sign * j[2 * k] / k;
    neumann1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  norm += j[0];

  const double j0 = j[0] / norm;
  const double j1 = j[1] / norm;
  const double log_term = std::log(0.5 * x) + kEulerGamma;
  const double y0 = (2.0 / kPi) * (log_term * j0 - 2.0 * neumann0 / norm);
  const double y1 = (2.0 / kPi) * (-j0 / x + log_term * j1 + neumann1 / norm);
  return {{j0, y0}, {j1, y1}};
}

// H_n(x) ~ sqrt(2/(pi x)) exp(i(x - n pi/2 - pi/4)) sum_m i^m a_m(n) / x^m,
// a_m(n) = prod_{l=1..m} (4n^2 - (2l-1)^2) / (m! 8^m).
CylFnPair asymptotic(double x) {
  auto expand = [x](int order) {
    const double mu = 4.0 * order * order;
    std::complex<double> sum = 1.0;
    std::complex<double> power_of_i = 1.0;
    double term = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int m = 1; m < 200; ++m) {
      const double odd = 2.0 * m - 1.0;
      term *= (mu - odd * odd) / (8.0 * m * x);
      if (std::abs(term) >= previous) break;  // series started to diverge
      power_of_i *= std::complex<double>(0.0, 1.0);
      sum += power_of_i * term;
      previous = std::abs(term);
      if (previous < 1e-18) break;
    }
    // exp(i(x - (2n+1) pi/4)) evaluated as exp(ix) exp(-i(2n+1)pi/4) keeps the
    // argument reduction inside std::cos/std::sin.
    const std::complex<double> carrier(std::cos(x), std::sin(x));
    const double shift = -(2.0 * order + 1.0) * kPi / 4.0;
    const std::complex<double> h =
        std::sqrt(2.0 / (kPi * x)) * carrier * std::complex<double>(std::cos(shift), std::sin(shift)) * sum;
    return CylFnValue{h.real(), h.imag()};
  };
  return {expand(0), expand(1)};
}

}  // namespace detail

CylFnPair hankel01(double x) {
  if (!(x > 0.0)) {
    throw DomainError("hankel1: argument must be positive, got " + std::to_string(x));
  }
  if (x <= kSeriesLimit) return detail::series(x);
  if (x <= kAsymptoticLimit) return detail::recurrence(x);
  return detail::asymptotic(x);
}

CylFnValue hankel1(int order, double x) {
  if (order != 0 && order != 1) {
    throw UnsupportedOrderError("hankel1: only orders 0 and 1 are supported, got " +
                                std::to_string(order));
  }
  const CylFnPair both = hankel01(x);
  return order == 0 ? both.order0 : both.order1;
}

}  // namespace cohscat::specfun
