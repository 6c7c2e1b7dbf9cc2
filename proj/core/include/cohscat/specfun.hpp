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

namespace cohscat::specfun {

/// J_n, Y_n and H_n^(1) = J_n + i Y_n at one argument.
struct CylFnValue {
  double j = 0.0;
  double y = 0.0;

  std::complex<double> h1() const { return {j, y}; }
};

/// Orders 0 and 1 at the same argument; the Green functions always need both.
struct CylFnPair {
  CylFnValue order0;
  CylFnValue order1;
};

/// Arguments at or below this use the ascending power series.
inline constexpr double kSeriesLimit = 8.0;
/// Arguments above this use the Hankel asymptotic expansion; between the two
/// limits J_n comes from Miller's backward recurrence and Y_n from Neumann sums.
inline constexpr double kAsymptoticLimit = 25.0;

/// Bessel/Hankel functions of order 0 or 1 for x > 0.
///
/// Throws DomainError for x <= 0 (or NaN) and UnsupportedOrderError for any
/// order other than 0 or 1.
CylFnValue hankel1(int order, double x);

/// Both orders at once. Same preconditions as hankel1.
CylFnPair hankel01(double x);

namespace detail {
// Individual evaluation regimes, exposed for crossover tests.
CylFnPair series(double x);
CylFnPair recurrence(double x);
CylFnPair asymptotic(double x);
}  // namespace detail

}  // namespace cohscat::specfun
