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

#include <cmath>
#include <numbers>

namespace cohscat {

/// Point or vector in the plane. Library lengths are in reduced units
/// (wavenumber k = 1, so one wavelength is 2*pi).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Wavelengths to reduced length units and back.
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double from_wavelengths(double lambdas) { return kTwoPi * lambdas; }
constexpr double to_wavelengths(double reduced) { return reduced / kTwoPi; }
inline Vec2 from_wavelengths(Vec2 p) { return {from_wavelengths(p.x), from_wavelengths(p.y)}; }
inline Vec2 to_wavelengths(Vec2 p) { return {to_wavelengths(p.x), to_wavelengths(p.y)}; }

/// Two points closer than this (reduced units) are treated as coincident.
inline constexpr double kCoincidenceRadius = 1e-12;

/// Axis-aligned rectangle, lower-left corner plus size.
struct Region {
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 0.0;
  double height = 0.0;

  bool contains(Vec2 p) const {
    return p.x >= x0 && p.x <= x0 + width && p.y >= y0 && p.y <= y0 + height;
  }
  double area() const { return width * height; }
  bool operator==(const Region&) const = default;
};

}  // namespace cohscat
