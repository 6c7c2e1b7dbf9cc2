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

#include <stdexcept>
#include <string>

namespace cohscat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// Invalid caller input that is not geometric (zero amplitudes, non-unit vectors).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Coincident points, duplicate scatterers, empty search regions.
class GeometryError : public Error {
 public:
  using Error::Error;
};

class DegenerateScattererError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Both emitters dark at a detector, or vanishing integrated emission.
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

class FarFieldValidityError : public Error {
 public:
  using Error::Error;
};

class PackingError : public Error {
 public:
  using Error::Error;
};

}  // namespace cohscat
