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

#include <cstdint>
#include <string>
#include <vector>

namespace cohscat::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Property suite behind the `validate` command. `samples` sets the number of
/// random configurations for the sampled checks.
std::vector<CheckResult> run_validation(int samples, std::uint64_t seed, int threads);

}  // namespace cohscat::cli
