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
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "cohscat/solver.hpp"

namespace cohscat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;     ///< bad config, bad input or I/O failure
inline constexpr int kExitNumerical = 2;  ///< singular system, undefined correlation, failed validation
inline constexpr int kExitGeometry = 3;   ///< coincident points, packing failure

std::string tool_version();

/// Medium described by the spec, in internal units. Generated positions are
/// drawn in wavelengths and then scaled, matching what read_medium does.
Medium2D build_medium(const MediumSpec& spec, std::uint64_t seed);

/// Runs config.command. Exceptions propagate; see run() for their mapping.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line: `cohscat <command> [--config F] [--seed S]
/// [--threads N] [--out PREFIX] [--dump-config]`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohscat::cli
