// Copyright 2026 The sbpwave Authors
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

#include "sbpwave/run_config.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sbpwave::cli {

enum ExitCode : int { kOk = 0, kConfig = 1, kIo = 2, kDomain = 3, kVerification = 4 };

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Shortest decimal that round-trips.
std::string format_double(double v);

struct RunOutputs {
  std::filesystem::path directory;
  std::vector<std::string> files;
};

/// Loads and validates the config (files, blocks, locations) before any
/// compute, runs it and writes config.json, seismograms.csv, energy.csv and
/// manifest.json. The directory comes from `out_dir` or the config, relative
/// paths being taken from the config's directory.
RunOutputs run_simulation(const std::filesystem::path& config_file,
                          const std::optional<std::filesystem::path>& out_dir = std::nullopt);

/// Full command line. Returns the process exit code.
int main(int argc, char** argv);

}  // namespace sbpwave::cli
