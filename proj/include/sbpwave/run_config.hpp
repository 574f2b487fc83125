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

#include "sbpwave/media_model.hpp"
#include "sbpwave/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sbpwave {

struct SourceConfig {
  double x = 0.0;
  double y = 0.0;
  double f0 = 5.0;
  double t0 = 0.25;
  double amplitude = 1.0;
  bool operator==(const SourceConfig&) const = default;
};

struct ReceiverConfig {
  std::string name;
  double x = 0.0;
  double y = 0.0;
  bool operator==(const ReceiverConfig&) const = default;
};

/// Medium section. Gridded files are resolved against the config directory.
struct MediumConfig {
  std::string kind = "constant";  // constant | two_layer | vertical_linear | gridded
  Material top;
  Material bottom;
  double interface_y = 0.0;
  double y_top = 1.0;
  double y_bottom = 0.0;
  GriddedMetadata grid;
  std::string rho_file;
  std::string c_file;
  bool operator==(const MediumConfig&) const = default;
};

struct OutputConfig {
  std::string directory = "output";
  bool seismograms = true;
  bool energy = true;
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  double x_left = 0.0;
  double width = 1.0;
  std::vector<BlockSpec> blocks;  // bottom first
  /// Expected coarse:fine ratio of a two-block layout, checked when given.
  std::optional<SpacingRatio> ratio;
  MediumConfig medium;
  std::vector<SourceConfig> sources;
  std::vector<ReceiverConfig> receivers;
  double dt = 0.0;
  std::size_t n_steps = 0;
  OutputConfig output;
  std::uint64_t seed = 0;
  bool operator==(const RunConfig&) const = default;
};

/// Schema check; unknown keys and wrong types raise ConfigError.
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);
/// Pretty-printed canonical form.
std::string serialize(const RunConfig& c);

/// IoError when unreadable, ConfigError on bad JSON or schema.
RunConfig load_config(const std::filesystem::path& file);

/// "m:n" -> ratio; ConfigError when malformed.
SpacingRatio parse_ratio(const std::string& text);

/// Model description with gridded data loaded from disk.
ModelSpec model_spec(const RunConfig& c, const std::filesystem::path& base_dir);

}  // namespace sbpwave
