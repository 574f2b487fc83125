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

#include "sbpwave/run_config.hpp"

#include "sbpwave/errors.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace sbpwave {

using nlohmann::json;

namespace {

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!ok.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

const json& need(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

double number_or(const json& j, const std::string& where, const char* key, double dflt) {
  return j.contains(key) ? number(j.at(key), where + "." + key) : dflt;
}

std::size_t count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) throw ConfigError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

bool flag_or(const json& j, const std::string& where, const char* key, bool dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
  return j.at(key).get<bool>();
}

Material material(const json& j, const std::string& where) {
  allow_keys(j, where, {"rho", "c"});
  return {number(need(j, where, "rho"), where + ".rho"), number(need(j, where, "c"), where + ".c")};
}

json material_json(const Material& m) { return {{"rho", m.rho}, {"c", m.c}}; }

MediumConfig medium(const json& j) {
  const std::string w = "medium";
  MediumConfig m;
  m.kind = text(need(j, w, "kind"), w + ".kind");
  if (m.kind == "constant") {
    allow_keys(j, w, {"kind", "rho", "c"});
    m.top = m.bottom = {number(need(j, w, "rho"), w + ".rho"), number(need(j, w, "c"), w + ".c")};
  } else if (m.kind == "two_layer") {
    allow_keys(j, w, {"kind", "top", "bottom", "interface_y"});
    m.top = material(need(j, w, "top"), w + ".top");
    m.bottom = material(need(j, w, "bottom"), w + ".bottom");
    m.interface_y = number(need(j, w, "interface_y"), w + ".interface_y");
  } else if (m.kind == "vertical_linear") {
    allow_keys(j, w, {"kind", "top", "bottom", "y_top", "y_bottom"});
    m.top = material(need(j, w, "top"), w + ".top");
    m.bottom = material(need(j, w, "bottom"), w + ".bottom");
    m.y_top = number(need(j, w, "y_top"), w + ".y_top");
    m.y_bottom = number(need(j, w, "y_bottom"), w + ".y_bottom");
  } else if (m.kind == "gridded") {
    allow_keys(j, w, {"kind", "rows", "cols", "spacing", "origin_x", "origin_y", "rows_downward", "value_type",
                      "rho_file", "c_file"});
    auto& g = m.grid;
    g.rows = count(need(j, w, "rows"), w + ".rows");
    g.cols = count(need(j, w, "cols"), w + ".cols");
    g.spacing = number(need(j, w, "spacing"), w + ".spacing");
    g.origin_x = number_or(j, w, "origin_x", 0.0);
    g.origin_y = number_or(j, w, "origin_y", 0.0);
    g.rows_downward = flag_or(j, w, "rows_downward", true);
    g.value_type = j.contains("value_type") ? text(j.at("value_type"), w + ".value_type") : "float32";
    if (g.value_type != "float32" && g.value_type != "float64")
      throw ConfigError("medium.value_type: expected float32 or float64");
    m.rho_file = text(need(j, w, "rho_file"), w + ".rho_file");
    m.c_file = text(need(j, w, "c_file"), w + ".c_file");
  } else {
    throw ConfigError("medium.kind: unknown kind '" + m.kind + "'");
  }
  return m;
}

json medium_json(const MediumConfig& m) {
  json j{{"kind", m.kind}};
  if (m.kind == "constant") {
    j["rho"] = m.top.rho;
    j["c"] = m.top.c;
  } else if (m.kind == "two_layer") {
    j["top"] = material_json(m.top);
    j["bottom"] = material_json(m.bottom);
    j["interface_y"] = m.interface_y;
  } else if (m.kind == "vertical_linear") {
    j["top"] = material_json(m.top);
    j["bottom"] = material_json(m.bottom);
    j["y_top"] = m.y_top;
    j["y_bottom"] = m.y_bottom;
  } else {
    const auto& g = m.grid;
    j["rows"] = g.rows;
    j["cols"] = g.cols;
    j["spacing"] = g.spacing;
    j["origin_x"] = g.origin_x;
    j["origin_y"] = g.origin_y;
    j["rows_downward"] = g.rows_downward;
    j["value_type"] = g.value_type;
    j["rho_file"] = m.rho_file;
    j["c_file"] = m.c_file;
  }
  return j;
}

}  // namespace

SpacingRatio parse_ratio(const std::string& s) {
  const auto colon = s.find(':');
  SpacingRatio r;
  auto num = [&](std::string_view part, std::int64_t& out) {
    const auto res = std::from_chars(part.data(), part.data() + part.size(), out);
    return res.ec == std::errc() && res.ptr == part.data() + part.size() && out > 0;
  };
  if (colon == std::string::npos || !num(std::string_view(s).substr(0, colon), r.coarse) ||
      !num(std::string_view(s).substr(colon + 1), r.fine))
    throw ConfigError("ratio '" + s + "' is not of the form m:n with positive integers");
  return r;
}

RunConfig parse_config(const json& j) {
  allow_keys(j, "config", {"domain", "blocks", "ratio", "medium", "sources", "receivers", "time", "output", "seed"});
  RunConfig c;
  const auto& d = need(j, "config", "domain");
  allow_keys(d, "domain", {"x_left", "width"});
  c.x_left = number_or(d, "domain", "x_left", 0.0);
  c.width = number(need(d, "domain", "width"), "domain.width");

  const auto& blocks = need(j, "config", "blocks");
  if (!blocks.is_array() || blocks.empty() || blocks.size() > 2)
    throw ConfigError("blocks: expected one or two blocks (bottom first)");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string w = "blocks[" + std::to_string(k) + "]";
    allow_keys(blocks[k], w, {"nx", "ny", "y_bottom", "y_top"});
    c.blocks.push_back({count(need(blocks[k], w, "nx"), w + ".nx"), count(need(blocks[k], w, "ny"), w + ".ny"),
                        number(need(blocks[k], w, "y_bottom"), w + ".y_bottom"),
                        number(need(blocks[k], w, "y_top"), w + ".y_top")});
  }
  if (j.contains("ratio")) c.ratio = parse_ratio(text(j.at("ratio"), "ratio"));
  c.medium = medium(need(j, "config", "medium"));

  if (j.contains("sources")) {
    if (!j.at("sources").is_array()) throw ConfigError("sources: expected an array");
    for (std::size_t k = 0; k < j.at("sources").size(); ++k) {
      const auto& s = j.at("sources")[k];
      const std::string w = "sources[" + std::to_string(k) + "]";
      allow_keys(s, w, {"x", "y", "f0", "t0", "amplitude"});
      c.sources.push_back({number(need(s, w, "x"), w + ".x"), number(need(s, w, "y"), w + ".y"),
                           number_or(s, w, "f0", 5.0), number_or(s, w, "t0", 0.25),
                           number_or(s, w, "amplitude", 1.0)});
    }
  }
  if (j.contains("receivers")) {
    if (!j.at("receivers").is_array()) throw ConfigError("receivers: expected an array");
    for (std::size_t k = 0; k < j.at("receivers").size(); ++k) {
      const auto& r = j.at("receivers")[k];
      const std::string w = "receivers[" + std::to_string(k) + "]";
      allow_keys(r, w, {"name", "x", "y"});
      const std::string name = r.contains("name") ? text(r.at("name"), w + ".name") : "r" + std::to_string(k);
      if (name.empty() || name.find_first_of(",\n\r\"") != std::string::npos)
        throw ConfigError(w + ".name: must be non-empty without commas, quotes or newlines");
      c.receivers.push_back({name, number(need(r, w, "x"), w + ".x"), number(need(r, w, "y"), w + ".y")});
    }
  }

  const auto& t = need(j, "config", "time");
  allow_keys(t, "time", {"dt", "n_steps"});
  c.dt = number(need(t, "time", "dt"), "time.dt");
  c.n_steps = count(need(t, "time", "n_steps"), "time.n_steps");
  if (!(c.dt > 0)) throw ConfigError("time.dt: must be positive");
  if (c.n_steps == 0) throw ConfigError("time.n_steps: must be positive");

  if (j.contains("output")) {
    const auto& o = j.at("output");
    allow_keys(o, "output", {"directory", "seismograms", "energy"});
    if (o.contains("directory")) c.output.directory = text(o.at("directory"), "output.directory");
    c.output.seismograms = flag_or(o, "output", "seismograms", true);
    c.output.energy = flag_or(o, "output", "energy", true);
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["domain"] = {{"x_left", c.x_left}, {"width", c.width}};
  j["blocks"] = json::array();
  for (const auto& b : c.blocks)
    j["blocks"].push_back({{"nx", b.nx}, {"ny", b.ny}, {"y_bottom", b.y_bottom}, {"y_top", b.y_top}});
  if (c.ratio) j["ratio"] = std::to_string(c.ratio->coarse) + ":" + std::to_string(c.ratio->fine);
  j["medium"] = medium_json(c.medium);
  j["sources"] = json::array();
  for (const auto& s : c.sources)
    j["sources"].push_back({{"x", s.x}, {"y", s.y}, {"f0", s.f0}, {"t0", s.t0}, {"amplitude", s.amplitude}});
  j["receivers"] = json::array();
  for (const auto& r : c.receivers) j["receivers"].push_back({{"name", r.name}, {"x", r.x}, {"y", r.y}});
  j["time"] = {{"dt", c.dt}, {"n_steps", c.n_steps}};
  j["output"] = {{"directory", c.output.directory}, {"seismograms", c.output.seismograms}, {"energy", c.output.energy}};
  j["seed"] = c.seed;
  return j;
}

std::string serialize(const RunConfig& c) { return to_json(c).dump(2) + "\n"; }

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open config " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + file.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

ModelSpec model_spec(const RunConfig& c, const std::filesystem::path& base_dir) {
  ModelSpec s;
  s.x_left = c.x_left;
  s.width = c.width;
  s.blocks = c.blocks;
  const auto& m = c.medium;
  if (m.kind == "constant") {
    s.medium = MediumSpec::constant(m.top);
  } else if (m.kind == "two_layer") {
    s.medium = MediumSpec::two_layer(m.top, m.bottom, m.interface_y);
  } else if (m.kind == "vertical_linear") {
    s.medium = MediumSpec::vertical_linear(m.top, m.y_top, m.bottom, m.y_bottom);
  } else {
    auto resolve = [&](const std::string& f) {
      const std::filesystem::path p(f);
      return p.is_absolute() ? p : base_dir / p;
    };
    s.medium = MediumSpec::gridded(load_gridded_model(m.grid, resolve(m.rho_file), resolve(m.c_file)));
  }
  return s;
}

}  // namespace sbpwave
