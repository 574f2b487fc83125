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

#include <doctest.h>

#include "sbpwave/cli.hpp"
#include "sbpwave/errors.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sbpwave;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / "sbpwave_cli_test" / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmall = R"({
  "domain": {"width": 0.96},
  "blocks": [{"nx": 24, "ny": 13, "y_bottom": 0.0, "y_top": 0.48},
             {"nx": 48, "ny": 25, "y_bottom": 0.48, "y_top": 0.96}],
  "ratio": "2:1",
  "medium": {"kind": "two_layer", "top": {"rho": 0.5, "c": 1.0}, "bottom": {"rho": 1.0, "c": 2.0},
             "interface_y": 0.48},
  "sources": [{"x": 0.04, "y": 0.92}],
  "receivers": [{"name": "near", "x": 0.2, "y": 0.92}, {"name": "far", "x": 0.92, "y": 0.92}],
  "time": {"dt": 0.003, "n_steps": 300},
  "output": {"directory": "out"},
  "seed": 7
})";

fs::path write_config(const fs::path& dir, const std::string& text) {
  const auto p = dir / "run.json";
  std::ofstream(p) << text;
  return p;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sbpwave");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("fnv1a64 reference values") {
  CHECK(cli::fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(cli::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(cli::fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("config round trip") {
  const auto c = parse_config(nlohmann::json::parse(kSmall));
  CHECK(c.receivers.size() == 2);
  CHECK(c.sources[0].f0 == 5.0);
  CHECK(c.ratio == SpacingRatio{2, 1});
  const auto again = parse_config(nlohmann::json::parse(serialize(c)));
  CHECK(again == c);
  CHECK(serialize(again) == serialize(c));

  GriddedMetadata meta{3, 4, 2.0, 1.0, 6.0, true, "float64"};
  RunConfig g = c;
  g.medium.kind = "gridded";
  g.medium.grid = meta;
  g.medium.rho_file = "rho.bin";
  g.medium.c_file = "c.bin";
  const auto parsed = parse_config(to_json(g));
  CHECK(parsed.medium.grid == meta);
  CHECK(parse_config(to_json(parsed)) == parsed);
}

TEST_CASE("config schema errors") {
  auto j = nlohmann::json::parse(kSmall);
  auto bad = j;
  bad["tiem"] = 1;
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  bad = j;
  bad["time"]["dt"] = -1.0;
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  bad = j;
  bad["blocks"][0]["nx"] = "24";
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  bad = j;
  bad["medium"]["kind"] = "marble";
  CHECK_THROWS_AS(parse_config(bad), ConfigError);
  CHECK_THROWS_AS(parse_ratio("3-2"), ConfigError);
  CHECK(parse_ratio("6:5") == SpacingRatio{6, 5});
}

TEST_CASE("run writes the output directory") {
  const auto dir = scratch_dir("run");
  const auto cfg = write_config(dir, kSmall);
  const auto out = cli::run_simulation(cfg);
  CHECK(out.directory == dir / "out");
  const auto seis = slurp(dir / "out" / "seismograms.csv");
  CHECK(seis.rfind("t,near,far\n", 0) == 0);
  CHECK(std::count(seis.begin(), seis.end(), '\n') == 302);
  const auto energy = slurp(dir / "out" / "energy.csv");
  CHECK(std::count(energy.begin(), energy.end(), '\n') == 301);
  const auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.json"));
  REQUIRE(manifest["files"].size() == 3);
  for (const auto& f : manifest["files"]) {
    const auto content = slurp(dir / "out" / f["name"].get<std::string>());
    CHECK(f["bytes"].get<std::size_t>() == content.size());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(cli::fnv1a64(content)));
    CHECK(f["fnv1a64"].get<std::string>() == buf);
  }
  CHECK(load_config(dir / "out" / "config.json") == load_config(cfg));
}

TEST_CASE("identical runs are byte identical") {
  const auto dir = scratch_dir("determinism");
  const auto cfg = write_config(dir, kSmall);
  cli::run_simulation(cfg, dir / "a");
  cli::run_simulation(cfg, dir / "b");
  for (const char* f : {"config.json", "seismograms.csv", "energy.csv", "manifest.json"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
}

TEST_CASE("failures leave no output and map to exit codes") {
  const auto dir = scratch_dir("fail");
  auto j = nlohmann::json::parse(kSmall);

  SUBCASE("missing model file") {
    j["medium"] = {{"kind", "gridded"}, {"rows", 3},           {"cols", 3},           {"spacing", 0.5},
                   {"rho_file", "no_rho.bin"}, {"c_file", "no_c.bin"}};
    const auto cfg = write_config(dir, j.dump());
    CHECK_THROWS_AS(cli::run_simulation(cfg), IoError);
    CHECK(run_cli({"run", cfg.string()}) == cli::kIo);
    CHECK_FALSE(fs::exists(dir / "out"));
  }
  SUBCASE("receiver off the grid") {
    j["receivers"][0]["x"] = 0.205;
    const auto cfg = write_config(dir, j.dump());
    CHECK(run_cli({"run", cfg.string()}) == cli::kDomain);
    CHECK_FALSE(fs::exists(dir / "out"));
  }
  SUBCASE("ratio mismatch") {
    j["ratio"] = "3:2";
    const auto cfg = write_config(dir, j.dump());
    CHECK(run_cli({"run", cfg.string()}) == cli::kDomain);
    CHECK_FALSE(fs::exists(dir / "out"));
  }
  SUBCASE("schema error") {
    j["time"].erase("dt");
    const auto cfg = write_config(dir, j.dump());
    CHECK(run_cli({"run", cfg.string()}) == cli::kConfig);
  }
  SUBCASE("invalid JSON") {
    const auto cfg = write_config(dir, "{ nope");
    CHECK(run_cli({"run", cfg.string()}) == cli::kConfig);
  }
}

TEST_CASE("operator and verify commands") {
  CHECK(run_cli({"operators", "sbp1d", "--n", "9"}) == cli::kOk);
  CHECK(run_cli({"operators", "sbp1d", "--n", "5"}) == cli::kDomain);
  CHECK(run_cli({"operators", "transfer", "--ratio", "3:2"}) == cli::kOk);
  CHECK(run_cli({"operators", "transfer", "--ratio", "7:6"}) == cli::kOk);
  CHECK(run_cli({"operators", "transfer", "--ratio", "2:3"}) == cli::kDomain);
  CHECK(run_cli({"operators", "transfer", "--ratio", "oops"}) == cli::kConfig);
  CHECK(run_cli({"verify", "structure"}) == cli::kOk);
  CHECK(run_cli({"verify", "nonsense"}) == cli::kConfig);
  CHECK(run_cli({"cfl", "--system", "1d-periodic", "--n", "32"}) == cli::kOk);
  CHECK(run_cli({"bogus"}) == cli::kConfig);
}
