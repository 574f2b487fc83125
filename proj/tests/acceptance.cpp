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

// Acceptance run: one PASS/FAIL line per criterion, details above each line.
#include "sbpwave/cli.hpp"
#include "sbpwave/verify_suites.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace sbpwave;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SuiteReport determinism() {
  SuiteReport r{"determinism", {}, {}};
  const fs::path config = fs::path(SBPWAVE_SOURCE_DIR) / "configs" / "two_layer.json";
  const auto root = fs::temp_directory_path() / "sbpwave_acceptance";
  fs::remove_all(root);
  const auto a = cli::run_simulation(config, root / "a");
  cli::run_simulation(config, root / "b");
  for (const auto& f : a.files) {
    const auto x = slurp(root / "a" / f), y = slurp(root / "b" / f);
    r.checks.push_back(make_check(f + " identical", x == y && !x.empty() ? 1 : 0, 1, 1,
                                  std::to_string(x.size()) + " bytes"));
  }
  fs::remove_all(root);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  bool skip_slow = false;
  for (int k = 1; k < argc; ++k)
    if (std::strcmp(argv[k], "--skip-slow") == 0) skip_slow = true;

  struct Criterion {
    int id;
    const char* title;
    bool slow;
    std::function<SuiteReport()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "SBP structure certificate", false, [] { return verify_structure(); }},
      {2, "polynomial exactness", false, [] { return verify_exactness(); }},
      {3, "energy-rate oracle", false, [] { return verify_energy(100); }},
      {4, "convergence rates", false, [] { return verify_convergence(); }},
      {5, "CFL limits", false, [] { return verify_cfl(); }},
      {6, "long-time stability (slow)", true, [] { return verify_stability(); }},
      {7, "two-grid agreement", false, [] { return verify_agreement(5000); }},
      {8, "determinism", false, [] { return determinism(); }},
  };

  std::vector<std::string> summary;
  bool all = true;
  for (const auto& c : criteria) {
    char line[160];
    if (c.slow && skip_slow) {
      std::snprintf(line, sizeof line, "CRITERION %d: SKIP %s", c.id, c.title);
      summary.push_back(line);
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = c.run();
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << rep.text() << std::flush;
    std::snprintf(line, sizeof line, "CRITERION %d: %s %s (%.1f s)", c.id, rep.pass() ? "PASS" : "FAIL", c.title, sec);
    std::cout << line << "\n\n" << std::flush;
    summary.push_back(line);
    all = all && rep.pass();
  }
  std::cout << "==== summary ====\n";
  for (const auto& s : summary) std::cout << s << "\n";
  return all ? 0 : 1;
}
