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

#include <cstddef>
#include <string>
#include <vector>

namespace sbpwave {

/// One measured quantity with its acceptance interval.
struct Check {
  std::string label;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
  std::string note;  // optional detail
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  /// Informational lines that do not affect the verdict.
  std::vector<std::string> info;

  bool pass() const;
  std::string text() const;
  /// label,value,lo,hi,pass
  std::string csv() const;
};

Check make_check(std::string label, double value, double lo, double hi, std::string note = {});

/// SBP structure of the closures, exact and floating point.
SuiteReport verify_structure();
/// Exactness of the derivative, projection and transfer operators.
SuiteReport verify_exactness();
/// Energy-rate oracle over every shipped configuration and the negative controls.
SuiteReport verify_energy(std::size_t n_states = 100);

struct ConvergenceOptions {
  std::vector<std::size_t> ladder{16, 32, 64, 128};
  double dt = 1e-5;
  double t_final = 0.1;
};
SuiteReport verify_convergence(const ConvergenceOptions& options = {});

/// Time-step limits of the four reference systems at c = 1.
SuiteReport verify_cfl();

struct StabilityOptions {
  std::size_t n_steps = 50000;
  /// Also run the 6:5 scenario with a broken transfer constraint (reported only).
  bool broken_control = false;
};
SuiteReport verify_stability(const StabilityOptions& options = {});

/// Seismogram agreement over n_steps (5000 steps = 6 s).
SuiteReport verify_agreement(std::size_t n_steps = 5000);

}  // namespace sbpwave
