// Copyright 2026 The cgforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CGFORGE_CLI_HPP_
#define CGFORGE_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "cgforge/gating.hpp"
#include "cgforge/report.hpp"

namespace cgforge {

// Exit-code contract shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAnalysis = 1;  // equivalence mismatch, diagnostics, ...
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;  // missing or malformed input file

struct RunConfig {
  std::string profile = "paper-match";  // profile path, or the built-in name
  std::string netlist_path;
  std::string stimulus_path;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  double epsilon_ps = 1.0;
  double clock_period_ps = 2000.0;
  double duty = 0.5;
  GatingMode mode = GatingMode::PerFf;
  Units units = Units::Ns;
  int width = 2;
  int cycles = 2000;
  double activity = 0.5;
  double perturbation = 0.02;
  int trials = 100;
  bool init_ff_zero = true;
  bool timing_checks = false;

  // Canonical serialization; hashed into every report header.
  std::string canonical() const;
};

// Line-oriented `key value` config file; unknown keys are rejected.
void apply_config_file(const std::string& path, RunConfig& config);

LibraryProfile resolve_profile(const std::string& name_or_path);

int run_demo(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_gate(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_sim(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_char(const RunConfig& config, bool gated_bench, std::ostream& out, std::ostream& err);
int run_power(const RunConfig& config, const std::string& gated_path,
              const std::string& ungated_path, std::ostream& out, std::ostream& err);
int run_mc(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_pipeline(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cgforge

#endif  // CGFORGE_CLI_HPP_
