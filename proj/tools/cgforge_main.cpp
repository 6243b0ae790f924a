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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cgforge/characterize.hpp"
#include "cgforge/cli.hpp"
#include "cgforge/power.hpp"
#include "cgforge/version.hpp"

namespace {

using cgforge::RunConfig;

void add_common(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--profile", config.profile, "Cell library profile path, or 'paper-match'");
  cmd->add_option("--out", config.output_dir, "Output directory");
  cmd->add_option("--seed", config.seed, "Random seed (default 0, fully reproducible)");
}

std::string mode_str = "per-ff";
std::string units_str = "ns";
std::string bench_str = "gated";
std::string gated_path, ungated_path;

void apply_enums(RunConfig& config) {
  if (auto m = cgforge::gating_mode_from_string(mode_str)) {
    config.mode = *m;
  } else {
    throw CLI::ValidationError("--mode", "expected 'per-ff' or 'shared'");
  }
  if (auto u = cgforge::units_from_string(units_str)) {
    config.units = *u;
  } else {
    throw CLI::ValidationError("--units", "expected 'ns' or 'ps'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;

  // --config is applied before flag parsing so flags override file values
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        cgforge::apply_config_file(argv[i + 1], config);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cgforge::kExitInput;
      }
    }
  }

  CLI::App app{"cgforge: clock-gating insertion, simulation and analysis for "
               "multi-stage flip-flop circuits"};
  app.set_version_flag("--version", std::string("cgforge v") + cgforge::kVersion);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Line-oriented 'key value' config file")
      ->expected(1);
  app.allow_extras(false);

  auto* demo = app.add_subcommand("demo", "Emit the multi-stage register demo files");
  demo->add_option("--width", config.width, "Number of register stages")
      ->check(CLI::PositiveNumber);
  demo->add_option("--period", config.clock_period_ps, "Clock period in ps");
  demo->add_option("--cycles", config.cycles, "Stimulus length in cycles");
  demo->add_option("--activity", config.activity, "Per-cycle data toggle probability");
  demo->add_option("--duty", config.duty, "Clock duty cycle");
  add_common(demo, config);

  auto* validate = app.add_subcommand("validate", "Check a netlist against the IR invariants");
  validate->add_option("--netlist", config.netlist_path, "Netlist file")->required();
  add_common(validate, config);

  auto* gate = app.add_subcommand("gate", "Insert LB-CG clock gating");
  gate->add_option("--netlist", config.netlist_path, "Netlist file")->required();
  gate->add_option("--mode", mode_str, "Gating mode: per-ff (correct) or shared (demonstrably wrong)");
  add_common(gate, config);

  auto* sim = app.add_subcommand("sim", "Event-driven simulation with VCD export");
  sim->add_option("--netlist", config.netlist_path, "Netlist file")->required();
  sim->add_option("--stimulus", config.stimulus_path, "Stimulus file")->required();
  sim->add_flag("--init-zero,!--no-init-zero", config.init_ff_zero,
                "Force flip-flops to 0 at t=0 (default on)");
  sim->add_flag("--checks", config.timing_checks, "Enable setup/hold runtime checks");
  add_common(sim, config);

  auto* chr = app.add_subcommand("char", "Setup/hold/delay/latency characterization");
  chr->add_option("--bench", bench_str, "Bench to characterize: gated or ungated");
  chr->add_option("--period", config.clock_period_ps, "Clock period in ps");
  chr->add_option("--epsilon", config.epsilon_ps, "Bisection resolution in ps");
  chr->add_option("--duty", config.duty, "Clock duty cycle");
  chr->add_option("--units", units_str, "Report units: ns or ps");
  add_common(chr, config);

  auto* power = app.add_subcommand("power", "Gated vs ungated power comparison");
  power->add_option("--gated", gated_path, "Gated netlist file")->required();
  power->add_option("--ungated", ungated_path, "Ungated netlist file")->required();
  power->add_option("--stimulus", config.stimulus_path, "Stimulus file")->required();
  add_common(power, config);

  auto* mc = app.add_subcommand("mc", "Monte-Carlo delay-perturbation stability check");
  mc->add_option("--netlist", config.netlist_path, "Netlist file")->required();
  mc->add_option("--stimulus", config.stimulus_path, "Stimulus file")->required();
  mc->add_option("--perturbation", config.perturbation, "Relative delay perturbation, e.g. 0.02");
  mc->add_option("--trials", config.trials, "Number of trials")->check(CLI::PositiveNumber);
  add_common(mc, config);

  auto* pipeline = app.add_subcommand(
      "pipeline", "Equivalence check plus timing, power and variation analyses");
  pipeline->add_option("--width", config.width, "Register stages")->check(CLI::PositiveNumber);
  pipeline->add_option("--mode", mode_str, "Gating mode: per-ff or shared");
  pipeline->add_option("--stimulus", config.stimulus_path,
                       "Stimulus file (default: generated from seed/activity)");
  pipeline->add_option("--period", config.clock_period_ps, "Clock period in ps");
  pipeline->add_option("--cycles", config.cycles, "Generated stimulus length in cycles");
  pipeline->add_option("--activity", config.activity, "Generated data toggle probability");
  pipeline->add_option("--epsilon", config.epsilon_ps, "Bisection resolution in ps");
  pipeline->add_option("--duty", config.duty, "Clock duty cycle");
  pipeline->add_option("--units", units_str, "Report units: ns or ps");
  pipeline->add_option("--perturbation", config.perturbation, "Variation perturbation");
  pipeline->add_option("--trials", config.trials, "Variation trials")->check(CLI::PositiveNumber);
  add_common(pipeline, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cgforge::kExitUsage;
  }

  try {
    apply_enums(config);
    if (demo->parsed()) return cgforge::run_demo(config, std::cout, std::cerr);
    if (validate->parsed()) return cgforge::run_validate(config, std::cout, std::cerr);
    if (gate->parsed()) return cgforge::run_gate(config, std::cout, std::cerr);
    if (sim->parsed()) return cgforge::run_sim(config, std::cout, std::cerr);
    if (chr->parsed()) {
      if (bench_str != "gated" && bench_str != "ungated") {
        std::cerr << "error: --bench expects 'gated' or 'ungated'\n";
        return cgforge::kExitUsage;
      }
      return cgforge::run_char(config, bench_str == "gated", std::cout, std::cerr);
    }
    if (power->parsed())
      return cgforge::run_power(config, gated_path, ungated_path, std::cout, std::cerr);
    if (mc->parsed()) return cgforge::run_mc(config, std::cout, std::cerr);
    if (pipeline->parsed()) return cgforge::run_pipeline(config, std::cout, std::cerr);
    std::cerr << "error: no subcommand\n";
    return cgforge::kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cgforge::kExitUsage;
  } catch (const cgforge::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cgforge::kExitInput;
  } catch (const cgforge::ProfileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cgforge::kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cgforge::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cgforge::kExitAnalysis;
  }
}
