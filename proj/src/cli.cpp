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

#include "cgforge/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cgforge/characterize.hpp"
#include "cgforge/power.hpp"
#include "cgforge/vcd.hpp"
#include "cgforge/version.hpp"

namespace cgforge {

namespace fs = std::filesystem;

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out << "profile " << profile << "\nnetlist " << netlist_path << "\nstimulus " << stimulus_path
      << "\nout " << output_dir << "\nseed " << seed << "\nepsilon_ps " << epsilon_ps
      << "\nperiod_ps " << clock_period_ps << "\nduty " << duty << "\nmode " << to_string(mode)
      << "\nunits " << to_string(units) << "\nwidth " << width << "\ncycles " << cycles
      << "\nactivity " << activity << "\nperturbation " << perturbation << "\ntrials " << trials
      << "\ninit_ff_zero " << init_ff_zero << "\ntiming_checks " << timing_checks << "\n";
  return out.str();
}

void apply_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key, value;
    if (!(ls >> key)) continue;
    if (!(ls >> value)) throw ParseError("config: key '" + key + "' has no value", lineno);

    auto bad_value = [&]() {
      throw ParseError("config: bad value '" + value + "' for key '" + key + "'", lineno);
    };
    try {
      if (key == "profile") config.profile = value;
      else if (key == "netlist") config.netlist_path = value;
      else if (key == "stimulus") config.stimulus_path = value;
      else if (key == "out") config.output_dir = value;
      else if (key == "seed") config.seed = std::stoull(value);
      else if (key == "epsilon_ps") config.epsilon_ps = std::stod(value);
      else if (key == "period_ps") config.clock_period_ps = std::stod(value);
      else if (key == "duty") config.duty = std::stod(value);
      else if (key == "width") config.width = std::stoi(value);
      else if (key == "cycles") config.cycles = std::stoi(value);
      else if (key == "activity") config.activity = std::stod(value);
      else if (key == "perturbation") config.perturbation = std::stod(value);
      else if (key == "trials") config.trials = std::stoi(value);
      else if (key == "init_ff_zero") config.init_ff_zero = value == "1" || value == "true";
      else if (key == "timing_checks") config.timing_checks = value == "1" || value == "true";
      else if (key == "mode") {
        auto m = gating_mode_from_string(value);
        if (!m) bad_value();
        config.mode = *m;
      } else if (key == "units") {
        auto u = units_from_string(value);
        if (!u) bad_value();
        config.units = *u;
      } else {
        throw ParseError("config: unknown key '" + key + "'", lineno);
      }
    } catch (const std::invalid_argument&) {
      bad_value();
    } catch (const std::out_of_range&) {
      bad_value();
    }
  }
}

LibraryProfile resolve_profile(const std::string& name_or_path) {
  if (name_or_path == "paper-match") return paper_match_profile();
  return load_profile(name_or_path);
}

namespace {

ReportMeta meta_for(const RunConfig& config) {
  char digest[32];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(fnv1a64(config.canonical())));
  return ReportMeta{config.seed, digest};
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw ParseError("write to '" + path.string() + "' failed");
}

Netlist load_netlist_file(const std::string& path, const InterfaceTable& table) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open netlist file '" + path + "'");
  return parse_netlist(in, table);
}

// Fig.-style names for the demo: stage 1 gets the bare family name, stage
// i>1 gets suffix _<i-1> (ckg, ckg_1, ckg_2, ...).
void apply_demo_net_names(Netlist& n, int width) {
  for (int i = 1; i <= width; ++i) {
    for (const char* family : {"en", "ckg", "ckg_bar", "ckg_buf"}) {
      std::string from = std::string(family) + "_ff" + std::to_string(i);
      std::string to = i == 1 ? family : std::string(family) + "_" + std::to_string(i - 1);
      if (n.nets.count(from)) rename_net(n, from, to);
    }
  }
}

SimOptions sim_options(const RunConfig& config) {
  SimOptions opt;
  opt.init_ff_zero = config.init_ff_zero;
  opt.timing_checks = config.timing_checks;
  return opt;
}

}  // namespace

int run_demo(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.width < 1) {
    err << "demo: width must be >= 1\n";
    return kExitUsage;
  }
  LibraryProfile profile = resolve_profile(config.profile);
  fs::create_directories(config.output_dir);

  Netlist reg = build_register_demo(config.width);
  auto [gated, report] = insert_clock_gating(reg, profile, GatingMode::PerFf);
  apply_demo_net_names(gated, config.width);

  Stimulus stim = make_activity_stimulus(reg, "clk", config.clock_period_ps, config.cycles,
                                         config.activity, config.seed, config.duty);

  const InterfaceTable table = profile.interface_table();
  fs::path dir(config.output_dir);
  fs::path reg_path = dir / ("register" + std::to_string(config.width) + ".net");
  fs::path gated_path = dir / ("register" + std::to_string(config.width) + "_gated.net");
  fs::path stim_path = dir / "demo.stim";
  write_file(reg_path, write_netlist(reg, table));
  write_file(gated_path, write_netlist(gated, table));
  write_file(stim_path, write_stimulus(stim));

  out << reg_path.string() << "\n" << gated_path.string() << "\n" << stim_path.string() << "\n";
  return kExitOk;
}

int run_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  LibraryProfile profile = resolve_profile(config.profile);
  const InterfaceTable table = profile.interface_table();
  std::ifstream in(config.netlist_path);
  if (!in) throw ParseError("cannot open netlist file '" + config.netlist_path + "'");

  // syntax-only parse so every structural diagnostic surfaces below
  Netlist n = parse_netlist_raw(in);
  auto diags = validate(n, table);
  if (diags.empty()) {
    out << "ok: netlist '" << n.name << "' passes validation\n";
    return kExitOk;
  }
  for (const auto& d : diags) {
    out << to_string(d.category) << ": " << d.message << "\n";
  }
  return kExitAnalysis;
}

int run_gate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  LibraryProfile profile = resolve_profile(config.profile);
  const InterfaceTable table = profile.interface_table();
  Netlist n = load_netlist_file(config.netlist_path, table);
  auto [gated, report] = insert_clock_gating(n, profile, config.mode);

  fs::create_directories(config.output_dir);
  fs::path gated_path = fs::path(config.output_dir) / (n.name + "_gated.net");
  write_file(gated_path, write_netlist(gated, table));

  out << "gated " << report.gated_ffs.size() << " flip-flop(s) in mode " << to_string(report.mode)
      << "\n";
  out << "added cells:";
  for (const auto& c : report.added_cells) out << ' ' << c;
  out << "\ngated clock nets:";
  for (const auto& net : report.gated_clock_nets) out << ' ' << net;
  out << "\ntransistor overhead: " << report.transistor_overhead << "\n";
  out << gated_path.string() << "\n";
  return kExitOk;
}

int run_sim(const RunConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  LibraryProfile profile = resolve_profile(config.profile);
  const InterfaceTable table = profile.interface_table();
  Netlist n = load_netlist_file(config.netlist_path, table);
  Stimulus s = load_stimulus(config.stimulus_path);

  Trace t = simulate(n, profile, s, sim_options(config));

  fs::create_directories(config.output_dir);
  fs::path vcd_path = fs::path(config.output_dir) / (n.name + ".vcd");
  write_vcd(t, vcd_path.string());

  out << "simulated '" << n.name << "' for " << t.horizon_ps << " ps, " << t.total_events
      << " events\n";
  for (const auto& net : t.net_order) {
    out << "toggles " << net << " " << t.wave(net).toggles << "\n";
  }
  out << vcd_path.string() << "\n";
  return kExitOk;
}

int run_char(const RunConfig& config, bool gated_bench, std::ostream& out, std::ostream& err) {
  (void)err;
  LibraryProfile profile = resolve_profile(config.profile);
  TimingBench bench = gated_bench ? build_gated_bench(profile) : build_ungated_bench(profile);
  TimingReport r =
      characterize_ff(bench, profile, config.clock_period_ps, config.epsilon_ps, config.duty);

  fs::create_directories(config.output_dir);
  ReportMeta meta = meta_for(config);
  fs::path txt = fs::path(config.output_dir) / "timing.txt";
  fs::path kv = fs::path(config.output_dir) / "timing.kv";
  write_file(txt, render_timing_report(r, config.units, meta));
  write_file(kv, render_timing_kv(r, nullptr, meta));
  out << render_timing_report(r, config.units, meta);
  out << txt.string() << "\n" << kv.string() << "\n";
  return kExitOk;
}

int run_power(const RunConfig& config, const std::string& gated_path,
              const std::string& ungated_path, std::ostream& out, std::ostream& err) {
  (void)err;
  LibraryProfile profile = resolve_profile(config.profile);
  const InterfaceTable table = profile.interface_table();
  Netlist gated = load_netlist_file(gated_path, table);
  Netlist ungated = load_netlist_file(ungated_path, table);
  Stimulus s = load_stimulus(config.stimulus_path);

  ComparisonReport r = compare(gated, ungated, profile, s, sim_options(config));

  fs::create_directories(config.output_dir);
  ReportMeta meta = meta_for(config);
  fs::path txt = fs::path(config.output_dir) / "power.txt";
  fs::path kv = fs::path(config.output_dir) / "power.kv";
  write_file(txt, render_power_comparison(r, profile.name, meta));
  write_file(kv, render_power_kv(r, meta));
  out << render_power_comparison(r, profile.name, meta);
  out << txt.string() << "\n" << kv.string() << "\n";
  return kExitOk;
}

int run_mc(const RunConfig& config, std::ostream& out, std::ostream& err) {
  (void)err;
  LibraryProfile profile = resolve_profile(config.profile);
  const InterfaceTable table = profile.interface_table();
  Netlist n = load_netlist_file(config.netlist_path, table);
  Stimulus s = load_stimulus(config.stimulus_path);

  VariationResult r = run_variation(n, profile, s, config.perturbation, config.trials, config.seed);

  fs::create_directories(config.output_dir);
  ReportMeta meta = meta_for(config);
  fs::path txt = fs::path(config.output_dir) / "variation.txt";
  fs::path kv = fs::path(config.output_dir) / "variation.kv";
  write_file(txt, render_variation(r, meta));
  write_file(kv, render_variation_kv(r, meta));
  out << render_variation(r, meta);
  out << txt.string() << "\n" << kv.string() << "\n";
  return r.failures == 0 ? kExitOk : kExitAnalysis;
}

int run_pipeline(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.width < 1) {
    err << "pipeline: width must be >= 1\n";
    return kExitUsage;
  }
  LibraryProfile profile = resolve_profile(config.profile);
  const InterfaceTable table = profile.interface_table();
  fs::create_directories(config.output_dir);
  fs::path dir(config.output_dir);
  ReportMeta meta = meta_for(config);

  std::string stage = "setup";
  try {
    Netlist ungated = build_register_demo(config.width);
    auto [gated, greport] = insert_clock_gating(ungated, profile, config.mode);
    apply_demo_net_names(gated, config.width);

    Stimulus stim;
    if (!config.stimulus_path.empty()) {
      stim = load_stimulus(config.stimulus_path);
    } else {
      stim = make_activity_stimulus(ungated, "clk", config.clock_period_ps, config.cycles,
                                    config.activity, config.seed, config.duty);
    }
    if (stim.clock_period_ps <= 0) {
      err << "pipeline stage 'setup' failed: stimulus must carry a clock directive\n";
      return kExitInput;
    }

    // equivalence gate: gated and ungated must agree cycle by cycle
    stage = "equivalence";
    SimOptions opt;
    opt.init_ff_zero = true;
    Trace tg = simulate(gated, profile, stim, opt);
    Trace tu = simulate(ungated, profile, stim, opt);
    int cycles = static_cast<int>(stim.horizon_ps / stim.clock_period_ps) - 2;
    auto samples = cycle_sample_times(stim.clock_period_ps, std::max(cycles, 1));
    auto mismatch = first_mismatch(tu, tg, ungated.outputs, samples);

    stage = "waveforms";
    write_vcd(tg, (dir / "gated.vcd").string());
    write_vcd(tu, (dir / "ungated.vcd").string());

    if (mismatch) {
      long cycle = std::lround((mismatch->time_ps + 1.0) / stim.clock_period_ps) - 1;
      err << "pipeline stage 'equivalence' failed: first divergence at cycle " << cycle
          << " (t=" << mismatch->time_ps << " ps): net " << mismatch->net << " ungated="
          << to_char(mismatch->a) << " gated=" << to_char(mismatch->b) << "\n";
      return kExitAnalysis;
    }

    // (a) timing analysis
    stage = "timing";
    TimingBench gated_bench = build_gated_bench(profile);
    TimingBench ungated_bench = build_ungated_bench(profile);
    TimingReport rg = characterize_ff(gated_bench, profile, config.clock_period_ps,
                                      config.epsilon_ps, config.duty);
    TimingReport ru = characterize_ff(ungated_bench, profile, config.clock_period_ps,
                                      config.epsilon_ps, config.duty);
    write_file(dir / "timing.txt", render_timing_comparison(rg, ru, config.units, meta));
    write_file(dir / "timing.kv", render_timing_kv(rg, &ru, meta));

    // (b) power analysis
    stage = "power";
    ComparisonReport pr = compare(gated, ungated, profile, stim, opt);
    write_file(dir / "power.txt", render_power_comparison(pr, profile.name, meta));
    write_file(dir / "power.kv", render_power_kv(pr, meta));

    // (c) process variation
    stage = "variation";
    VariationResult vr =
        run_variation(gated, profile, stim, config.perturbation, config.trials, config.seed);
    write_file(dir / "variation.txt", render_variation(vr, meta));
    write_file(dir / "variation.kv", render_variation_kv(vr, meta));

    out << "equivalence: ok\n";
    out << "timing: setup " << rg.setup_ps << " ps, hold " << rg.hold_ps << " ps (gated bench)\n";
    out << "power: savings " << pr.savings_percent << " %\n";
    out << "variation: " << vr.failures << "/" << vr.trials << " failures\n";
    for (const char* f : {"timing.txt", "timing.kv", "power.txt", "power.kv", "variation.txt",
                          "variation.kv", "gated.vcd", "ungated.vcd"}) {
      out << (dir / f).string() << "\n";
    }
    if (vr.failures > 0) {
      err << "pipeline stage 'variation' failed: " << vr.failures << " unstable trials\n";
      return kExitAnalysis;
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "pipeline stage '" << stage << "' failed: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::runtime_error& e) {
    err << "pipeline stage '" << stage << "' failed: " << e.what() << "\n";
    return kExitAnalysis;
  }
}

}  // namespace cgforge
