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

#include "cgforge/power.hpp"

#include <algorithm>

namespace cgforge {

namespace {
// 1 fJ / 1 ps = 1 mW; reports are in microwatts
constexpr double kFjPerPsToUw = 1000.0;
}  // namespace

PowerReport estimate_power(const Trace& t, const Netlist& n, const LibraryProfile& p) {
  if (t.horizon_ps <= 0) throw PowerError("trace window must be positive");
  if (t.module_name != n.name) {
    throw PowerError("trace was recorded for module '" + t.module_name + "', not '" + n.name + "'");
  }

  double dynamic_fj = 0;
  double contention_fj = 0;
  for (const auto& inst : n.instances) {
    const CellSpec& spec = p.at(inst.cell_type);
    auto net_it = t.switch_net_of_cell.find(inst.name);
    if (net_it == t.switch_net_of_cell.end()) {
      throw PowerError("trace does not cover instance '" + inst.name + "'");
    }
    long toggles = t.wave(net_it->second).toggles;
    dynamic_fj += toggles * spec.e_toggle_fj;
    contention_fj += toggles * spec.e_contention_fj;
  }

  PowerReport r;
  r.sim_window_ps = t.horizon_ps;
  r.p_dynamic_uw = dynamic_fj / t.horizon_ps * kFjPerPsToUw;
  r.p_contention_uw = contention_fj / t.horizon_ps * kFjPerPsToUw;
  r.p_leakage_uw = effective_leakage(n, p) / 1000.0;  // nW -> uW
  r.p_total_uw = r.p_dynamic_uw + r.p_contention_uw + r.p_leakage_uw;
  r.clock_freq_ghz = t.clock_period_ps > 0 ? 1000.0 / t.clock_period_ps : 0;
  r.transistor_count = transistor_total(n, p);
  return r;
}

double savings_percent(double gated_total_uw, double ungated_total_uw) {
  if (ungated_total_uw <= 0) throw PowerError("ungated total power must be positive");
  return 100.0 * (ungated_total_uw - gated_total_uw) / ungated_total_uw;
}

ComparisonReport compare(const Netlist& gated, const Netlist& ungated,
                         const LibraryProfile& p, const Stimulus& s,
                         const SimOptions& options) {
  if (gated.inputs != ungated.inputs) {
    throw PowerError("gated and ungated netlists expose different input interfaces");
  }
  Trace tg = simulate(gated, p, s, options);
  Trace tu = simulate(ungated, p, s, options);
  ComparisonReport r;
  r.gated = estimate_power(tg, gated, p);
  r.ungated = estimate_power(tu, ungated, p);
  r.savings_percent = savings_percent(r.gated.p_total_uw, r.ungated.p_total_uw);
  return r;
}

std::vector<SweepPoint> activity_sweep(const Netlist& gated, const Netlist& ungated,
                                       const LibraryProfile& p,
                                       const std::vector<double>& activities, int cycles,
                                       std::uint64_t seed, double period_ps,
                                       const std::string& clock_net) {
  if (cycles < 100) throw PowerError("activity sweep needs at least 100 cycles");
  std::vector<SweepPoint> out;
  out.reserve(activities.size());
  SimOptions opt;
  opt.init_ff_zero = true;
  for (double alpha : activities) {
    Stimulus s = make_activity_stimulus(ungated, clock_net, period_ps, cycles, alpha, seed);
    ComparisonReport r = compare(gated, ungated, p, s, opt);
    out.push_back({alpha, r.savings_percent});
  }
  return out;
}

}  // namespace cgforge
