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

#ifndef CGFORGE_POWER_HPP_
#define CGFORGE_POWER_HPP_

#include <cstdint>
#include <vector>

#include "cgforge/netlist.hpp"
#include "cgforge/sim.hpp"
#include "cgforge/techlib.hpp"

namespace cgforge {

struct PowerReport {
  double p_dynamic_uw = 0;
  double p_contention_uw = 0;
  double p_leakage_uw = 0;
  double p_total_uw = 0;
  double sim_window_ps = 0;
  double clock_freq_ghz = 0;  // 0 when the stimulus carries no clock
  long transistor_count = 0;
};

struct ComparisonReport {
  PowerReport gated;
  PowerReport ungated;
  double savings_percent = 0;  // 100 * (ungated - gated) / ungated
};

class PowerError : public std::runtime_error {
 public:
  explicit PowerError(const std::string& msg) : std::runtime_error(msg) {}
};

// Activity-based average power over the trace window. Dynamic and
// contention energy are charged per full output toggle for combinational
// cells and per clock-pin toggle for flip-flops (the flop's internal clock
// load; the term clock gating removes). Leakage is the static sum. Module
// inputs are ideal sources and cost nothing.
PowerReport estimate_power(const Trace& t, const Netlist& n, const LibraryProfile& p);

// Simulates both netlists under the same stimulus and compares totals.
ComparisonReport compare(const Netlist& gated, const Netlist& ungated,
                         const LibraryProfile& p, const Stimulus& s,
                         const SimOptions& options = {});

double savings_percent(double gated_total_uw, double ungated_total_uw);

struct SweepPoint {
  double activity = 0;
  double savings_percent = 0;
};

// Seeded random-data sweep over activity factors; exposes the break-even
// behavior of the gating overhead.
std::vector<SweepPoint> activity_sweep(const Netlist& gated, const Netlist& ungated,
                                       const LibraryProfile& p,
                                       const std::vector<double>& activities, int cycles,
                                       std::uint64_t seed, double period_ps = 2000,
                                       const std::string& clock_net = "clk");

}  // namespace cgforge

#endif  // CGFORGE_POWER_HPP_
