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

#ifndef CGFORGE_CHARACTERIZE_HPP_
#define CGFORGE_CHARACTERIZE_HPP_

#include <cstdint>
#include <string>

#include "cgforge/gating.hpp"
#include "cgforge/netlist.hpp"
#include "cgforge/sim.hpp"
#include "cgforge/techlib.hpp"

namespace cgforge {

// Single flip-flop test bench plus the probe points the measurements need.
// Setup and hold are reported against the positive edge of `ref_net`
// (ckg_bar for a gated bench, the bare clock otherwise); propagation delay
// is measured from `capture_net` (the net on the flip-flop's CLK pin).
struct TimingBench {
  Netlist netlist;
  std::string clock_input;
  std::string data_input;
  std::string ff_name;
  std::string capture_net;
  std::string ref_net;
  std::string q_net;
  bool ref_is_inverted = false;  // ref rises when the capture pulse ends
};

TimingBench build_gated_bench(const LibraryProfile& p);
TimingBench build_ungated_bench(const LibraryProfile& p);

struct TimingReport {
  double setup_ps = 0;
  double hold_ps = 0;  // negative values are legal
  double delay_rise_ps = 0;
  double delay_fall_ps = 0;
  double delay_mean_ps = 0;
  double latency_ps = 0;  // setup + delay_mean
  double epsilon_ps = 0;
  double clock_period_ps = 0;
};

struct VariationResult {
  int trials = 0;
  double perturbation = 0;
  int failures = 0;
  std::uint64_t seed = 0;
};

class CharError : public std::runtime_error {
 public:
  explicit CharError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CharConfig {
  double clock_period_ps = 2000;
  double epsilon_ps = 1.0;
  double duty = 0.5;
};

struct DelayMeasurement {
  double delay_rise_ps = 0;
  double delay_fall_ps = 0;
  double delay_mean_ps = 0;
};

// Clock-to-output propagation through the bench flip-flop, measured between
// the triggering capture_net edge and the resulting Q transition.
DelayMeasurement measure_delay(const TimingBench& bench, const LibraryProfile& p);

// Smallest data-to-reference-edge interval that still captures the intended
// value, found by bisection after a monotone pass/fail pre-scan. Both data
// polarities are measured; the worst case is returned.
double find_setup(const TimingBench& bench, const LibraryProfile& p,
                  double clock_period_ps, double epsilon_ps, double duty = 0.5);

// Post-edge analogue of find_setup; negative results are expected when the
// data path outlasts the reference path.
double find_hold(const TimingBench& bench, const LibraryProfile& p,
                 double clock_period_ps, double epsilon_ps, double duty = 0.5);

TimingReport characterize_ff(const TimingBench& bench, const LibraryProfile& p,
                             double clock_period_ps, double epsilon_ps, double duty = 0.5);

// Per trial every instance's rise/fall delays scale independently by a
// uniform factor in [1-perturbation, 1+perturbation]; a trial fails when its
// cycle-sampled outputs differ from the nominal run.
VariationResult run_variation(const Netlist& n, const LibraryProfile& p, const Stimulus& s,
                              double perturbation, int trials, std::uint64_t seed);

}  // namespace cgforge

#endif  // CGFORGE_CHARACTERIZE_HPP_
