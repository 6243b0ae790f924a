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

#ifndef CGFORGE_SIM_HPP_
#define CGFORGE_SIM_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cgforge/netlist.hpp"
#include "cgforge/techlib.hpp"

namespace cgforge {

// Three-valued logic. X propagates pessimistically except through a
// controlling input (AND with a 0 input resolves to 0).
enum class LogicValue : std::uint8_t { Zero = 0, One = 1, X = 2 };

char to_char(LogicValue v);
std::optional<LogicValue> logic_value_from_char(char c);

LogicValue not3(LogicValue a);
LogicValue and3(LogicValue a, LogicValue b);
LogicValue nand3(LogicValue a, LogicValue b);
LogicValue xor3(LogicValue a, LogicValue b);

struct StimulusEvent {
  double time_ps = 0;
  std::string net;
  LogicValue value = LogicValue::X;

  bool operator==(const StimulusEvent&) const = default;
};

// Input waveform description. A `clock` directive expands into a square
// wave when the stimulus is bound to a netlist; the directive is kept as
// metadata so writers can round-trip it.
struct Stimulus {
  std::vector<StimulusEvent> events;  // non-decreasing times
  double horizon_ps = 0;
  std::string clock_net;      // empty when no clock directive
  double clock_period_ps = 0;
  double clock_duty = 0.5;

  bool operator==(const Stimulus&) const = default;
};

Stimulus parse_stimulus(std::istream& in);
Stimulus parse_stimulus(std::string_view text);
Stimulus load_stimulus(const std::string& path);
std::string write_stimulus(const Stimulus& s);

// Seeded synchronous stimulus: clock with the given period/duty, each data
// input toggling with per-cycle probability `activity` at three quarters of
// the cycle (safely inside the clock-low phase). All data inputs start 0 at
// t=0.
Stimulus make_activity_stimulus(const Netlist& n, const std::string& clock_net,
                                double period_ps, int cycles, double activity,
                                std::uint64_t seed, double duty = 0.5);

struct NetWave {
  struct Change {
    double time_ps;
    LogicValue value;
  };
  std::vector<Change> changes;  // changes[0] is the value at t=0
  long toggles = 0;      // full 0<->1 transitions
  long x_changes = 0;    // transitions involving X

  LogicValue value_at(double time_ps) const;
};

// Complete simulation record.
struct Trace {
  std::string module_name;
  std::vector<std::string> net_order;  // stable order for export
  std::map<std::string, NetWave> waves;
  double horizon_ps = 0;
  double clock_period_ps = 0;  // carried over from the stimulus, 0 if none
  std::string clock_net;
  std::uint64_t total_events = 0;

  const NetWave& wave(const std::string& net) const;
  long cell_output_toggles(const std::string& instance) const;
  std::map<std::string, long> cell_toggles;  // instance -> output net toggles
  std::map<std::string, std::string> switch_net_of_cell;  // instance -> charged net
};

class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SimOptions {
  bool init_ff_zero = false;    // force flip-flop state (and Q nets) to 0 at t=0
  bool timing_checks = false;   // enforce per-cell setup/hold windows
  std::uint64_t max_events = 50'000'000;  // oscillation guard
  // instance -> {rise scale, fall scale}; used by the variation engine
  const std::map<std::string, std::pair<double, double>>* delay_scale = nullptr;
  std::vector<std::string>* violations = nullptr;  // setup/hold messages, optional
};

// Deterministic event-driven simulation with inertial delays.
Trace simulate(const Netlist& n, const LibraryProfile& p, const Stimulus& s,
               const SimOptions& options = {});

long count_toggles(const Trace& t, const std::string& net);

// Sampling times just before each rising clock edge: k*T - margin for
// k = 2 .. cycles+1 (each reads the capture of edge k-1).
std::vector<double> cycle_sample_times(double period_ps, int cycles, double margin_ps = 1.0);

struct SampleMismatch {
  double time_ps;
  std::string net;
  LogicValue a;
  LogicValue b;
};

// First cycle-sampled divergence between two traces on the given nets, if
// any. X differs from everything including X unless both sides agree.
std::optional<SampleMismatch> first_mismatch(const Trace& a, const Trace& b,
                                             const std::vector<std::string>& nets,
                                             const std::vector<double>& sample_times);

}  // namespace cgforge

#endif  // CGFORGE_SIM_HPP_
