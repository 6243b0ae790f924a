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

#include "cgforge/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <queue>
#include <sstream>

namespace cgforge {

char to_char(LogicValue v) {
  switch (v) {
    case LogicValue::Zero: return '0';
    case LogicValue::One: return '1';
    case LogicValue::X: return 'x';
  }
  return '?';
}

std::optional<LogicValue> logic_value_from_char(char c) {
  if (c == '0') return LogicValue::Zero;
  if (c == '1') return LogicValue::One;
  if (c == 'x' || c == 'X') return LogicValue::X;
  return std::nullopt;
}

LogicValue not3(LogicValue a) {
  if (a == LogicValue::X) return LogicValue::X;
  return a == LogicValue::Zero ? LogicValue::One : LogicValue::Zero;
}

LogicValue and3(LogicValue a, LogicValue b) {
  if (a == LogicValue::Zero || b == LogicValue::Zero) return LogicValue::Zero;
  if (a == LogicValue::One && b == LogicValue::One) return LogicValue::One;
  return LogicValue::X;
}

LogicValue nand3(LogicValue a, LogicValue b) { return not3(and3(a, b)); }

LogicValue xor3(LogicValue a, LogicValue b) {
  if (a == LogicValue::X || b == LogicValue::X) return LogicValue::X;
  return a == b ? LogicValue::Zero : LogicValue::One;
}

// ---------------------------------------------------------------------------
// Stimulus

Stimulus parse_stimulus(std::istream& in) {
  Stimulus s;
  std::string line;
  int lineno = 0;
  bool horizon_seen = false;
  double last_time = 0;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;

    auto bad = [&](const std::string& msg) {
      throw ParseError("stimulus: " + msg, lineno);
    };

    if (first == "horizon") {
      if (!(ls >> s.horizon_ps) || s.horizon_ps < 0) bad("expected 'horizon <ps>'");
      horizon_seen = true;
    } else if (first == "clock") {
      if (!s.clock_net.empty()) bad("only one clock directive is supported");
      if (!(ls >> s.clock_net >> s.clock_period_ps)) bad("expected 'clock <net> <period_ps> [<duty>]'");
      if (s.clock_period_ps <= 0) bad("clock period must be positive");
      if (ls >> s.clock_duty) {
        if (!(s.clock_duty > 0 && s.clock_duty < 1)) bad("clock duty must be in (0,1)");
      } else {
        s.clock_duty = 0.5;
      }
    } else {
      StimulusEvent ev;
      try {
        ev.time_ps = std::stod(first);
      } catch (const std::exception&) {
        bad("expected '<time_ps> <net> <0|1|x>', 'horizon' or 'clock'");
      }
      std::string value;
      if (!(ls >> ev.net >> value) || value.size() != 1) bad("expected '<time_ps> <net> <0|1|x>'");
      auto v = logic_value_from_char(value[0]);
      if (!v) bad("bad logic value '" + value + "'");
      ev.value = *v;
      if (ev.time_ps < 0) bad("negative event time");
      if (ev.time_ps < last_time) bad("event times must be non-decreasing");
      last_time = ev.time_ps;
      s.events.push_back(std::move(ev));
    }
  }
  if (!horizon_seen) s.horizon_ps = last_time;
  if (s.horizon_ps < last_time) {
    throw ParseError("stimulus: horizon precedes the last event");
  }
  for (const auto& ev : s.events) {
    if (ev.net == s.clock_net) {
      throw ParseError("stimulus: net '" + ev.net + "' has both a clock directive and explicit events");
    }
  }
  return s;
}

Stimulus parse_stimulus(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_stimulus(in);
}

Stimulus load_stimulus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stimulus file '" + path + "'");
  return parse_stimulus(in);
}

namespace {

std::string fmt_ps(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

std::string write_stimulus(const Stimulus& s) {
  std::ostringstream out;
  out << "horizon " << fmt_ps(s.horizon_ps) << "\n";
  if (!s.clock_net.empty()) {
    out << "clock " << s.clock_net << ' ' << fmt_ps(s.clock_period_ps) << ' '
        << fmt_ps(s.clock_duty) << "\n";
  }
  for (const auto& ev : s.events) {
    out << fmt_ps(ev.time_ps) << ' ' << ev.net << ' ' << to_char(ev.value) << "\n";
  }
  return out.str();
}

Stimulus make_activity_stimulus(const Netlist& n, const std::string& clock_net,
                                double period_ps, int cycles, double activity,
                                std::uint64_t seed, double duty) {
  if (cycles < 1) throw std::invalid_argument("cycles must be >= 1");
  if (!(activity >= 0 && activity <= 1)) throw std::invalid_argument("activity must be in [0,1]");

  Stimulus s;
  s.clock_net = clock_net;
  s.clock_period_ps = period_ps;
  s.clock_duty = duty;
  s.horizon_ps = (cycles + 2) * period_ps;

  std::vector<std::string> data_nets;
  for (const auto& in : n.inputs) {
    if (in != clock_net) data_nets.push_back(in);
  }
  for (const auto& net : data_nets) {
    s.events.push_back({0.0, net, LogicValue::Zero});
  }

  // splitmix-style stream keeps data patterns identical across library
  // versions and platforms.
  std::uint64_t state = seed + 0x9e3779b97f4a7c15ull;
  auto next_u64 = [&state]() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  };
  auto next_unit = [&]() { return (next_u64() >> 11) * 0x1.0p-53; };

  std::vector<LogicValue> value(data_nets.size(), LogicValue::Zero);
  for (int k = 1; k <= cycles; ++k) {
    double t = k * period_ps + 0.75 * period_ps;
    for (std::size_t i = 0; i < data_nets.size(); ++i) {
      if (next_unit() < activity) {
        value[i] = not3(value[i]);
        s.events.push_back({t, data_nets[i], value[i]});
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Trace

LogicValue NetWave::value_at(double time_ps) const {
  // last change at or before time_ps; changes[0] is the t=0 value
  auto it = std::upper_bound(changes.begin(), changes.end(), time_ps,
                             [](double t, const Change& c) { return t < c.time_ps; });
  if (it == changes.begin()) return changes.front().value;
  return std::prev(it)->value;
}

const NetWave& Trace::wave(const std::string& net) const {
  auto it = waves.find(net);
  if (it == waves.end()) throw SimError("trace has no net '" + net + "'");
  return it->second;
}

long Trace::cell_output_toggles(const std::string& instance) const {
  auto it = cell_toggles.find(instance);
  if (it == cell_toggles.end()) throw SimError("trace has no instance '" + instance + "'");
  return it->second;
}

long count_toggles(const Trace& t, const std::string& net) {
  return t.wave(net).toggles;
}

std::vector<double> cycle_sample_times(double period_ps, int cycles, double margin_ps) {
  std::vector<double> out;
  out.reserve(cycles);
  for (int k = 2; k <= cycles + 1; ++k) out.push_back(k * period_ps - margin_ps);
  return out;
}

std::optional<SampleMismatch> first_mismatch(const Trace& a, const Trace& b,
                                             const std::vector<std::string>& nets,
                                             const std::vector<double>& sample_times) {
  for (double t : sample_times) {
    for (const auto& net : nets) {
      LogicValue va = a.wave(net).value_at(t);
      LogicValue vb = b.wave(net).value_at(t);
      if (va != vb) return SampleMismatch{t, net, va, vb};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Simulator

namespace {

struct Gate {
  CellFn fn;
  std::string name;
  int in0 = -1;
  int in1 = -1;
  int out = -1;
  double t_rise = 1;
  double t_fall = 1;
  double t_setup = 0;
  double t_hold = 0;
  // flip-flop state
  LogicValue state = LogicValue::X;
  double last_d_change = -1e300;
  double last_capture = -1e300;
};

struct Net {
  std::string name;
  LogicValue value = LogicValue::X;
  std::uint64_t pending_gen = 0;  // 0 = nothing pending
  LogicValue pending_value = LogicValue::X;
  std::vector<std::pair<int, int>> fanout;  // gate index, pin slot (0=A/D, 1=B/CLK)
  NetWave wave;
};

struct Event {
  double time;
  const std::string* net_name;
  std::uint64_t seq;
  int net;
  LogicValue value;
  std::uint64_t gen;  // 0 = source event (stimulus/init), always valid
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (*a.net_name != *b.net_name) return *a.net_name > *b.net_name;
    return a.seq > b.seq;
  }
};

}  // namespace

Trace simulate(const Netlist& n, const LibraryProfile& p, const Stimulus& s,
               const SimOptions& options) {
  const InterfaceTable table = p.interface_table();
  auto diags = validate(n, table);
  if (!diags.empty()) throw SimError("netlist invalid: " + diags.front().message);

  // --- compile ---
  std::map<std::string, int> net_index;
  std::vector<Net> nets;
  nets.reserve(n.nets.size());
  for (const auto& name : n.nets) {
    net_index[name] = static_cast<int>(nets.size());
    Net net;
    net.name = name;
    nets.push_back(std::move(net));
  }

  std::vector<Gate> gates;
  gates.reserve(n.instances.size());
  for (const auto& inst : n.instances) {
    const CellSpec& spec = p.at(inst.cell_type);
    Gate g;
    g.fn = spec.function;
    g.name = inst.name;
    g.t_rise = spec.t_rise_ps;
    g.t_fall = spec.t_fall_ps;
    g.t_setup = spec.t_setup_ps;
    g.t_hold = spec.t_hold_ps;
    if (options.delay_scale) {
      auto it = options.delay_scale->find(inst.name);
      if (it != options.delay_scale->end()) {
        g.t_rise *= it->second.first;
        g.t_fall *= it->second.second;
      }
    }
    int idx = static_cast<int>(gates.size());
    if (g.fn == CellFn::DffConv) {
      g.in0 = net_index.at(inst.pins.at("D"));
      g.in1 = net_index.at(inst.pins.at("CLK"));
      g.out = net_index.at(inst.pins.at("Q"));
      if (options.init_ff_zero) g.state = LogicValue::Zero;
    } else {
      g.in0 = net_index.at(inst.pins.at("A"));
      g.out = net_index.at(inst.pins.at("Y"));
      nets[g.in0].fanout.push_back({idx, 0});
      if (inst.pins.count("B")) {
        g.in1 = net_index.at(inst.pins.at("B"));
        nets[g.in1].fanout.push_back({idx, 1});
      }
    }
    if (g.fn == CellFn::DffConv) {
      nets[g.in0].fanout.push_back({idx, 0});  // D
      nets[g.in1].fanout.push_back({idx, 1});  // CLK
    }
    gates.push_back(std::move(g));
  }

  // --- stimulus ---
  std::set<std::string> input_set(n.inputs.begin(), n.inputs.end());
  std::vector<StimulusEvent> source = s.events;
  if (!s.clock_net.empty()) {
    if (!input_set.count(s.clock_net)) {
      throw SimError("clock net '" + s.clock_net + "' is not a module input");
    }
    source.push_back({0.0, s.clock_net, LogicValue::Zero});
    for (int k = 1;; ++k) {
      double rise = k * s.clock_period_ps;
      if (rise > s.horizon_ps) break;
      source.push_back({rise, s.clock_net, LogicValue::One});
      double fall = rise + s.clock_duty * s.clock_period_ps;
      if (fall <= s.horizon_ps) source.push_back({fall, s.clock_net, LogicValue::Zero});
    }
  }
  std::stable_sort(source.begin(), source.end(),
                   [](const StimulusEvent& a, const StimulusEvent& b) {
                     return a.time_ps < b.time_ps;
                   });
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto& ev = source[i];
    if (!input_set.count(ev.net)) {
      throw SimError("stimulus drives net '" + ev.net + "', which is not a module input");
    }
    if (i > 0 && source[i - 1].time_ps == ev.time_ps && source[i - 1].net == ev.net) {
      throw SimError("duplicate stimulus event on net '" + ev.net + "' at " +
                     fmt_ps(ev.time_ps) + " ps");
    }
  }

  std::priority_queue<Event, std::vector<Event>, EventAfter> queue;
  std::uint64_t seq = 0;
  std::uint64_t gen_counter = 0;

  for (const auto& ev : source) {
    int idx = net_index.count(ev.net) ? net_index.at(ev.net) : -1;
    if (idx < 0) throw SimError("stimulus net '" + ev.net + "' not in netlist");
    queue.push(Event{ev.time_ps, &nets[idx].name, seq++, idx, ev.value, 0});
  }
  if (options.init_ff_zero) {
    for (const auto& g : gates) {
      if (g.fn == CellFn::DffConv) {
        queue.push(Event{0.0, &nets[g.out].name, seq++, g.out, LogicValue::Zero, 0});
      }
    }
  }

  for (auto& net : nets) net.wave.changes.push_back({0.0, LogicValue::X});

  auto schedule = [&](int net_idx, LogicValue v_new, double t, double delay) {
    Net& net = nets[net_idx];
    LogicValue target = net.pending_gen ? net.pending_value : net.value;
    if (v_new == target) return;
    if (v_new == net.value) {
      // pulse narrower than the cell delay: inertial cancellation
      net.pending_gen = 0;
      return;
    }
    net.pending_gen = ++gen_counter;
    net.pending_value = v_new;
    queue.push(Event{t + delay, &net.name, seq++, net_idx, v_new, net.pending_gen});
  };

  auto delay_for = [](const Gate& g, LogicValue target) {
    switch (target) {
      case LogicValue::One: return g.t_rise;
      case LogicValue::Zero: return g.t_fall;
      case LogicValue::X: return std::min(g.t_rise, g.t_fall);
    }
    return g.t_rise;
  };

  auto eval_comb = [&](const Gate& g) {
    LogicValue a = nets[g.in0].value;
    LogicValue b = g.in1 >= 0 ? nets[g.in1].value : LogicValue::X;
    switch (g.fn) {
      case CellFn::Inv:
      case CellFn::LectorInv: return not3(a);
      case CellFn::And2:
      case CellFn::LectorAnd2: return and3(a, b);
      case CellFn::Nand2: return nand3(a, b);
      case CellFn::Xor2: return xor3(a, b);
      default: return LogicValue::X;
    }
  };

  auto note_violation = [&](const std::string& msg) {
    if (options.violations) options.violations->push_back(msg);
  };

  // capture on a definite or possible rising edge of CLK
  auto dff_clk_edge = [&](Gate& g, LogicValue old_clk, LogicValue new_clk, double t) {
    bool definite = old_clk == LogicValue::Zero && new_clk == LogicValue::One;
    bool possible = (old_clk == LogicValue::X && new_clk == LogicValue::One) ||
                    (old_clk == LogicValue::Zero && new_clk == LogicValue::X);
    if (!definite && !possible) return;

    LogicValue d = nets[g.in0].value;
    LogicValue captured;
    if (definite) {
      captured = d;
      if (options.timing_checks && t - g.last_d_change < g.t_setup) {
        note_violation("setup violation on '" + g.name + "' at " + fmt_ps(t) +
                       " ps: D changed " + fmt_ps(t - g.last_d_change) + " ps before the edge");
        captured = LogicValue::X;
      }
      g.last_capture = t;
    } else {
      // the edge may or may not have happened; only a no-op capture is safe
      captured = (d != LogicValue::X && d == g.state) ? g.state : LogicValue::X;
    }
    if (captured == g.state && g.state != LogicValue::X) return;
    g.state = captured;
    schedule(g.out, captured, t, delay_for(g, captured));
  };

  // --- run ---
  Trace trace;
  trace.module_name = n.name;
  trace.horizon_ps = s.horizon_ps;
  trace.clock_period_ps = s.clock_period_ps;
  trace.clock_net = s.clock_net;

  std::uint64_t processed = 0;
  while (!queue.empty()) {
    Event ev = queue.top();
    queue.pop();
    if (ev.time > s.horizon_ps) break;
    Net& net = nets[ev.net];
    if (ev.gen != 0) {
      if (ev.gen != net.pending_gen) continue;  // superseded
      net.pending_gen = 0;
    }
    if (net.value == ev.value) continue;

    if (++processed > options.max_events) {
      throw SimError("event cap of " + std::to_string(options.max_events) +
                     " exceeded at " + fmt_ps(ev.time) + " ps; circuit is probably oscillating");
    }

    LogicValue old = net.value;
    net.value = ev.value;
    if (ev.time == 0.0 && net.wave.changes.size() == 1 && net.wave.changes[0].time_ps == 0.0) {
      net.wave.changes[0].value = ev.value;  // settled initial value
    } else {
      net.wave.changes.push_back({ev.time, ev.value});
      if (old != LogicValue::X && ev.value != LogicValue::X) {
        net.wave.toggles++;
      } else {
        net.wave.x_changes++;
      }
    }

    for (auto [gate_idx, slot] : net.fanout) {
      Gate& g = gates[gate_idx];
      if (g.fn == CellFn::DffConv) {
        if (slot == 1) {
          dff_clk_edge(g, old, ev.value, ev.time);
        } else {
          if (options.timing_checks && ev.time - g.last_capture < g.t_hold) {
            note_violation("hold violation on '" + g.name + "' at " + fmt_ps(ev.time) +
                           " ps: D changed " + fmt_ps(ev.time - g.last_capture) +
                           " ps after the capturing edge");
            g.state = LogicValue::X;
            schedule(g.out, LogicValue::X, ev.time, delay_for(g, LogicValue::X));
          }
          g.last_d_change = ev.time;
        }
      } else {
        LogicValue v_new = eval_comb(g);
        schedule(g.out, v_new, ev.time, delay_for(g, v_new));
      }
    }
  }

  // --- collect ---
  trace.total_events = processed;
  std::set<std::string> emitted;
  for (const auto& name : n.inputs) {
    if (emitted.insert(name).second) trace.net_order.push_back(name);
  }
  for (const auto& name : n.outputs) {
    if (emitted.insert(name).second) trace.net_order.push_back(name);
  }
  for (const auto& name : n.nets) {
    if (emitted.insert(name).second) trace.net_order.push_back(name);
  }
  for (auto& net : nets) trace.waves[net.name] = std::move(net.wave);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& inst = n.instances[i];
    const CellSpec& spec = p.at(inst.cell_type);
    const std::string& out_net = nets[gates[i].out].name;
    trace.cell_toggles[inst.name] = trace.waves.at(out_net).toggles;
    // Flip-flops charge switching energy on their clock pin (the load the
    // gating pass removes); combinational cells charge on their output.
    if (spec.function == CellFn::DffConv) {
      trace.switch_net_of_cell[inst.name] = inst.pins.at("CLK");
    } else {
      trace.switch_net_of_cell[inst.name] = out_net;
    }
  }
  return trace;
}

}  // namespace cgforge
