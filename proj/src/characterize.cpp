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

#include "cgforge/characterize.hpp"

#include <algorithm>
#include <cmath>

namespace cgforge {

TimingBench build_gated_bench(const LibraryProfile& p) {
  Netlist reg = build_register_demo(1);
  auto [gated, report] = insert_clock_gating(reg, p, GatingMode::PerFf);
  TimingBench bench;
  bench.netlist = std::move(gated);
  bench.clock_input = "clk";
  bench.data_input = "D1";
  bench.ff_name = report.gated_ffs.front();
  bench.capture_net = report.gated_clock_nets.front();
  bench.ref_net = "ckg_bar_" + bench.ff_name;
  bench.q_net = "Q1";
  bench.ref_is_inverted = true;
  return bench;
}

TimingBench build_ungated_bench(const LibraryProfile& p) {
  (void)p;
  TimingBench bench;
  bench.netlist = build_register_demo(1);
  bench.clock_input = "clk";
  bench.data_input = "D1";
  bench.ff_name = "ff1";
  bench.capture_net = "clk";
  bench.ref_net = "clk";
  bench.q_net = "Q1";
  bench.ref_is_inverted = false;
  return bench;
}

namespace {

constexpr double kSampleMargin = 2.0;  // ps before the next edge

struct EdgeQuery {
  // first 0->1 change of `net` at time >= from; nullopt if none
  static std::optional<double> first_rise(const Trace& t, const std::string& net, double from) {
    const NetWave& w = t.wave(net);
    for (std::size_t i = 1; i < w.changes.size(); ++i) {
      if (w.changes[i].time_ps < from) continue;
      if (w.changes[i].value == LogicValue::One &&
          w.changes[i - 1].value == LogicValue::Zero) {
        return w.changes[i].time_ps;
      }
    }
    return std::nullopt;
  }
};

struct Experiment {
  const TimingBench* bench;
  const LibraryProfile* profile;
  double period;
  double duty;
  double edge;         // capture edge under test (time of the clk rise)
  LogicValue from;     // data value before the move
  LogicValue to;       // data value after the move
  LogicValue intent;   // expected Q at the sample point
  double prep_time = -1;  // hold only: when data moved to the captured value

  Trace run(double t_d) const {
    Stimulus s;
    s.clock_net = bench->clock_input;
    s.clock_period_ps = period;
    s.clock_duty = duty;
    s.horizon_ps = edge + 2 * period;
    if (prep_time >= 0) {
      s.events.push_back({0.0, bench->data_input, from});
      s.events.push_back({prep_time, bench->data_input, to});
      s.events.push_back({t_d, bench->data_input, from});
    } else {
      s.events.push_back({0.0, bench->data_input, from});
      s.events.push_back({t_d, bench->data_input, to});
    }
    SimOptions opt;
    opt.init_ff_zero = true;
    opt.timing_checks = true;
    return simulate(bench->netlist, *profile, s, opt);
  }

  bool passes(const Trace& t) const {
    return t.wave(bench->q_net).value_at(edge + period - kSampleMargin) == intent;
  }
};

struct Boundary {
  double pass_t;   // offset of the last passing run
  Trace pass_trace;
};

// Pre-scan + bisection over [lo, hi]. pass_is_left says the passing region
// sits at small offsets. Setup landscapes must show exactly one transition
// (strict). Hold landscapes may contain a narrow passing pocket where a data
// flip races the comparator settle, re-freezing the gated clock; there the
// conservative boundary is the transition next to the stable pass region,
// and only degenerate landscapes abort.
Boundary bisect_boundary(const Experiment& ex, double lo, double hi, double epsilon,
                         bool pass_is_left, bool strict, const char* what) {
  constexpr int kScanPoints = 33;
  std::vector<double> grid(kScanPoints);
  std::vector<bool> ok(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    grid[i] = lo + (hi - lo) * i / (kScanPoints - 1);
    ok[i] = ex.passes(ex.run(grid[i]));
  }
  int transitions = 0;
  for (int i = 1; i < kScanPoints; ++i) {
    if (ok[i] != ok[i - 1]) ++transitions;
  }
  bool any_pass = std::find(ok.begin(), ok.end(), true) != ok.end();
  bool any_fail = std::find(ok.begin(), ok.end(), false) != ok.end();
  if (!any_fail) {
    throw CharError(std::string(what) + " is unconstrained: no failing offset in the search range");
  }
  if (!any_pass) {
    throw CharError(std::string(what) + ": no passing offset in the search range (bench miswired?)");
  }
  bool ends_ok = ok.front() == pass_is_left && ok.back() != pass_is_left;
  if (!ends_ok || (strict && transitions != 1)) {
    throw CharError(std::string(what) + ": pass/fail pre-scan is not monotone over the search range");
  }

  // boundary adjacent to the stable region: first transition when the pass
  // region is on the left, last transition otherwise
  int edge_idx = 0;
  if (pass_is_left) {
    for (int i = 1; i < kScanPoints; ++i) {
      if (ok[i] != ok[i - 1]) {
        edge_idx = i;
        break;
      }
    }
  } else {
    for (int i = 1; i < kScanPoints; ++i) {
      if (ok[i] != ok[i - 1]) edge_idx = i;
    }
  }
  double pass_t = pass_is_left ? grid[edge_idx - 1] : grid[edge_idx];
  double fail_t = pass_is_left ? grid[edge_idx] : grid[edge_idx - 1];

  Trace pass_trace = ex.run(pass_t);
  while (std::abs(fail_t - pass_t) > 0.45 * epsilon) {
    double mid = 0.5 * (pass_t + fail_t);
    Trace t = ex.run(mid);
    if (ex.passes(t)) {
      pass_t = mid;
      pass_trace = std::move(t);
    } else {
      fail_t = mid;
    }
  }
  return Boundary{pass_t, std::move(pass_trace)};
}

// Reference edge for reporting: the positive edge of ref_net belonging to
// the capture under test, read from the passing run itself.
double reference_edge(const Experiment& ex, const Boundary& b, const TimingBench& bench) {
  double from = bench.ref_is_inverted ? ex.edge + 1e-9 : ex.edge - 0.5;
  auto t = EdgeQuery::first_rise(b.pass_trace, bench.ref_net, from);
  if (!t) throw CharError("no reference edge on net '" + bench.ref_net + "' after the capture");
  return *t;
}

double measure_setup_one(const TimingBench& bench, const LibraryProfile& p, double period,
                         double epsilon, double duty, bool rising_data) {
  Experiment ex;
  ex.bench = &bench;
  ex.profile = &p;
  ex.period = period;
  ex.duty = duty;
  ex.edge = 4 * period;
  ex.from = rising_data ? LogicValue::Zero : LogicValue::One;
  ex.to = rising_data ? LogicValue::One : LogicValue::Zero;
  ex.intent = ex.to;

  Boundary b = bisect_boundary(ex, ex.edge - period, ex.edge + period, epsilon,
                               /*pass_is_left=*/true, /*strict=*/true, "setup");
  return reference_edge(ex, b, bench) - b.pass_t;
}

double measure_hold_one(const TimingBench& bench, const LibraryProfile& p, double period,
                        double epsilon, double duty, bool rising_data) {
  Experiment ex;
  ex.bench = &bench;
  ex.profile = &p;
  ex.period = period;
  ex.duty = duty;
  ex.edge = 4 * period;
  // data moves to the captured value in the low phase before the edge,
  // then back at the offset under test
  ex.from = rising_data ? LogicValue::Zero : LogicValue::One;
  ex.to = rising_data ? LogicValue::One : LogicValue::Zero;
  ex.intent = ex.to;
  double fall3 = 3 * period + duty * period;
  ex.prep_time = fall3 + 0.25 * (1 - duty) * period;

  Boundary b = bisect_boundary(ex, ex.edge - 0.25 * period, ex.edge + period, epsilon,
                               /*pass_is_left=*/false, /*strict=*/false, "hold");
  return b.pass_t - reference_edge(ex, b, bench);
}

}  // namespace

DelayMeasurement measure_delay(const TimingBench& bench, const LibraryProfile& p) {
  const double period = 4000;
  Stimulus s;
  s.clock_net = bench.clock_input;
  s.clock_period_ps = period;
  s.clock_duty = 0.5;
  s.horizon_ps = 4 * period;
  s.events.push_back({0.0, bench.data_input, LogicValue::Zero});
  // rise capture at 2T, fall capture at 3T, both with generous setup
  s.events.push_back({1.75 * period, bench.data_input, LogicValue::One});
  s.events.push_back({2.75 * period, bench.data_input, LogicValue::Zero});

  SimOptions opt;
  opt.init_ff_zero = true;
  opt.timing_checks = true;
  Trace t = simulate(bench.netlist, p, s, opt);

  const NetWave& q = t.wave(bench.q_net);
  auto find_change = [&](LogicValue to) -> double {
    for (std::size_t i = 1; i < q.changes.size(); ++i) {
      if (q.changes[i].value == LogicValue::X) {
        throw CharError("X on probe net '" + bench.q_net + "' during delay measurement");
      }
      if (q.changes[i].value == to) return q.changes[i].time_ps;
    }
    throw CharError("Q never transitions to " + std::string(1, to_char(to)) +
                    " (bench miswired?)");
  };
  double q_rise = find_change(LogicValue::One);
  double q_fall = find_change(LogicValue::Zero);

  const NetWave& trigger = t.wave(bench.capture_net);
  auto last_rise_before = [&](double time) -> double {
    double best = -1;
    for (std::size_t i = 1; i < trigger.changes.size(); ++i) {
      if (trigger.changes[i].time_ps > time) break;
      if (trigger.changes[i].value == LogicValue::One &&
          trigger.changes[i - 1].value == LogicValue::Zero) {
        best = trigger.changes[i].time_ps;
      }
    }
    if (best < 0) throw CharError("no triggering edge on '" + bench.capture_net + "'");
    return best;
  };

  DelayMeasurement m;
  m.delay_rise_ps = q_rise - last_rise_before(q_rise);
  m.delay_fall_ps = q_fall - last_rise_before(q_fall);
  m.delay_mean_ps = 0.5 * (m.delay_rise_ps + m.delay_fall_ps);
  return m;
}

double find_setup(const TimingBench& bench, const LibraryProfile& p, double clock_period_ps,
                  double epsilon_ps, double duty) {
  if (epsilon_ps <= 0) throw CharError("epsilon must be positive");
  double a = measure_setup_one(bench, p, clock_period_ps, epsilon_ps, duty, true);
  double b = measure_setup_one(bench, p, clock_period_ps, epsilon_ps, duty, false);
  return std::max(a, b);
}

double find_hold(const TimingBench& bench, const LibraryProfile& p, double clock_period_ps,
                 double epsilon_ps, double duty) {
  if (epsilon_ps <= 0) throw CharError("epsilon must be positive");
  double a = measure_hold_one(bench, p, clock_period_ps, epsilon_ps, duty, true);
  double b = measure_hold_one(bench, p, clock_period_ps, epsilon_ps, duty, false);
  return std::max(a, b);
}

TimingReport characterize_ff(const TimingBench& bench, const LibraryProfile& p,
                             double clock_period_ps, double epsilon_ps, double duty) {
  TimingReport r;
  r.setup_ps = find_setup(bench, p, clock_period_ps, epsilon_ps, duty);
  r.hold_ps = find_hold(bench, p, clock_period_ps, epsilon_ps, duty);
  DelayMeasurement d = measure_delay(bench, p);
  r.delay_rise_ps = d.delay_rise_ps;
  r.delay_fall_ps = d.delay_fall_ps;
  r.delay_mean_ps = d.delay_mean_ps;
  r.latency_ps = r.setup_ps + r.delay_mean_ps;
  r.epsilon_ps = epsilon_ps;
  r.clock_period_ps = clock_period_ps;
  return r;
}

VariationResult run_variation(const Netlist& n, const LibraryProfile& p, const Stimulus& s,
                              double perturbation, int trials, std::uint64_t seed) {
  if (!(perturbation >= 0 && perturbation <= 0.5)) {
    throw CharError("perturbation must be in [0, 0.5]");
  }
  if (trials < 1) throw CharError("need at least one trial");
  if (s.clock_period_ps <= 0) throw CharError("variation analysis needs a clocked stimulus");

  Trace nominal = simulate(n, p, s);
  std::vector<double> samples;
  for (int k = 2;; ++k) {
    double t = k * s.clock_period_ps - 1.0;
    if (t > s.horizon_ps) break;
    samples.push_back(t);
  }

  VariationResult result;
  result.trials = trials;
  result.perturbation = perturbation;
  result.seed = seed;

  for (int trial = 0; trial < trials; ++trial) {
    std::uint64_t state = (seed + static_cast<std::uint64_t>(trial)) + 0x9e3779b97f4a7c15ull;
    auto next_unit = [&state]() {
      std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      z ^= z >> 31;
      return (z >> 11) * 0x1.0p-53;
    };
    std::map<std::string, std::pair<double, double>> scale;
    for (const auto& inst : n.instances) {
      double r = 1 + perturbation * (2 * next_unit() - 1);
      double f = 1 + perturbation * (2 * next_unit() - 1);
      scale[inst.name] = {r, f};
    }
    SimOptions opt;
    opt.delay_scale = &scale;
    Trace t = simulate(n, p, s, opt);
    if (first_mismatch(nominal, t, n.outputs, samples)) ++result.failures;
  }
  return result;
}

}  // namespace cgforge
