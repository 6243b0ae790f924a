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

#ifndef CGFORGE_GATING_HPP_
#define CGFORGE_GATING_HPP_

#include <string>
#include <utility>
#include <vector>

#include "cgforge/netlist.hpp"
#include "cgforge/techlib.hpp"

namespace cgforge {

// per-ff is the only correctness-preserving mode. shared reuses the first
// stage's enable for every flip-flop; it exists to demonstrate why a common
// gated clock is wrong for multi-stage registers.
enum class GatingMode { PerFf, Shared };

const char* to_string(GatingMode mode);
std::optional<GatingMode> gating_mode_from_string(std::string_view s);

struct GatingReport {
  GatingMode mode = GatingMode::PerFf;
  std::vector<std::string> gated_ffs;
  std::vector<std::string> new_nets;        // en/ckg/ckg_bar/ckg_buf per cluster
  std::vector<std::string> gated_clock_nets;  // the nets rebound onto FF CLK pins
  std::vector<std::string> added_cells;
  std::vector<std::pair<std::string, std::string>> renamed;  // wanted -> used
  long transistor_overhead = 0;
};

class GatingError : public std::runtime_error {
 public:
  explicit GatingError(const std::string& msg) : std::runtime_error(msg) {}
};

// All flip-flop instances (behavior tag DFF_CONV), in declaration order.
std::vector<std::string> list_ffs(const Netlist& n,
                                  const InterfaceTable& table = InterfaceTable::standard());

// The LB-CG insertion pass. Per flip-flop it builds an XOR comparator
// (D vs Q), a LECTOR-AND gating cell, a LECTOR inverter for the ckg_bar
// probe, and a gated-clock driver, then rebinds the flip-flop's CLK pin to
// the gated clock. Rejects netlists with no flip-flops and netlists that
// are already gated.
std::pair<Netlist, GatingReport> insert_clock_gating(const Netlist& n,
                                                     const LibraryProfile& p,
                                                     GatingMode mode = GatingMode::PerFf);

}  // namespace cgforge

#endif  // CGFORGE_GATING_HPP_
