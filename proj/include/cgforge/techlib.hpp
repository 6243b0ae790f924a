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

#ifndef CGFORGE_TECHLIB_HPP_
#define CGFORGE_TECHLIB_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cgforge/netlist.hpp"

namespace cgforge {

// Per-cell behavior and electrical bookkeeping. Delays in ps, per-toggle
// energies in fJ, leakage in nW.
struct CellSpec {
  std::string name;
  CellFn function = CellFn::Inv;
  double t_rise_ps = 1.0;
  double t_fall_ps = 1.0;
  double e_toggle_fj = 0.0;
  double e_contention_fj = 0.0;
  double p_leak_nw = 0.0;
  int transistors = 1;
  // Optional capture windows, checked only when the simulator runs with
  // timing checks enabled. Meaningful for flip-flops.
  double t_setup_ps = 0.0;
  double t_hold_ps = 0.0;

  bool operator==(const CellSpec&) const = default;
};

struct LibraryProfile {
  std::string name;
  std::map<std::string, CellSpec> cells;
  double lector_leak_factor = 0.2;
  double lector_contention_factor = 0.1;
  double lector_delay_penalty = 1.15;
  double v_dd = 1.1;  // documentation only
  std::string notes;

  const CellSpec* find(const std::string& cell_type) const;
  const CellSpec& at(const std::string& cell_type) const;

  // First cell (by name) carrying the given behavior tag, nullptr if none.
  const CellSpec* find_by_function(CellFn fn) const;

  // Cell-name -> pin-interface view for the parser and validator.
  InterfaceTable interface_table() const;

  bool operator==(const LibraryProfile&) const = default;
};

class ProfileError : public std::runtime_error {
 public:
  explicit ProfileError(const std::string& msg) : std::runtime_error(msg) {}
};

// Loads and verifies a profile. Rejects syntax trouble, a missing behavior
// tag, and any violated cell or factor invariant.
LibraryProfile load_profile(std::istream& in);
LibraryProfile load_profile(const std::string& path);
LibraryProfile parse_profile(std::string_view text);

std::string write_profile(const LibraryProfile& p);

// Empty iff the profile satisfies every invariant: positive delays,
// non-negative energies/leakage, the seven behavior tags present, and the
// LECTOR factor relations against plain counterparts.
std::vector<std::string> verify_profile(const LibraryProfile& p);

// Built-in profile whose transistor counts reproduce the reference totals
// for the two-stage register (42 conventional, 100 gated).
LibraryProfile paper_match_profile();

// Copy of `p` with the LECTOR factors replaced and every LECTOR cell
// recomputed from its plain counterpart.
LibraryProfile with_lector_factors(const LibraryProfile& p, double leak_factor,
                                   double contention_factor, double delay_penalty);

// Sum of per-instance transistor counts. Throws ProfileError on a cell type
// the profile does not define.
long transistor_total(const Netlist& n, const LibraryProfile& p);

// Sum of static leakage over all instances, nW.
double effective_leakage(const Netlist& n, const LibraryProfile& p);

}  // namespace cgforge

#endif  // CGFORGE_TECHLIB_HPP_
