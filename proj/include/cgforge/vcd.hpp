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

#ifndef CGFORGE_VCD_HPP_
#define CGFORGE_VCD_HPP_

#include <iosfwd>
#include <string>

#include "cgforge/sim.hpp"

namespace cgforge {

// IEEE 1364 value-change dump, timescale 1 ps. Change times round to the
// nearest picosecond; changes sharing a rounded time share one #-section.
// Deterministic byte-for-byte for a given trace.
void write_vcd(const Trace& t, std::ostream& out);
void write_vcd(const Trace& t, const std::string& path);

}  // namespace cgforge

#endif  // CGFORGE_VCD_HPP_
