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

#ifndef CGFORGE_REPORT_HPP_
#define CGFORGE_REPORT_HPP_

#include <cstdint>
#include <string>

#include "cgforge/characterize.hpp"
#include "cgforge/power.hpp"

namespace cgforge {

enum class Units { Ns, Ps };
const char* to_string(Units u);
std::optional<Units> units_from_string(std::string_view s);

// Every report starts with "# cgforge v<version> seed=<seed> config=<digest>"
// so identical configurations produce byte-identical files.
struct ReportMeta {
  std::uint64_t seed = 0;
  std::string config_digest;  // fnv1a-64 hex of the canonical config text
};

std::uint64_t fnv1a64(std::string_view data);
std::string header_line(const ReportMeta& meta);

// Table-mirror layouts (row order Setup, Hold, Delay, Latency).
std::string render_timing_report(const TimingReport& r, Units u, const ReportMeta& meta);
std::string render_timing_comparison(const TimingReport& gated, const TimingReport& ungated,
                                     Units u, const ReportMeta& meta);
std::string render_timing_kv(const TimingReport& gated, const TimingReport* ungated,
                             const ReportMeta& meta);

// Row order Process, Average Power, Transistor Count, Clock Frequency, then
// the component breakdown and the savings line.
std::string render_power_comparison(const ComparisonReport& r, const std::string& profile_name,
                                    const ReportMeta& meta);
std::string render_power_kv(const ComparisonReport& r, const ReportMeta& meta);

std::string render_variation(const VariationResult& r, const ReportMeta& meta);
std::string render_variation_kv(const VariationResult& r, const ReportMeta& meta);

}  // namespace cgforge

#endif  // CGFORGE_REPORT_HPP_
