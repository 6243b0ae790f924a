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

#include "cgforge/vcd.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <vector>

namespace cgforge {

namespace {

// Printable short identifiers: '!'..'~', then two characters, and so on.
std::string vcd_id(std::size_t index) {
  std::string id;
  do {
    id.insert(id.begin(), static_cast<char>('!' + index % 94));
    index /= 94;
  } while (index > 0);
  return id;
}

}  // namespace

void write_vcd(const Trace& t, std::ostream& out) {
  if (t.net_order.empty()) throw SimError("refusing to write VCD for a trace with no nets");

  out << "$comment cgforge trace of module " << t.module_name << " $end\n";
  out << "$timescale 1ps $end\n";
  out << "$scope module " << t.module_name << " $end\n";
  std::vector<std::string> ids;
  ids.reserve(t.net_order.size());
  for (std::size_t i = 0; i < t.net_order.size(); ++i) {
    ids.push_back(vcd_id(i));
    out << "$var wire 1 " << ids[i] << ' ' << t.net_order[i] << " $end\n";
  }
  out << "$upscope $end\n";
  out << "$enddefinitions $end\n";

  out << "#0\n$dumpvars\n";
  for (std::size_t i = 0; i < t.net_order.size(); ++i) {
    out << to_char(t.waves.at(t.net_order[i]).changes.front().value) << ids[i] << "\n";
  }
  out << "$end\n";

  struct Entry {
    long long time;
    std::size_t order;  // position in the global time-sorted stream
    std::size_t net;
    LogicValue value;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < t.net_order.size(); ++i) {
    const NetWave& wave = t.waves.at(t.net_order[i]);
    for (std::size_t c = 1; c < wave.changes.size(); ++c) {
      entries.push_back({std::llround(wave.changes[c].time_ps), 0, i, wave.changes[c].value});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.net < b.net;
  });

  long long current_time = 0;
  for (const auto& e : entries) {
    if (e.time != current_time) {
      out << '#' << e.time << "\n";
      current_time = e.time;
    }
    out << to_char(e.value) << ids[e.net] << "\n";
  }
}

void write_vcd(const Trace& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot open '" + path + "' for writing");
  write_vcd(t, out);
  if (!out) throw SimError("write to '" + path + "' failed");
}

}  // namespace cgforge
