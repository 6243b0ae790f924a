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

#include "cgforge/gating.hpp"

#include <set>

namespace cgforge {

const char* to_string(GatingMode mode) {
  return mode == GatingMode::PerFf ? "per-ff" : "shared";
}

std::optional<GatingMode> gating_mode_from_string(std::string_view s) {
  if (s == "per-ff") return GatingMode::PerFf;
  if (s == "shared") return GatingMode::Shared;
  return std::nullopt;
}

std::vector<std::string> list_ffs(const Netlist& n, const InterfaceTable& table) {
  std::vector<std::string> out;
  for (const auto& inst : n.instances) {
    const CellInterface* iface = table.find(inst.cell_type);
    if (iface && iface->is_flipflop()) out.push_back(inst.name);
  }
  return out;
}

namespace {

// Gating needs a cell for each role; cells resolve by behavior tag, with
// the canonical name preferred when both exist (a profile may carry several
// INV-function cells, e.g. INV and CKBUF).
const CellSpec& pick_cell(const LibraryProfile& p, CellFn fn, const char* preferred_name) {
  if (const CellSpec* named = p.find(preferred_name); named && named->function == fn) {
    return *named;
  }
  if (const CellSpec* by_fn = p.find_by_function(fn)) return *by_fn;
  throw GatingError("profile '" + p.name + "' provides no cell with function " +
                    to_string(fn));
}

struct NameAllocator {
  std::set<std::string> used;
  std::vector<std::pair<std::string, std::string>>* renamed;

  std::string take(const std::string& wanted) {
    if (used.insert(wanted).second) return wanted;
    for (int i = 1;; ++i) {
      std::string candidate = wanted + "_" + std::to_string(i);
      if (used.insert(candidate).second) {
        renamed->push_back({wanted, candidate});
        return candidate;
      }
    }
  }
};

}  // namespace

std::pair<Netlist, GatingReport> insert_clock_gating(const Netlist& n,
                                                     const LibraryProfile& p,
                                                     GatingMode mode) {
  const InterfaceTable table = p.interface_table();

  auto diags = validate(n, table);
  if (!diags.empty()) {
    throw GatingError("input netlist invalid: " + diags.front().message);
  }

  std::vector<std::string> ffs = list_ffs(n, table);
  if (ffs.empty()) throw GatingError("netlist '" + n.name + "' contains no flip-flops");

  const CellSpec& xor_cell = pick_cell(p, CellFn::Xor2, "XOR2");
  const CellSpec& and_cell = pick_cell(p, CellFn::LectorAnd2, "LECTOR_AND2");
  const CellSpec& inv_cell = pick_cell(p, CellFn::LectorInv, "LECTOR_INV");
  const CellSpec& buf_cell = pick_cell(p, CellFn::Inv, "CKBUF");

  Netlist out = n;
  GatingReport report;
  report.mode = mode;
  report.gated_ffs = ffs;

  NameAllocator net_names{out.nets, &report.renamed};
  NameAllocator inst_names{{}, &report.renamed};
  for (const auto& inst : out.instances) inst_names.used.insert(inst.name);

  // Idempotence guard: a flip-flop whose clock is already produced by a
  // LECTOR-AND has been gated before.
  std::map<std::string, const Instance*> driver_of;
  for (const auto& inst : out.instances) {
    const CellInterface* iface = table.find(inst.cell_type);
    auto it = inst.pins.find(iface->output_pin);
    if (it != inst.pins.end()) driver_of[it->second] = &inst;
  }
  for (auto& inst : out.instances) {
    const CellInterface* iface = table.find(inst.cell_type);
    if (!iface->is_flipflop()) continue;
    auto clk_it = inst.pins.find("CLK");
    if (clk_it == inst.pins.end()) continue;
    auto drv = driver_of.find(clk_it->second);
    if (drv != driver_of.end() &&
        table.find(drv->second->cell_type)->fn == CellFn::LectorAnd2) {
      throw GatingError("flip-flop '" + inst.name + "' is already clock-gated (clock driven by '" +
                        drv->second->name + "')");
    }
  }

  auto add_instance = [&](const std::string& wanted, const std::string& cell,
                          std::map<std::string, std::string> pins) {
    Instance inst;
    inst.name = inst_names.take(wanted);
    inst.cell_type = cell;
    inst.pins = std::move(pins);
    report.added_cells.push_back(inst.name);
    report.transistor_overhead += p.at(cell).transistors;
    out.instances.push_back(std::move(inst));
    return out.instances.back().name;
  };
  auto add_net = [&](const std::string& wanted) {
    std::string used = net_names.take(wanted);
    out.nets.insert(used);
    report.new_nets.push_back(used);
    return used;
  };

  // Builds one comparator + gating cluster around the flip-flop at
  // `ff_index` and returns the gated-clock net. Appending instances may
  // reallocate, so everything is read up front and access goes by index.
  auto build_cluster = [&](std::size_t ff_index, std::string suffix) {
    const std::string ff_name = out.instances[ff_index].name;
    const std::string d_net = out.instances[ff_index].pins.at("D");
    const std::string q_net = out.instances[ff_index].pins.at("Q");
    const std::string clk_net = out.instances[ff_index].pins.at("CLK");

    std::string en = add_net("en_" + suffix);
    std::string ckg = add_net("ckg_" + suffix);
    std::string ckg_bar = add_net("ckg_bar_" + suffix);
    std::string ckg_buf = add_net("ckg_buf_" + suffix);

    add_instance(ff_name + "_cmp", xor_cell.name, {{"A", d_net}, {"B", q_net}, {"Y", en}});
    add_instance(ff_name + "_cg", and_cell.name, {{"A", clk_net}, {"B", en}, {"Y", ckg}});
    add_instance(ff_name + "_cgb", inv_cell.name, {{"A", ckg}, {"Y", ckg_bar}});
    // Slave-phase clock driver; regenerates the true phase from ckg_bar and
    // carries the per-stage driver cost in the transistor accounting.
    add_instance(ff_name + "_ckb", buf_cell.name, {{"A", ckg_bar}, {"Y", ckg_buf}});

    report.gated_clock_nets.push_back(ckg);
    return ckg;
  };

  std::vector<std::size_t> ff_indices;
  for (std::size_t i = 0; i < out.instances.size(); ++i) {
    if (std::find(ffs.begin(), ffs.end(), out.instances[i].name) != ffs.end()) {
      ff_indices.push_back(i);
    }
  }

  if (mode == GatingMode::PerFf) {
    for (std::size_t i : ff_indices) {
      std::string ckg = build_cluster(i, out.instances[i].name);
      out.instances[i].pins["CLK"] = ckg;
    }
  } else {
    // Shared mode: one cluster fed by stage 1's comparator; every stage's
    // clock pin rebinds to the single gated clock. This reproduces the
    // common-gated-clock mistake: stages whose data changed are skipped
    // whenever stage 1 happens to be idle.
    std::string ckg = build_cluster(ff_indices.front(), "shared");
    for (std::size_t i : ff_indices) out.instances[i].pins["CLK"] = ckg;
  }

  auto out_diags = validate(out, table);
  if (!out_diags.empty()) {
    throw GatingError("gated netlist failed validation: " + out_diags.front().message);
  }
  return {std::move(out), std::move(report)};
}

}  // namespace cgforge
