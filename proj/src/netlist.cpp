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

#include "cgforge/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

namespace cgforge {

const char* to_string(CellFn fn) {
  switch (fn) {
    case CellFn::Inv: return "INV";
    case CellFn::And2: return "AND2";
    case CellFn::Nand2: return "NAND2";
    case CellFn::Xor2: return "XOR2";
    case CellFn::DffConv: return "DFF_CONV";
    case CellFn::LectorAnd2: return "LECTOR_AND2";
    case CellFn::LectorInv: return "LECTOR_INV";
  }
  return "?";
}

std::optional<CellFn> cell_fn_from_string(std::string_view s) {
  if (s == "INV") return CellFn::Inv;
  if (s == "AND2") return CellFn::And2;
  if (s == "NAND2") return CellFn::Nand2;
  if (s == "XOR2") return CellFn::Xor2;
  if (s == "DFF_CONV") return CellFn::DffConv;
  if (s == "LECTOR_AND2") return CellFn::LectorAnd2;
  if (s == "LECTOR_INV") return CellFn::LectorInv;
  return std::nullopt;
}

const char* to_string(Diagnostic::Category c) {
  switch (c) {
    case Diagnostic::Category::UnknownCell: return "unknown-cell";
    case Diagnostic::Category::UnknownPin: return "unknown-pin";
    case Diagnostic::Category::MissingPin: return "missing-pin";
    case Diagnostic::Category::UnboundNet: return "unbound-net";
    case Diagnostic::Category::MultiplyDrivenNet: return "multiply-driven-net";
    case Diagnostic::Category::UndrivenNet: return "undriven-net";
    case Diagnostic::Category::DuplicateInstance: return "duplicate-instance";
    case Diagnostic::Category::CombinationalCycle: return "combinational-cycle";
  }
  return "?";
}

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) +
                                        (col > 0 ? ":" + std::to_string(col) : "") +
                                        ": " + msg
                                  : msg),
      line_(line),
      col_(col) {}

namespace {

CellInterface make_iface(CellFn fn) {
  switch (fn) {
    case CellFn::Inv:
    case CellFn::LectorInv:
      return {fn, {"A"}, "Y"};
    case CellFn::And2:
    case CellFn::Nand2:
    case CellFn::Xor2:
    case CellFn::LectorAnd2:
      return {fn, {"A", "B"}, "Y"};
    case CellFn::DffConv:
      return {fn, {"D", "CLK"}, "Q"};
  }
  return {fn, {}, ""};
}

}  // namespace

const InterfaceTable& InterfaceTable::standard() {
  static const InterfaceTable table = [] {
    InterfaceTable t;
    for (CellFn fn : {CellFn::Inv, CellFn::And2, CellFn::Nand2, CellFn::Xor2,
                      CellFn::DffConv, CellFn::LectorAnd2, CellFn::LectorInv}) {
      t.add(to_string(fn), make_iface(fn));
    }
    return t;
  }();
  return table;
}

void InterfaceTable::add(const std::string& cell_type, CellInterface iface) {
  cells_[cell_type] = std::move(iface);
}

const CellInterface* InterfaceTable::find(const std::string& cell_type) const {
  auto it = cells_.find(cell_type);
  return it == cells_.end() ? nullptr : &it->second;
}

bool is_valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

struct Token {
  std::string text;
  int col;
};

std::vector<Token> tokenize_line(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#') {
      ++i;
    }
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

void check_identifier(const std::string& s, int line, int col) {
  if (!is_valid_identifier(s)) {
    throw ParseError("invalid identifier '" + s + "'", line, col);
  }
}

}  // namespace

Netlist parse_netlist_raw(std::istream& in) {
  Netlist n;
  bool in_module = false;
  bool done = false;
  std::string line;
  int lineno = 0;

  auto declare_net = [&](const Token& tok, int ln) {
    check_identifier(tok.text, ln, tok.col);
    if (!n.nets.insert(tok.text).second) {
      throw ParseError("net '" + tok.text + "' declared twice", ln, tok.col);
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize_line(line);
    if (toks.empty()) continue;
    if (done) throw ParseError("content after endmodule", lineno, toks[0].col);
    const std::string& kw = toks[0].text;

    if (!in_module) {
      if (kw != "module") throw ParseError("expected 'module'", lineno, toks[0].col);
      if (toks.size() != 2) throw ParseError("expected 'module <name>'", lineno, toks[0].col);
      check_identifier(toks[1].text, lineno, toks[1].col);
      n.name = toks[1].text;
      in_module = true;
      continue;
    }

    if (kw == "input" || kw == "output" || kw == "wire") {
      if (toks.size() < 2) throw ParseError("expected at least one net after '" + kw + "'", lineno, toks[0].col);
      for (std::size_t i = 1; i < toks.size(); ++i) {
        declare_net(toks[i], lineno);
        if (kw == "input") n.inputs.push_back(toks[i].text);
        if (kw == "output") n.outputs.push_back(toks[i].text);
      }
    } else if (kw == "cell") {
      if (toks.size() < 3) throw ParseError("expected 'cell <CELLTYPE> <instname> <PIN>=<net> ...'", lineno, toks[0].col);
      Instance inst;
      inst.cell_type = toks[1].text;
      inst.name = toks[2].text;
      check_identifier(inst.cell_type, lineno, toks[1].col);
      check_identifier(inst.name, lineno, toks[2].col);
      for (std::size_t i = 3; i < toks.size(); ++i) {
        auto eq = toks[i].text.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= toks[i].text.size()) {
          throw ParseError("expected <PIN>=<net>, got '" + toks[i].text + "'", lineno, toks[i].col);
        }
        std::string pin = toks[i].text.substr(0, eq);
        std::string net = toks[i].text.substr(eq + 1);
        check_identifier(pin, lineno, toks[i].col);
        check_identifier(net, lineno, toks[i].col + static_cast<int>(eq) + 1);
        if (inst.pins.count(pin)) {
          throw ParseError("pin '" + pin + "' bound twice on instance '" + inst.name + "'", lineno, toks[i].col);
        }
        inst.pins[pin] = net;
      }
      n.instances.push_back(std::move(inst));
    } else if (kw == "endmodule") {
      if (toks.size() != 1) throw ParseError("unexpected tokens after endmodule", lineno, toks[1].col);
      done = true;
    } else {
      throw ParseError("unknown statement '" + kw + "'", lineno, toks[0].col);
    }
  }
  if (!in_module) throw ParseError("empty input: no module found");
  if (!done) throw ParseError("missing endmodule", lineno);
  return n;
}

Netlist parse_netlist(std::istream& in, const InterfaceTable& table) {
  Netlist n = parse_netlist_raw(in);
  auto diags = validate(n, table);
  if (!diags.empty()) {
    const Diagnostic& d = diags.front();
    std::string msg = std::string(to_string(d.category)) + ": " + d.message;
    if (diags.size() > 1) {
      msg += " (+" + std::to_string(diags.size() - 1) + " more)";
    }
    throw ParseError(msg);
  }
  return n;
}

Netlist parse_netlist(std::string_view text, const InterfaceTable& table) {
  std::istringstream in{std::string(text)};
  return parse_netlist(in, table);
}

std::string write_netlist(const Netlist& n, const InterfaceTable& table) {
  std::ostringstream out;
  out << "module " << n.name << "\n";
  auto emit_list = [&](const char* kw, const std::vector<std::string>& nets) {
    if (nets.empty()) return;
    out << kw;
    for (const auto& net : nets) out << ' ' << net;
    out << "\n";
  };
  emit_list("input", n.inputs);
  emit_list("output", n.outputs);

  std::vector<std::string> wires;
  std::set<std::string> ports(n.inputs.begin(), n.inputs.end());
  ports.insert(n.outputs.begin(), n.outputs.end());
  for (const auto& net : n.nets) {
    if (!ports.count(net)) wires.push_back(net);
  }
  emit_list("wire", wires);

  for (const auto& inst : n.instances) {
    out << "cell " << inst.cell_type << ' ' << inst.name;
    const CellInterface* iface = table.find(inst.cell_type);
    if (iface) {
      // Interface order: inputs then output, skipping anything unbound.
      for (const auto& pin : iface->input_pins) {
        auto it = inst.pins.find(pin);
        if (it != inst.pins.end()) out << ' ' << pin << '=' << it->second;
      }
      auto it = inst.pins.find(iface->output_pin);
      if (it != inst.pins.end()) out << ' ' << iface->output_pin << '=' << it->second;
    } else {
      for (const auto& [pin, net] : inst.pins) out << ' ' << pin << '=' << net;
    }
    out << "\n";
  }
  out << "endmodule\n";
  return out.str();
}

std::vector<Diagnostic> validate(const Netlist& n, const InterfaceTable& table) {
  std::vector<Diagnostic> diags;
  auto add = [&](Diagnostic::Category c, const std::string& entity, std::string msg) {
    diags.push_back({c, entity, std::move(msg)});
  };

  std::set<std::string> seen_names;
  for (const auto& inst : n.instances) {
    if (!seen_names.insert(inst.name).second) {
      add(Diagnostic::Category::DuplicateInstance, inst.name,
          "instance name '" + inst.name + "' used more than once");
    }
  }

  // Drivers: module inputs count as drivers, so do instance output pins.
  std::map<std::string, int> driver_count;
  for (const auto& in : n.inputs) driver_count[in]++;

  for (const auto& inst : n.instances) {
    const CellInterface* iface = table.find(inst.cell_type);
    if (!iface) {
      add(Diagnostic::Category::UnknownCell, inst.name,
          "instance '" + inst.name + "' uses unknown cell type '" + inst.cell_type + "'");
      continue;
    }
    for (const auto& [pin, net] : inst.pins) {
      bool known = pin == iface->output_pin ||
                   std::find(iface->input_pins.begin(), iface->input_pins.end(), pin) !=
                       iface->input_pins.end();
      if (!known) {
        add(Diagnostic::Category::UnknownPin, inst.name,
            "instance '" + inst.name + "' binds unknown pin '" + pin + "' of cell '" +
                inst.cell_type + "'");
      }
      if (!n.nets.count(net)) {
        add(Diagnostic::Category::UnboundNet, inst.name,
            "pin '" + pin + "' of instance '" + inst.name + "' binds undeclared net '" + net + "'");
      }
    }
    for (const auto& pin : iface->input_pins) {
      if (!inst.pins.count(pin)) {
        add(Diagnostic::Category::MissingPin, inst.name,
            "instance '" + inst.name + "' leaves pin '" + pin + "' unbound");
      }
    }
    if (!inst.pins.count(iface->output_pin)) {
      add(Diagnostic::Category::MissingPin, inst.name,
          "instance '" + inst.name + "' leaves pin '" + iface->output_pin + "' unbound");
    } else {
      const std::string& out_net = inst.pins.at(iface->output_pin);
      if (n.nets.count(out_net)) driver_count[out_net]++;
    }
  }

  for (const auto& net : n.nets) {
    int c = driver_count.count(net) ? driver_count.at(net) : 0;
    if (c == 0) {
      add(Diagnostic::Category::UndrivenNet, net, "net '" + net + "' has no driver");
    } else if (c > 1) {
      add(Diagnostic::Category::MultiplyDrivenNet, net,
          "net '" + net + "' has " + std::to_string(c) + " drivers");
    }
  }

  // Cycle check over the combinational subgraph. Flip-flops break paths.
  std::map<std::string, std::vector<std::size_t>> comb_readers;  // net -> instance idx
  for (std::size_t i = 0; i < n.instances.size(); ++i) {
    const CellInterface* iface = table.find(n.instances[i].cell_type);
    if (!iface || iface->is_flipflop()) continue;
    for (const auto& pin : iface->input_pins) {
      auto it = n.instances[i].pins.find(pin);
      if (it != n.instances[i].pins.end()) comb_readers[it->second].push_back(i);
    }
  }
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(n.instances.size(), Mark::White);
  std::string cycle_at;
  auto dfs = [&](auto&& self, std::size_t i) -> bool {
    mark[i] = Mark::Grey;
    const CellInterface* iface = table.find(n.instances[i].cell_type);
    auto out_it = n.instances[i].pins.find(iface->output_pin);
    if (out_it != n.instances[i].pins.end()) {
      auto readers = comb_readers.find(out_it->second);
      if (readers != comb_readers.end()) {
        for (std::size_t j : readers->second) {
          if (mark[j] == Mark::Grey) {
            cycle_at = n.instances[j].name;
            return true;
          }
          if (mark[j] == Mark::White && self(self, j)) return true;
        }
      }
    }
    mark[i] = Mark::Black;
    return false;
  };
  for (std::size_t i = 0; i < n.instances.size(); ++i) {
    const CellInterface* iface = table.find(n.instances[i].cell_type);
    if (!iface || iface->is_flipflop()) continue;
    if (mark[i] == Mark::White && dfs(dfs, i)) {
      add(Diagnostic::Category::CombinationalCycle, cycle_at,
          "combinational cycle through instance '" + cycle_at + "'");
      break;
    }
  }

  return diags;
}

Netlist build_register_demo(int width) {
  if (width < 1) throw std::invalid_argument("register width must be >= 1");
  Netlist n;
  n.name = "register" + std::to_string(width);
  n.inputs.push_back("clk");
  n.nets.insert("clk");
  for (int i = 1; i <= width; ++i) {
    std::string d = "D" + std::to_string(i);
    std::string q = "Q" + std::to_string(i);
    n.inputs.push_back(d);
    n.outputs.push_back(q);
    n.nets.insert(d);
    n.nets.insert(q);
    Instance ff;
    ff.name = "ff" + std::to_string(i);
    ff.cell_type = "DFF_CONV";
    ff.pins = {{"D", d}, {"CLK", "clk"}, {"Q", q}};
    n.instances.push_back(std::move(ff));
  }
  return n;
}

void rename_net(Netlist& n, const std::string& from, const std::string& to) {
  if (!n.nets.count(from)) throw std::invalid_argument("no net named '" + from + "'");
  if (n.nets.count(to)) throw std::invalid_argument("net '" + to + "' already exists");
  if (!is_valid_identifier(to)) throw std::invalid_argument("invalid net name '" + to + "'");
  n.nets.erase(from);
  n.nets.insert(to);
  for (auto& net : n.inputs)
    if (net == from) net = to;
  for (auto& net : n.outputs)
    if (net == from) net = to;
  for (auto& inst : n.instances) {
    for (auto& [pin, net] : inst.pins)
      if (net == from) net = to;
  }
}

}  // namespace cgforge
