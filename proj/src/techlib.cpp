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

#include "cgforge/techlib.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace cgforge {

namespace {

constexpr double kRelTol = 1e-9;

bool close_rel(double a, double b) {
  double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= kRelTol * std::max(scale, 1e-30);
}

// Plain counterpart of a LECTOR behavior tag, if it has one.
std::optional<CellFn> plain_counterpart(CellFn fn) {
  if (fn == CellFn::LectorAnd2) return CellFn::And2;
  if (fn == CellFn::LectorInv) return CellFn::Inv;
  return std::nullopt;
}

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

const CellSpec* LibraryProfile::find(const std::string& cell_type) const {
  auto it = cells.find(cell_type);
  return it == cells.end() ? nullptr : &it->second;
}

const CellSpec& LibraryProfile::at(const std::string& cell_type) const {
  const CellSpec* spec = find(cell_type);
  if (!spec) throw ProfileError("profile '" + name + "' has no cell '" + cell_type + "'");
  return *spec;
}

const CellSpec* LibraryProfile::find_by_function(CellFn fn) const {
  for (const auto& [cname, spec] : cells) {
    if (spec.function == fn) return &spec;
  }
  return nullptr;
}

InterfaceTable LibraryProfile::interface_table() const {
  InterfaceTable t;
  for (const auto& [cname, spec] : cells) {
    const CellInterface* iface = InterfaceTable::standard().find(to_string(spec.function));
    t.add(cname, *iface);
  }
  return t;
}

std::vector<std::string> verify_profile(const LibraryProfile& p) {
  std::vector<std::string> problems;
  auto bad = [&](std::string msg) { problems.push_back(std::move(msg)); };

  for (const auto& [cname, spec] : p.cells) {
    if (cname != spec.name) bad("cell '" + cname + "' keyed under a different name");
    if (spec.t_rise_ps <= 0 || spec.t_fall_ps <= 0)
      bad("cell '" + cname + "' needs positive rise/fall delays");
    if (spec.e_toggle_fj < 0 || spec.e_contention_fj < 0)
      bad("cell '" + cname + "' has a negative energy");
    if (spec.p_leak_nw < 0) bad("cell '" + cname + "' has negative leakage");
    if (spec.transistors < 1) bad("cell '" + cname + "' needs at least one transistor");
    if (spec.t_setup_ps < 0 || spec.t_hold_ps < -spec.t_setup_ps)
      bad("cell '" + cname + "' has an empty setup/hold window");
  }

  if (!(p.lector_leak_factor > 0 && p.lector_leak_factor <= 1.0))
    bad("lector_leak_factor must be in (0,1]");
  if (!(p.lector_contention_factor > 0 && p.lector_contention_factor <= 1.0))
    bad("lector_contention_factor must be in (0,1]");
  if (!(p.lector_delay_penalty >= 1.0)) bad("lector_delay_penalty must be >= 1");

  for (CellFn fn : {CellFn::Inv, CellFn::And2, CellFn::Nand2, CellFn::Xor2,
                    CellFn::DffConv, CellFn::LectorAnd2, CellFn::LectorInv}) {
    if (!p.find_by_function(fn)) bad(std::string("missing required cell function ") + to_string(fn));
  }

  // Factor relations: each LECTOR cell against the plain cell named after
  // its counterpart behavior tag.
  for (const auto& [cname, spec] : p.cells) {
    auto plain_fn = plain_counterpart(spec.function);
    if (!plain_fn) continue;
    const CellSpec* plain = p.find(to_string(*plain_fn));
    if (!plain) plain = p.find_by_function(*plain_fn);
    if (!plain) continue;  // already reported as missing function
    if (!close_rel(spec.p_leak_nw, p.lector_leak_factor * plain->p_leak_nw))
      bad("cell '" + cname + "': p_leak != lector_leak_factor * " + plain->name + ".p_leak");
    if (!close_rel(spec.e_contention_fj, p.lector_contention_factor * plain->e_contention_fj))
      bad("cell '" + cname + "': e_contention != lector_contention_factor * " + plain->name +
          ".e_contention");
    if (!close_rel(spec.t_rise_ps, p.lector_delay_penalty * plain->t_rise_ps) ||
        !close_rel(spec.t_fall_ps, p.lector_delay_penalty * plain->t_fall_ps))
      bad("cell '" + cname + "': delays != lector_delay_penalty * " + plain->name + " delays");
    if (spec.p_leak_nw > plain->p_leak_nw + kRelTol)
      bad("cell '" + cname + "' leaks more than its plain counterpart");
    if (spec.e_contention_fj > plain->e_contention_fj + kRelTol)
      bad("cell '" + cname + "' has more contention than its plain counterpart");
  }

  return problems;
}

namespace {

double parse_double(const std::string& s, int lineno, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ProfileError("line " + std::to_string(lineno) + ": bad number for " + what + ": '" + s + "'");
  }
}

}  // namespace

LibraryProfile load_profile(std::istream& in) {
  LibraryProfile p;
  bool in_profile = false;
  bool done = false;
  std::string line;
  int lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (done) throw ProfileError("line " + std::to_string(lineno) + ": content after endprofile");

    if (!in_profile) {
      if (kw != "profile") throw ProfileError("line " + std::to_string(lineno) + ": expected 'profile <name>'");
      if (!(ls >> p.name)) throw ProfileError("line " + std::to_string(lineno) + ": missing profile name");
      in_profile = true;
      continue;
    }

    if (kw == "param") {
      std::string key, value;
      if (!(ls >> key >> value)) throw ProfileError("line " + std::to_string(lineno) + ": expected 'param <key> <value>'");
      if (key == "lector_leak_factor") p.lector_leak_factor = parse_double(value, lineno, key);
      else if (key == "lector_contention_factor") p.lector_contention_factor = parse_double(value, lineno, key);
      else if (key == "lector_delay_penalty") p.lector_delay_penalty = parse_double(value, lineno, key);
      else if (key == "v_dd") p.v_dd = parse_double(value, lineno, key);
      else throw ProfileError("line " + std::to_string(lineno) + ": unknown param '" + key + "'");
    } else if (kw == "notes") {
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      p.notes = rest;
    } else if (kw == "cell") {
      CellSpec spec;
      std::string fn;
      if (!(ls >> spec.name >> fn))
        throw ProfileError("line " + std::to_string(lineno) + ": expected 'cell <NAME> <FUNCTION> ...'");
      auto parsed = cell_fn_from_string(fn);
      if (!parsed) throw ProfileError("line " + std::to_string(lineno) + ": unknown cell function '" + fn + "'");
      spec.function = *parsed;
      std::string tok;
      while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
          throw ProfileError("line " + std::to_string(lineno) + ": expected key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq);
        std::string value = tok.substr(eq + 1);
        if (key == "t_rise") spec.t_rise_ps = parse_double(value, lineno, key);
        else if (key == "t_fall") spec.t_fall_ps = parse_double(value, lineno, key);
        else if (key == "e_toggle") spec.e_toggle_fj = parse_double(value, lineno, key);
        else if (key == "e_contention") spec.e_contention_fj = parse_double(value, lineno, key);
        else if (key == "p_leak") spec.p_leak_nw = parse_double(value, lineno, key);
        else if (key == "transistors") spec.transistors = static_cast<int>(parse_double(value, lineno, key));
        else if (key == "t_setup") spec.t_setup_ps = parse_double(value, lineno, key);
        else if (key == "t_hold") spec.t_hold_ps = parse_double(value, lineno, key);
        else throw ProfileError("line " + std::to_string(lineno) + ": unknown cell attribute '" + key + "'");
      }
      if (p.cells.count(spec.name))
        throw ProfileError("line " + std::to_string(lineno) + ": cell '" + spec.name + "' defined twice");
      p.cells[spec.name] = std::move(spec);
    } else if (kw == "endprofile") {
      done = true;
    } else {
      throw ProfileError("line " + std::to_string(lineno) + ": unknown statement '" + kw + "'");
    }
  }
  if (!in_profile) throw ProfileError("empty input: no profile found");
  if (!done) throw ProfileError("missing endprofile");

  auto problems = verify_profile(p);
  if (!problems.empty()) {
    std::string msg = "profile '" + p.name + "' invalid: " + problems.front();
    if (problems.size() > 1) msg += " (+" + std::to_string(problems.size() - 1) + " more)";
    throw ProfileError(msg);
  }
  return p;
}

LibraryProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ProfileError("cannot open profile file '" + path + "'");
  return load_profile(in);
}

LibraryProfile parse_profile(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_profile(in);
}

std::string write_profile(const LibraryProfile& p) {
  std::ostringstream out;
  out << "profile " << p.name << "\n";
  out << "param lector_leak_factor " << fmt_num(p.lector_leak_factor) << "\n";
  out << "param lector_contention_factor " << fmt_num(p.lector_contention_factor) << "\n";
  out << "param lector_delay_penalty " << fmt_num(p.lector_delay_penalty) << "\n";
  out << "param v_dd " << fmt_num(p.v_dd) << "\n";
  if (!p.notes.empty()) out << "notes " << p.notes << "\n";
  for (const auto& [cname, spec] : p.cells) {
    out << "cell " << cname << ' ' << to_string(spec.function)
        << " t_rise=" << fmt_num(spec.t_rise_ps) << " t_fall=" << fmt_num(spec.t_fall_ps)
        << " e_toggle=" << fmt_num(spec.e_toggle_fj)
        << " e_contention=" << fmt_num(spec.e_contention_fj)
        << " p_leak=" << fmt_num(spec.p_leak_nw) << " transistors=" << spec.transistors;
    if (spec.t_setup_ps != 0 || spec.t_hold_ps != 0) {
      out << " t_setup=" << fmt_num(spec.t_setup_ps) << " t_hold=" << fmt_num(spec.t_hold_ps);
    }
    out << "\n";
  }
  out << "endprofile\n";
  return out.str();
}

LibraryProfile paper_match_profile() {
  LibraryProfile p;
  p.name = "paper-match";
  p.lector_leak_factor = 0.2;
  p.lector_contention_factor = 0.1;
  p.lector_delay_penalty = 1.15;
  p.v_dd = 1.1;
  p.notes = "90nm-class placeholder magnitudes; transistor counts sized for the two-stage register totals";

  auto add = [&](const char* name, CellFn fn, double tr, double tf, double et, double ec,
                 double pl, int tcount, double tsu = 0.0, double th = 0.0) {
    CellSpec s;
    s.name = name;
    s.function = fn;
    s.t_rise_ps = tr;
    s.t_fall_ps = tf;
    s.e_toggle_fj = et;
    s.e_contention_fj = ec;
    s.p_leak_nw = pl;
    s.transistors = tcount;
    s.t_setup_ps = tsu;
    s.t_hold_ps = th;
    p.cells[s.name] = std::move(s);
  };

  add("INV", CellFn::Inv, 16, 14, 0.55, 0.18, 16, 2);
  add("CKBUF", CellFn::Inv, 13, 12, 0.5, 0.2, 20, 3);
  add("AND2", CellFn::And2, 28, 26, 1.1, 0.4, 42, 6);
  add("NAND2", CellFn::Nand2, 24, 22, 0.9, 0.35, 36, 4);
  add("XOR2", CellFn::Xor2, 34, 32, 1.6, 0.6, 55, 12);
  add("DFF_CONV", CellFn::DffConv, 90, 95, 6.5, 0.9, 140, 21, 8, 4);
  add("LECTOR_AND2", CellFn::LectorAnd2, 28 * 1.15, 26 * 1.15, 1.2, 0.4 * 0.1, 42 * 0.2, 10);
  add("LECTOR_INV", CellFn::LectorInv, 16 * 1.15, 14 * 1.15, 0.6, 0.18 * 0.1, 16 * 0.2, 4);
  return p;
}

LibraryProfile with_lector_factors(const LibraryProfile& p, double leak_factor,
                                   double contention_factor, double delay_penalty) {
  LibraryProfile out = p;
  out.lector_leak_factor = leak_factor;
  out.lector_contention_factor = contention_factor;
  out.lector_delay_penalty = delay_penalty;
  for (auto& [cname, spec] : out.cells) {
    auto plain_fn = plain_counterpart(spec.function);
    if (!plain_fn) continue;
    const CellSpec* plain = out.find(to_string(*plain_fn));
    if (!plain) plain = out.find_by_function(*plain_fn);
    if (!plain) throw ProfileError("no plain counterpart for cell '" + cname + "'");
    spec.p_leak_nw = leak_factor * plain->p_leak_nw;
    spec.e_contention_fj = contention_factor * plain->e_contention_fj;
    spec.t_rise_ps = delay_penalty * plain->t_rise_ps;
    spec.t_fall_ps = delay_penalty * plain->t_fall_ps;
  }
  auto problems = verify_profile(out);
  if (!problems.empty()) throw ProfileError("derived profile invalid: " + problems.front());
  return out;
}

long transistor_total(const Netlist& n, const LibraryProfile& p) {
  long total = 0;
  for (const auto& inst : n.instances) total += p.at(inst.cell_type).transistors;
  return total;
}

double effective_leakage(const Netlist& n, const LibraryProfile& p) {
  double total = 0;
  for (const auto& inst : n.instances) total += p.at(inst.cell_type).p_leak_nw;
  return total;
}

}  // namespace cgforge
