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

#ifndef CGFORGE_NETLIST_HPP_
#define CGFORGE_NETLIST_HPP_

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cgforge {

// Behavior tags understood by the simulator and the library loader.
enum class CellFn {
  Inv,
  And2,
  Nand2,
  Xor2,
  DffConv,
  LectorAnd2,
  LectorInv,
};

const char* to_string(CellFn fn);
std::optional<CellFn> cell_fn_from_string(std::string_view s);

// Pin-level view of a cell type: which pins exist and which one drives.
struct CellInterface {
  CellFn fn;
  std::vector<std::string> input_pins;
  std::string output_pin;

  bool is_flipflop() const { return fn == CellFn::DffConv; }
};

// Maps cell-type names to their interfaces. The standard table knows the
// seven behavior tags under their own names; a LibraryProfile produces a
// table covering whatever cell names it defines.
class InterfaceTable {
 public:
  static const InterfaceTable& standard();

  void add(const std::string& cell_type, CellInterface iface);
  const CellInterface* find(const std::string& cell_type) const;

 private:
  std::map<std::string, CellInterface> cells_;
};

struct Instance {
  std::string name;
  std::string cell_type;
  std::map<std::string, std::string> pins;  // pin name -> net name

  bool operator==(const Instance&) const = default;
};

// Structural circuit IR. Immutable by convention once built; the transform
// passes copy rather than mutate shared instances.
struct Netlist {
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::set<std::string> nets;  // every declared net, ports included
  std::vector<Instance> instances;

  bool operator==(const Netlist&) const = default;
};

struct Diagnostic {
  enum class Category {
    UnknownCell,
    UnknownPin,
    MissingPin,
    UnboundNet,
    MultiplyDrivenNet,
    UndrivenNet,
    DuplicateInstance,
    CombinationalCycle,
  };

  Category category;
  std::string entity;   // offending instance or net name
  std::string message;
};

const char* to_string(Diagnostic::Category c);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = 0, int col = 0);

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Reads the line-oriented netlist format. Throws ParseError on syntax
// trouble (line/column in the message) and on any violated structural
// invariant: unknown cell type, unbound pin, duplicate instance name,
// multiply-driven net, combinational cycle.
Netlist parse_netlist(std::istream& in,
                      const InterfaceTable& table = InterfaceTable::standard());
Netlist parse_netlist(std::string_view text,
                      const InterfaceTable& table = InterfaceTable::standard());

// Syntax-only variant: grammar and declarations are enforced, structural
// invariants are left to validate(). The diagnostics front end uses this to
// report every problem instead of the first.
Netlist parse_netlist_raw(std::istream& in);

// Canonical text form; parse_netlist(write_netlist(n)) == n.
std::string write_netlist(const Netlist& n,
                          const InterfaceTable& table = InterfaceTable::standard());

// Empty result iff all structural invariants hold.
std::vector<Diagnostic> validate(const Netlist& n,
                                 const InterfaceTable& table = InterfaceTable::standard());

// width conventional flip-flops on a shared clock: inputs clk, D1..Dw,
// outputs Q1..Qw. Gating is a separate transform.
Netlist build_register_demo(int width);

// Renames a net everywhere it appears. Throws if `to` already exists.
void rename_net(Netlist& n, const std::string& from, const std::string& to);

bool is_valid_identifier(std::string_view s);

}  // namespace cgforge

#endif  // CGFORGE_NETLIST_HPP_
