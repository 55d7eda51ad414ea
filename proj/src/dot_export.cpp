#include "hlpn/dot_export.hpp"

#include <sstream>

namespace hlpn {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_dot(const spec_opn& net) {
  std::ostringstream out;
  out << "digraph spec {\n  rankdir=LR;\n";
  for (std::size_t p = 0; p < net.places().size(); ++p) {
    out << "  " << quoted(net.places()[p]) << " [shape=";
    bool fin = false;
    for (int f : net.final_places()) fin |= (f == static_cast<int>(p));
    out << (fin ? "doublecircle" : "circle");
    if (static_cast<int>(p) == net.marking()) {
      out << ",style=filled,fillcolor=lightgrey";
    }
    out << "];\n";
  }
  for (const auto& t : net.transitions()) {
    const std::string tnode = "t_" + t.id;
    out << "  " << quoted(tnode) << " [shape=box,label="
        << quoted(t.id + "\\n" + t.g.to_string()) << "];\n";
    out << "  " << quoted(net.place_id(t.from)) << " -> " << quoted(tnode)
        << ";\n";
    out << "  " << quoted(tnode) << " -> " << quoted(net.place_id(t.to))
        << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const robot_opn& net) {
  std::ostringstream out;
  out << "digraph " << quoted(net.id()) << " {\n  rankdir=LR;\n";
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    out << "  " << quoted(net.place_ids()[p]) << " [shape=circle,label="
        << quoted(net.place_ids()[p] + "\\n" +
                  net.place_labels()[p].to_string());
    if (static_cast<int>(p) == net.marking()) {
      out << ",style=filled,fillcolor=lightgrey";
    }
    out << "];\n";
  }
  for (const auto& m : net.moves()) {
    out << "  " << quoted(m.id) << " [shape=box,label="
        << quoted(m.id + "\\n" +
                  net.place_labels()[m.to].to_string()) << "];\n";
    out << "  " << quoted(net.place_ids()[m.from]) << " -> " << quoted(m.id)
        << ";\n";
    out << "  " << quoted(m.id) << " -> " << quoted(net.place_ids()[m.to])
        << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string system_net_dot(int team_size) {
  std::ostringstream out;
  out << "digraph system {\n  rankdir=LR;\n";
  out << "  \"Rb\" [shape=circle];\n  \"Ms\" [shape=circle];\n";
  for (int i = 1; i <= team_size; ++i) {
    std::string t = "t" + std::to_string(i);
    std::string vars;
    for (int k = 1; k <= i; ++k) {
      if (k > 1) vars += ",";
      vars += "x" + std::to_string(k);
    }
    out << "  " << quoted(t) << " [shape=box];\n";
    out << "  \"Rb\" -> " << quoted(t) << " [dir=both,label="
        << quoted(vars) << "];\n";
    out << "  \"Ms\" -> " << quoted(t) << " [dir=both,label=\"n\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace hlpn
