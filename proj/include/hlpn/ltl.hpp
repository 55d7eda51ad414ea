#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hlpn/environment.hpp"
#include "hlpn/guard.hpp"
#include "hlpn/spec_net.hpp"

namespace hlpn {

enum class term_kind {
  eventually,  // F lit
  until,       // (a U b), non-strict
  immediate,   // lit, evaluated at position 0
};

struct ltl_term {
  term_kind kind = term_kind::immediate;
  literal a;  // the literal of F/immediate terms; lhs of until
  literal b;  // rhs of until, unused otherwise

  bool operator==(const ltl_term&) const = default;
};

/// Conjunction of co-safe terms. The fragment is deliberately small: big
/// enough for visit/avoid/sequencing missions, small enough to compile with
/// a per-term product instead of a full translation.
struct ltl_formula {
  std::vector<ltl_term> terms;
  std::string source;
};

/// Parses "F lit", "(lit U lit)" and bare literals joined by '&'.
/// Whitespace-insensitive. Throws parse_error with a byte position; if
/// `known_props` is given, undeclared propositions are rejected too.
ltl_formula parse_formula(std::string_view text);
ltl_formula parse_formula(std::string_view text,
                          const std::set<std::string>& known_props);

struct compile_options {
  std::size_t max_places = 4096;
};

/// Compiles the formula into a mission net over the environment's
/// propositions. Semantics: a proposition holds at a step iff at least one
/// robot occupies the region (team-wide evaluation); position 0 of every
/// trace is the initial observation with the whole team in free space, and
/// the emitted initial place already accounts for it. Transitions carry the
/// minimal conjunction their product edge needs; TRUE self-loops are kept on
/// non-final places so the team can move without progressing the mission.
spec_opn compile_to_specopn(const ltl_formula& formula,
                            const environment& env,
                            const compile_options& opts = {});

}  // namespace hlpn
