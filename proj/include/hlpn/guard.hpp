#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hlpn/bag.hpp"

namespace hlpn {

struct literal {
  std::string prop;
  bool negated = false;

  bool operator==(const literal&) const = default;
};

inline literal negate(literal l) {
  l.negated = !l.negated;
  return l;
}

/// Transition guard: either TRUE or a conjunction of literals with no
/// proposition repeated. Disjunctions are not representable; a disjunctive
/// guard must be split across parallel transitions beforehand.
class guard {
 public:
  static guard truth();
  static guard conjunction(std::vector<literal> lits);

  bool is_true() const { return literals_.empty(); }
  const std::vector<literal>& literals() const { return literals_; }

  /// "1" for TRUE, otherwise "&"-joined literals, "!" marking negation.
  std::string to_string() const;

  /// Guard holds under a team-wide observation: a positive literal needs
  /// occupancy >= 1, a negated one needs occupancy 0.
  bool satisfied(const bag& prop_occupancy) const;

  bool operator==(const guard&) const = default;

 private:
  std::vector<literal> literals_;  // empty means TRUE
};

/// Parse a single conjunction: "1" (TRUE), literals joined by "&" (canonical)
/// or "," (Renew-style), "!" for negation. No disjunction allowed here.
guard parse_guard(std::string_view text);

/// Parse a guard in disjunctive normal form: "|"-separated disjuncts, each a
/// conjunction as in parse_guard, optionally parenthesized. Returns one guard
/// per disjunct. Exceeding `max_disjuncts` is an error.
std::vector<guard> parse_guard_dnf(std::string_view text,
                                   std::size_t max_disjuncts = 64);

}  // namespace hlpn
