#pragma once

// Shared fixtures and independent oracles for the test suites. Everything
// here recomputes from first principles on purpose — nothing may lean on the
// code paths it is checking.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hlpn/environment.hpp"
#include "hlpn/gef.hpp"
#include "hlpn/hlpn.hpp"
#include "hlpn/ltl.hpp"
#include "hlpn/rng.hpp"
#include "hlpn/robot_net.hpp"
#include "hlpn/spec_net.hpp"
#include "hlpn/verify.hpp"

namespace hlpn::testing {

// Three-region workspace with an overlap, five partition cells, free space
// sized for the team.
inline environment case_env(int team = 3) {
  return environment(
      {{"y1", "b1"}, {"y2", "b2"}, {"y3", "b3"}, {"y4", "b4"}}, "y4",
      {{"p1", {"y1"}, 2},
       {"p2", {"y2", "y3"}, 2},
       {"p3", {"y3"}, 2},
       {"p4", {"y4"}, team},
       {"p5", {"y2"}, 2}},
      {{"p4", "p1"}, {"p4", "p3"}, {"p4", "p5"}, {"p3", "p2"}, {"p5", "p2"}},
      team);
}

inline std::vector<std::string> all_cells() {
  return {"p1", "p2", "p3", "p4", "p5"};
}

inline std::vector<robot_opn> case_robots(const environment& env) {
  return {robot_opn::build(env, "r1", all_cells(), "p4"),
          robot_opn::build(env, "r2", all_cells(), "p4"),
          robot_opn::build(env, "r3", {"p1", "p3", "p4", "p5"}, "p4")};
}

inline std::vector<robot_opn> case_robots_two(const environment& env) {
  return {robot_opn::build(env, "r1", all_cells(), "p4"),
          robot_opn::build(env, "r2", {"p1", "p3", "p4", "p5"}, "p4")};
}

inline ltl_formula case_formula() {
  return parse_formula("F b3 & F b2 & F b1 & (!b3 U b1)");
}

inline bag prop_bag(const environment& env,
                    const std::map<std::string, std::int64_t>& counts) {
  return bag(env.prop_universe(), counts);
}

// ---------------------------------------------------------------------------
// Naive admissibility oracle. Materializes the full post-move placement and
// decides capacity and guard truth literal by literal, straight from the
// environment tables.
inline bool naive_gef(const hlpn_state& state, const binding& b,
                      const environment& env) {
  std::vector<int> placement(state.team_size());
  for (int r = 0; r < state.team_size(); ++r) {
    placement[r] = state.robot_cell(r);
  }
  for (const auto& [r, m] : b.moves) {
    placement[r] = state.robot(r).place_cells()[state.robot(r).moves()[m].to];
  }

  for (std::size_t ci = 0; ci < env.cell_count(); ++ci) {
    int count = 0;
    for (int cell : placement) {
      if (cell == static_cast<int>(ci)) ++count;
    }
    if (count > env.capacity(static_cast<int>(ci))) return false;
  }

  const guard& g = state.spec().transitions()[b.spec_transition].g;
  for (const auto& lit : g.literals()) {
    bool someone_inside = false;
    for (int cell : placement) {
      for (int region : env.cell_regions(cell)) {
        if (env.prop_of(region) == lit.prop) someone_inside = true;
      }
    }
    if (lit.negated ? someone_inside : !someone_inside) return false;
  }
  return true;
}

// All marking-enabled binding candidates, whatever the gef thinks of them.
// Deliberately written as plain nested loops so it shares nothing with
// enabled_bindings.
inline std::vector<binding> all_candidates(const hlpn_state& state) {
  std::vector<binding> out;
  const int team = state.team_size();
  for (int t : state.spec().enabled()) {
    for (std::uint32_t subset = 1; subset < (1u << team); ++subset) {
      std::vector<int> robots;
      for (int r = 0; r < team; ++r) {
        if (subset & (1u << r)) robots.push_back(r);
      }
      std::vector<std::vector<int>> options;
      bool feasible = true;
      for (int r : robots) {
        options.push_back(state.robot(r).enabled());
        if (options.back().empty()) feasible = false;
      }
      if (!feasible) continue;
      std::vector<std::size_t> pick(robots.size(), 0);
      while (true) {
        binding b;
        b.spec_transition = t;
        for (std::size_t i = 0; i < robots.size(); ++i) {
          b.moves.emplace_back(robots[i], options[i][pick[i]]);
        }
        out.push_back(std::move(b));
        std::size_t pos = 0;
        while (pos < pick.size() && ++pick[pos] == options[pos].size()) {
          pick[pos++] = 0;
        }
        if (pos == pick.size()) break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random small instances for the property suites.

struct random_instance {
  environment env;
  std::vector<robot_opn> robots;
  spec_opn spec;
};

inline random_instance make_random_instance(rng& r) {
  const int nregions = 2 + static_cast<int>(r.bounded(3));  // incl. free
  const int team = 1 + static_cast<int>(r.bounded(3));
  const int ncells = 2 + static_cast<int>(r.bounded(5));

  std::vector<region> regions;
  for (int i = 1; i <= nregions; ++i) {
    regions.push_back({"y" + std::to_string(i), "b" + std::to_string(i)});
  }
  const std::string free_region = regions.back().id;

  std::vector<cell> cells;
  cells.push_back({"p1", {free_region}, team});  // the free cell
  for (int i = 2; i <= ncells; ++i) {
    std::vector<std::string> rs;
    const int picks = 1 + static_cast<int>(r.bounded(2));
    for (int k = 0; k < picks; ++k) {
      const auto& candidate = regions[r.bounded(nregions - 1)].id;
      if (std::find(rs.begin(), rs.end(), candidate) == rs.end()) {
        rs.push_back(candidate);
      }
    }
    cells.push_back({"p" + std::to_string(i), rs,
                     1 + static_cast<int>(r.bounded(3))});
  }

  std::vector<std::pair<std::string, std::string>> adjacency;
  for (int i = 0; i < ncells; ++i) {
    for (int j = i + 1; j < ncells; ++j) {
      if (r.bounded(3) != 0) {
        adjacency.emplace_back(cells[i].id, cells[j].id);
      }
    }
  }

  environment env(regions, free_region, cells, adjacency, team);

  std::vector<robot_opn> robots;
  for (int k = 1; k <= team; ++k) {
    std::vector<std::string> allowed{cells[0].id};
    for (int i = 1; i < ncells; ++i) {
      if (r.bounded(4) != 0) allowed.push_back(cells[i].id);
    }
    robots.push_back(robot_opn::build(env, "r" + std::to_string(k), allowed,
                                      cells[0].id));
  }

  const int nplaces = 2 + static_cast<int>(r.bounded(3));
  std::vector<std::string> places;
  for (int i = 0; i < nplaces; ++i) places.push_back("s" + std::to_string(i));
  std::vector<spec_opn::transition_desc> transitions;
  const int ntrans = 3 + static_cast<int>(r.bounded(6));
  for (int i = 0; i < ntrans; ++i) {
    guard g = guard::truth();
    if (r.bounded(4) != 0) {
      std::vector<literal> lits;
      const int nlits = 1 + static_cast<int>(r.bounded(3));
      for (int k = 0; k < nlits; ++k) {
        literal lit{regions[r.bounded(nregions)].prop, r.bounded(2) == 0};
        bool dup = false;
        for (const auto& prev : lits) dup |= prev.prop == lit.prop;
        if (!dup) lits.push_back(lit);
      }
      g = guard::conjunction(lits);
    }
    transitions.push_back({"u" + std::to_string(i),
                           places[r.bounded(nplaces)],
                           places[r.bounded(nplaces)], g});
  }
  std::vector<std::string> finals{places[r.bounded(nplaces)]};
  spec_opn spec(places, places[0], finals, transitions);

  return random_instance{std::move(env), std::move(robots), std::move(spec)};
}

// Scatter the robots over allowed cells without breaking any capacity, and
// drop the spec token on a random place.
inline void randomize_state(hlpn_state& state, rng& r) {
  const auto& env = state.env();
  std::vector<int> occupancy(env.cell_count(), 0);
  std::vector<int> placement;
  for (int k = 0; k < state.team_size(); ++k) {
    const auto& net = state.robot(k);
    int place = -1;
    for (int attempt = 0; attempt < 32; ++attempt) {
      int candidate = static_cast<int>(r.bounded(net.place_count()));
      int cell = net.place_cells()[candidate];
      if (occupancy[cell] < env.capacity(cell)) {
        place = candidate;
        break;
      }
    }
    if (place < 0) place = net.place_for_cell(net.initial_cell());
    occupancy[net.place_cells()[place]]++;
    placement.push_back(place);
  }
  state.set_markings(placement,
                     static_cast<int>(r.bounded(state.spec().places().size())));
}

// ---------------------------------------------------------------------------
// Exhaustive compiler/evaluator agreement over the tree of observation
// traces. Position 0 is fixed to `obs0`; later positions range over every
// subset of the propositions. Returns the number of disagreements between
// marching the compiled net and the direct finite-trace evaluator.
class agreement_walker {
 public:
  agreement_walker(const spec_opn& net, const ltl_formula& f,
                   std::vector<std::string> prop_order, std::uint64_t obs0)
      : formula_(&f), prop_order_(std::move(prop_order)) {
    const std::size_t nplaces = net.places().size();
    const std::size_t nobs = std::size_t{1} << prop_order_.size();
    step_.assign(nplaces, std::vector<std::uint64_t>(nobs, 0));

    std::map<std::string, int> bit;
    for (std::size_t i = 0; i < prop_order_.size(); ++i) {
      bit.emplace(prop_order_[i], static_cast<int>(i));
    }
    for (const auto& t : net.transitions()) {
      std::uint64_t pos = 0, neg = 0;
      for (const auto& lit : t.g.literals()) {
        (lit.negated ? neg : pos) |= std::uint64_t{1} << bit.at(lit.prop);
      }
      for (std::uint64_t obs = 0; obs < nobs; ++obs) {
        if ((obs & pos) == pos && (obs & neg) == 0) {
          step_[t.from][obs] |= std::uint64_t{1} << t.to;
        }
      }
    }
    for (int fp : net.final_places()) final_mask_ |= std::uint64_t{1} << fp;
    initial_ = std::uint64_t{1} << net.marking();
    trace_.push_back(obs0);
  }

  long run(int max_len) {
    walk(initial_, (initial_ & final_mask_) != 0, max_len);
    return mismatches_;
  }

 private:
  void walk(std::uint64_t reach, bool accepted, int max_len) {
    if (eval_ltl(*formula_, trace_, prop_order_) != accepted) ++mismatches_;
    if (static_cast<int>(trace_.size()) >= max_len) return;
    const std::size_t nobs = std::size_t{1} << prop_order_.size();
    for (std::uint64_t obs = 0; obs < nobs; ++obs) {
      std::uint64_t next = 0;
      for (std::uint64_t rest = reach; rest;) {
        const int p = std::countr_zero(rest);
        rest &= rest - 1;
        next |= step_[p][obs];
      }
      trace_.push_back(obs);
      walk(next, accepted || (next & final_mask_), max_len);
      trace_.pop_back();
    }
  }

  const ltl_formula* formula_;
  std::vector<std::string> prop_order_;
  std::vector<std::vector<std::uint64_t>> step_;
  std::uint64_t final_mask_ = 0;
  std::uint64_t initial_ = 0;
  std::vector<std::uint64_t> trace_;
  long mismatches_ = 0;
};

}  // namespace hlpn::testing
