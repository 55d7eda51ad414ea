#include "hlpn/gef.hpp"

#include "hlpn/errors.hpp"

namespace hlpn {

bool gef(const hlpn_state& state, const binding& b, const environment& env) {
  const auto& robots = state.robots();
  const int team = state.team_size();

  if (b.moves.empty()) {
    throw structural_error("binding moves no robot");
  }
  if (b.spec_transition < 0 ||
      b.spec_transition >=
          static_cast<int>(state.spec().transitions().size())) {
    throw structural_error("binding references an unknown spec transition");
  }
  int prev_robot = -1;
  for (const auto& [r, m] : b.moves) {
    if (r < 0 || r >= team) {
      throw structural_error("binding references an unknown robot");
    }
    if (r <= prev_robot) {
      throw structural_error("binding robots must be distinct and ascending");
    }
    prev_robot = r;
    if (m < 0 || m >= static_cast<int>(robots[r].moves().size())) {
      throw structural_error("binding references an unknown move of robot " +
                             robots[r].id());
    }
  }

  if (state.spec().transitions()[b.spec_transition].from !=
      state.spec().marking()) {
    throw semantics_error("binding's spec transition is not marking-enabled");
  }
  for (const auto& [r, m] : b.moves) {
    if (robots[r].moves()[m].from != robots[r].marking()) {
      throw semantics_error("binding move not enabled for robot " +
                            robots[r].id());
    }
  }

  // (1) fictitious firing: post-move cell occupancy.
  std::vector<std::int64_t> cell_occ(state.cell_occupancy().begin(),
                                     state.cell_occupancy().end());
  for (const auto& [r, m] : b.moves) {
    const auto& net = robots[r];
    const auto& mv = net.moves()[m];
    --cell_occ[net.place_cells()[mv.from]];
    ++cell_occ[net.place_cells()[mv.to]];
  }

  // (2) capacities on the simulated placement.
  for (std::size_t ci = 0; ci < cell_occ.size(); ++ci) {
    if (cell_occ[ci] > env.capacity(static_cast<int>(ci))) return false;
  }

  // (3) a TRUE label needs no occupancy evaluation.
  const resolved_guard& g = state.guard_of(b.spec_transition);
  if (g.is_true) return true;

  // (4) simulated proposition occupancy, updated incrementally from the
  // current one (equal to a recomputation; the naive oracle in the tests
  // recomputes from scratch on purpose).
  std::vector<std::int64_t> prop_occ(state.occupancy().counts());
  for (const auto& [r, m] : b.moves) {
    const auto& net = robots[r];
    const auto& mv = net.moves()[m];
    for (int region : env.cell_regions(net.place_cells()[mv.from])) {
      --prop_occ[region];
    }
    for (int region : env.cell_regions(net.place_cells()[mv.to])) {
      ++prop_occ[region];
    }
  }
  for (int p : g.positive) {
    if (prop_occ[p] == 0) return false;
  }
  for (int p : g.negative) {
    if (prop_occ[p] >= 1) return false;
  }
  return true;
}

}  // namespace hlpn
