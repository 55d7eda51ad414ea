#pragma once

#include "hlpn/hlpn.hpp"

namespace hlpn {

/// The global enabling function: the guard that licenses one synchronized
/// firing of robot moves with a mission transition. Pure; the moves are only
/// fired fictitiously. Returns False when the post-move placement would
/// overfill a cell or fails the mission guard; malformed bindings raise
/// structural/semantics errors instead (an error is not a verdict).
///
/// Steps: (1) simulate the post-move cell occupancy, unmoved robots staying
/// put; (2) any cell above capacity -> False; (3) a TRUE guard needs nothing
/// else; (4) otherwise check the simulated proposition occupancy against the
/// guard: a positive literal with no robot in the region, or a negated one
/// with any robot in it, -> False; (5) True.
bool gef(const hlpn_state& state, const binding& b, const environment& env);

}  // namespace hlpn
