#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hlpn/environment.hpp"
#include "hlpn/ltl.hpp"
#include "hlpn/robot_net.hpp"
#include "hlpn/simulate.hpp"
#include "hlpn/spec_net.hpp"

namespace hlpn {

/// One synchronized step as written in a trace file: identifiers only, so a
/// step can be replayed (or rejected) against freshly loaded models.
struct recorded_step {
  std::string spec_transition;
  std::map<std::string, std::string> moves;  // robot id -> move id
};

struct oracle_options {
  std::size_t state_bound = 1'000'000;
};

struct oracle_result {
  bool reachable = false;
  std::int64_t optimum = 0;  // in units of the requested metric
  std::vector<recorded_step> witness;
  std::int64_t witness_sync_steps = 0;
  std::int64_t witness_total_moves = 0;
  std::size_t states_explored = 0;
};

/// Explicit search over the synchronized product of all nets: breadth-first
/// for the sync-steps metric, uniform-cost with edge cost = binding arity
/// for total-moves. Single-threaded on purpose — the witness must be the
/// canonical one. Throws bound_error past `state_bound` distinct states.
oracle_result bfs_optimum(const environment& env,
                          const std::vector<robot_opn>& robots,
                          const spec_opn& spec, metric_kind metric,
                          const oracle_options& opts = {});

/// True iff every step is gef-admitted and firable in sequence from the
/// initial state and the last state is final. Malformed steps simply fail.
bool replay(const std::vector<recorded_step>& steps, const environment& env,
            const std::vector<robot_opn>& robots, const spec_opn& spec);
bool replay(const trace& t, const environment& env,
            const std::vector<robot_opn>& robots, const spec_opn& spec);

std::vector<recorded_step> to_recorded(const trace& t);

/// Finite-trace semantics of the fragment, implemented directly on the
/// observation sequence and independent of the compiler: F holds if some
/// position satisfies the literal; (a U b) if some position satisfies b with
/// a at every strictly earlier position; a bare literal is checked at
/// position 0. Position 0 is the first observation given.
bool eval_ltl(const ltl_formula& formula, const std::vector<bag>& trace);

/// Same semantics over bitmask observations; bit i of an observation is the
/// truth of prop_order[i].
bool eval_ltl(const ltl_formula& formula,
              const std::vector<std::uint64_t>& trace,
              const std::vector<std::string>& prop_order);

/// Nondeterministic marching of a mission net over observations to consume:
/// true iff a final place is reachable along them (checked before and after
/// every consumption). For nets compiled from formulas the observations to
/// pass are the trace positions AFTER the initial one — the compiled initial
/// place already accounts for position 0.
bool spec_marching_accepts(const spec_opn& net,
                           const std::vector<std::uint64_t>& observations,
                           const std::vector<std::string>& prop_order);

}  // namespace hlpn
