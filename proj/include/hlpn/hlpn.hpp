#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hlpn/bag.hpp"
#include "hlpn/environment.hpp"
#include "hlpn/rng.hpp"
#include "hlpn/robot_net.hpp"
#include "hlpn/spec_net.hpp"

namespace hlpn {

/// One synchronized firing: a mission transition plus one move per bound
/// robot. Robots not mentioned stay where they are. At least one robot must
/// move; at most the whole team.
struct binding {
  int spec_transition = 0;
  /// (robot index, move index) pairs, ascending by robot, no repeats.
  std::vector<std::pair<int, int>> moves;

  bool operator==(const binding&) const = default;
};

/// Guard of one spec transition with its propositions resolved to indices,
/// so the gef does not chase strings on the hot path.
struct resolved_guard {
  bool is_true = true;
  std::vector<int> positive;  // proposition indices that must be occupied
  std::vector<int> negative;  // proposition indices that must be empty
};

/// Global state of the system net: the mission token, one token per robot
/// net, and the occupancy multi-set kept coherent with the robot markings.
/// A state is confined to one simulation run; copies fork cheaply.
class hlpn_state {
 public:
  /// Initial state: every net on its initial marking. Throws semantics_error
  /// if the initial placement already violates a cell capacity.
  hlpn_state(const environment& env, std::vector<robot_opn> robots,
             spec_opn spec);

  const environment& env() const { return *env_; }
  const spec_opn& spec() const { return spec_; }
  const std::vector<robot_opn>& robots() const { return robots_; }
  const robot_opn& robot(int r) const { return robots_[r]; }
  int team_size() const { return static_cast<int>(robots_.size()); }

  /// Occupancy multi-set over propositions.
  const bag& occupancy() const { return occupancy_; }
  /// Robots currently in each cell, dense over environment cells.
  const std::vector<int>& cell_occupancy() const { return cell_occupancy_; }
  /// Environment cell index of robot r.
  int robot_cell(int r) const { return robots_[r].marked_cell(); }

  bool is_final() const { return spec_.is_final(); }

  const resolved_guard& guard_of(int spec_transition) const {
    return (*guards_)[spec_transition];
  }

  /// Fires a binding. Re-checks the gef; a False verdict is a
  /// semantics_error. Occupancy is recomputed from the new placement.
  void fire(const binding& b);

  /// Robot index by id; structural_error when unknown.
  int robot_index(std::string_view robot_id) const;

  /// Overwrites all markings at once (search front-ends walk the product
  /// space through this). Occupancy is recomputed; capacities are not
  /// re-checked here.
  void set_markings(std::span<const int> robot_places, int spec_place);

 private:
  void recompute_occupancy();

  const environment* env_;
  std::vector<robot_opn> robots_;
  spec_opn spec_;
  bag occupancy_;
  std::vector<int> cell_occupancy_;
  std::shared_ptr<const std::vector<resolved_guard>> guards_;
};

/// Binding construction from identifiers; unknown ids are structural errors.
binding make_binding(const hlpn_state& state, std::string_view spec_t_id,
                     const std::map<std::string, std::string>& moves_by_robot);

/// Every gef-admissible binding at this state, in canonical order: spec
/// transitions by id, arity ascending, robot subsets lexicographically, then
/// move-id tuples lexicographically. Empty result means the system net is
/// dead at this state.
std::vector<binding> enabled_bindings(const hlpn_state& state);

/// One randomized draw following the documented sampling procedure: uniform
/// marking-enabled spec transition, uniform arity, uniform robot subset,
/// uniform enabled move per robot; rejected while the gef says False. At
/// most `budget` attempts; nullopt afterwards (which does NOT prove
/// deadlock — callers fall back to enabled_bindings for that).
std::optional<binding> sample_binding(const hlpn_state& state, rng& rand,
                                      int budget);

}  // namespace hlpn
