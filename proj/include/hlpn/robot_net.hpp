#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hlpn/environment.hpp"
#include "hlpn/guard.hpp"

namespace hlpn {

/// One directed move between two places of a robot net.
struct robot_move {
  std::string id;  // canonical "t_{src}_{dst}" over cell ids
  int from = 0;    // place index
  int to = 0;      // place index
};

/// Safe state-machine net of one robot: one place per cell the robot may
/// enter, one transition per directed adjacent pair of allowed cells, a
/// single token marking the robot's current cell. Heterogeneity across the
/// team is nothing more than different place sets and topologies here.
class robot_opn {
 public:
  /// Builds the net per the construction rules. Deterministic: places follow
  /// the environment's cell declaration order, moves follow place order.
  static robot_opn build(const environment& env, std::string robot_id,
                         const std::vector<std::string>& allowed_cells,
                         const std::string& initial_cell);

  const std::string& id() const { return id_; }
  std::size_t place_count() const { return place_cells_.size(); }
  /// Environment cell index of each place (the associating function).
  const std::vector<int>& place_cells() const { return place_cells_; }
  const std::vector<std::string>& place_ids() const { return place_ids_; }
  const std::vector<robot_move>& moves() const { return moves_; }
  const std::vector<guard>& place_labels() const { return place_labels_; }
  /// Label of a move = label of its destination place.
  const guard& move_label(int move_idx) const {
    return place_labels_[moves_[move_idx].to];
  }

  int marking() const { return marking_; }
  int initial_place() const { return initial_place_; }
  const std::string& marked_place_id() const { return place_ids_[marking_]; }
  /// Environment cell index the robot currently occupies.
  int marked_cell() const { return place_cells_[marking_]; }
  int initial_cell() const { return place_cells_[initial_place_]; }

  /// Moves whose input place is the marked place, in declaration order.
  std::vector<int> enabled() const;
  /// Fires a move; semantics_error if its input place is not marked.
  void fire(int move_idx);
  void reset() { marking_ = initial_place_; }

  /// Place index for an environment cell, -1 when the cell is not allowed.
  int place_for_cell(int env_cell_idx) const;
  int move_index(std::string_view move_id) const;  // throws structural_error
  /// Move out of the marked place into `place`, -1 if none exists.
  int move_to_place(int place) const;

 private:
  std::string id_;
  std::vector<int> place_cells_;
  std::vector<std::string> place_ids_;
  std::vector<guard> place_labels_;
  std::vector<robot_move> moves_;
  std::vector<std::vector<int>> outgoing_;  // per place, move indices
  std::vector<int> cell_to_place_;          // dense over env cells, -1 absent
  int marking_ = 0;
  int initial_place_ = 0;

  friend class hlpn_state;
  void set_marking(int place) { marking_ = place; }
};

}  // namespace hlpn
