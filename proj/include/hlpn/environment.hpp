#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hlpn/bag.hpp"
#include "hlpn/guard.hpp"

namespace hlpn {

/// Region of interest. `id` names the region (e.g. "y1"), `prop` the atomic
/// proposition observed while some robot is inside it (e.g. "b1").
struct region {
  std::string id;
  std::string prop;
};

/// Partition cell: the set of regions it lies in and how many robots fit.
struct cell {
  std::string id;
  std::vector<std::string> regions;
  int capacity = 1;
};

struct violation {
  std::string code;
  std::string message;
};

/// Static world model shared read-only by every net and simulation worker:
/// regions, partition cells with capacities, and the cell adjacency that
/// defines which moves exist at all. Construction only indexes the data;
/// shape rules are reported by validate() so that broken inputs can be
/// diagnosed rather than rejected wholesale.
class environment {
 public:
  environment(std::vector<region> regions, std::string free_region,
              std::vector<cell> cells,
              std::vector<std::pair<std::string, std::string>> adjacency,
              int team_size);

  std::vector<violation> validate() const;

  int team_size() const { return team_size_; }
  const std::vector<region>& regions() const { return regions_; }
  const std::vector<cell>& cells() const { return cells_; }
  const std::string& free_region() const { return free_region_; }
  const std::vector<std::pair<std::string, std::string>>& adjacency() const {
    return adjacency_;
  }

  std::size_t cell_count() const { return cells_.size(); }
  std::size_t region_count() const { return regions_.size(); }

  int cell_index(std::string_view id) const;    // throws structural_error
  int region_index(std::string_view id) const;  // throws structural_error
  std::optional<int> find_cell(std::string_view id) const;
  std::optional<int> find_region(std::string_view id) const;
  /// Index of the proposition of region i (identical to the region index).
  const std::string& prop_of(int region_idx) const {
    return regions_[region_idx].prop;
  }
  std::optional<int> find_prop(std::string_view prop) const;
  int prop_index(std::string_view prop) const;  // throws structural_error

  /// Region indices covering cell `ci`, in declaration order.
  const std::vector<int>& cell_regions(int ci) const {
    return cell_regions_[ci];
  }
  int capacity(int ci) const { return cells_[ci].capacity; }
  /// Index of the unique free-space cell, or -1 when the input lacks one
  /// (validate() reports that).
  int free_cell() const { return free_cell_; }

  bool adjacent(int a, int b) const;
  /// Neighbor cell indices of `ci`, ascending.
  const std::vector<int>& neighbors(int ci) const { return neighbors_[ci]; }

  /// Characteristic conjunction of a cell: the propositions of every region
  /// covering it, in canonical region order.
  guard cell_label(std::string_view cell_id) const;
  guard cell_label(int ci) const;

  universe_ptr prop_universe() const { return prop_universe_; }
  universe_ptr cell_universe() const { return cell_universe_; }

  /// Occupancy multi-set over propositions for a robot placement given by
  /// cell ids. A robot in an overlap cell counts once per covering region.
  bag occupancy_of(const std::map<std::string, std::string>& placement) const;
  /// Same, for placements given as cell indices (one entry per robot).
  bag occupancy_from_cells(std::span<const int> robot_cells) const;
  /// Robots per cell as a bag over cell ids.
  bag cell_occupancy(std::span<const int> robot_cells) const;

 private:
  std::vector<region> regions_;
  std::string free_region_;
  std::vector<cell> cells_;
  std::vector<std::pair<std::string, std::string>> adjacency_;
  int team_size_ = 0;

  std::map<std::string, int, std::less<>> region_idx_;
  std::map<std::string, int, std::less<>> prop_idx_;
  std::map<std::string, int, std::less<>> cell_idx_;
  std::vector<std::vector<int>> cell_regions_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::pair<int, int>> resolved_adjacency_;
  int free_cell_ = -1;
  universe_ptr prop_universe_;
  universe_ptr cell_universe_;
};

}  // namespace hlpn
