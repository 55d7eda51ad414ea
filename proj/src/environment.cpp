#include "hlpn/environment.hpp"

#include <algorithm>

#include "hlpn/errors.hpp"

namespace hlpn {

environment::environment(
    std::vector<region> regions, std::string free_region,
    std::vector<cell> cells,
    std::vector<std::pair<std::string, std::string>> adjacency, int team_size)
    : regions_(std::move(regions)),
      free_region_(std::move(free_region)),
      cells_(std::move(cells)),
      adjacency_(std::move(adjacency)),
      team_size_(team_size) {
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    region_idx_.emplace(regions_[i].id, static_cast<int>(i));
    prop_idx_.emplace(regions_[i].prop, static_cast<int>(i));
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    cell_idx_.emplace(cells_[i].id, static_cast<int>(i));
  }

  cell_regions_.resize(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    for (const auto& rid : cells_[i].regions) {
      auto it = region_idx_.find(rid);
      if (it != region_idx_.end()) cell_regions_[i].push_back(it->second);
    }
    // canonical region order, duplicates collapsed
    auto& rs = cell_regions_[i];
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  }

  neighbors_.resize(cells_.size());
  for (const auto& [a, b] : adjacency_) {
    auto ia = cell_idx_.find(a);
    auto ib = cell_idx_.find(b);
    if (ia == cell_idx_.end() || ib == cell_idx_.end()) continue;
    if (ia->second == ib->second) continue;
    resolved_adjacency_.emplace_back(std::min(ia->second, ib->second),
                                     std::max(ia->second, ib->second));
  }
  std::sort(resolved_adjacency_.begin(), resolved_adjacency_.end());
  resolved_adjacency_.erase(
      std::unique(resolved_adjacency_.begin(), resolved_adjacency_.end()),
      resolved_adjacency_.end());
  for (auto [a, b] : resolved_adjacency_) {
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());

  auto free_it = region_idx_.find(free_region_);
  if (free_it != region_idx_.end()) {
    int free_region_idx = free_it->second;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cell_regions_[i].size() == 1 &&
          cell_regions_[i][0] == free_region_idx) {
        free_cell_ = static_cast<int>(i);
        break;
      }
    }
  }

  std::vector<std::string> props;
  props.reserve(regions_.size());
  for (const auto& r : regions_) props.push_back(r.prop);
  prop_universe_ = make_universe(std::move(props));

  std::vector<std::string> cell_ids;
  cell_ids.reserve(cells_.size());
  for (const auto& c : cells_) cell_ids.push_back(c.id);
  cell_universe_ = make_universe(std::move(cell_ids));
}

std::vector<violation> environment::validate() const {
  std::vector<violation> out;
  auto add = [&out](std::string code, std::string message) {
    out.push_back({std::move(code), std::move(message)});
  };

  if (team_size_ < 1) add("team-size", "team_size must be >= 1");

  {
    std::map<std::string, int> seen_region, seen_prop;
    for (const auto& r : regions_) {
      if (++seen_region[r.id] == 2)
        add("duplicate-region", "region id declared twice: " + r.id);
      if (++seen_prop[r.prop] == 2)
        add("duplicate-prop", "proposition bound twice: " + r.prop);
    }
  }
  {
    std::map<std::string, int> seen;
    for (const auto& c : cells_) {
      if (++seen[c.id] == 2)
        add("duplicate-cell", "cell id declared twice: " + c.id);
    }
  }

  if (region_idx_.find(free_region_) == region_idx_.end()) {
    add("free-region", "free_region is not a declared region: " + free_region_);
  }

  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const auto& c = cells_[i];
    if (c.regions.empty()) {
      add("empty-region-set", "cell has no regions: " + c.id);
    }
    std::map<std::string, int> seen;
    for (const auto& rid : c.regions) {
      if (region_idx_.find(rid) == region_idx_.end()) {
        add("unknown-region", "cell " + c.id + " references unknown region " +
                                  rid);
      }
      if (++seen[rid] == 2) {
        add("duplicate-cell-region",
            "cell " + c.id + " lists region " + rid + " twice");
      }
    }
    if (c.capacity < 1) {
      add("capacity", "cell " + c.id + " must have capacity >= 1");
    }
  }

  // Exactly one free-space cell, labeled by the free region alone, and the
  // free region must not reappear elsewhere.
  auto free_it = region_idx_.find(free_region_);
  if (free_it != region_idx_.end()) {
    int fidx = free_it->second;
    int free_cells = 0;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      bool covers_free =
          std::find(cell_regions_[i].begin(), cell_regions_[i].end(), fidx) !=
          cell_regions_[i].end();
      bool is_free_cell =
          cell_regions_[i].size() == 1 && cell_regions_[i][0] == fidx;
      if (is_free_cell) {
        ++free_cells;
        if (cells_[i].capacity != team_size_) {
          add("free-capacity",
              "free-space cell " + cells_[i].id +
                  " must hold exactly the team (capacity " +
                  std::to_string(team_size_) + ", got " +
                  std::to_string(cells_[i].capacity) + ")");
        }
      } else if (covers_free) {
        add("free-overlap", "free region appears in non-free cell " +
                                cells_[i].id);
      }
    }
    if (free_cells != 1) {
      add("free-cell-count", "expected exactly one free-space cell, found " +
                                 std::to_string(free_cells));
    }
  }

  for (const auto& [a, b] : adjacency_) {
    if (cell_idx_.find(a) == cell_idx_.end() ||
        cell_idx_.find(b) == cell_idx_.end()) {
      add("unknown-adjacency", "adjacency references unknown cell: " + a +
                                   " -- " + b);
    } else if (a == b) {
      add("self-adjacency", "cell adjacent to itself: " + a);
    }
  }

  return out;
}

int environment::cell_index(std::string_view id) const {
  if (auto i = find_cell(id)) return *i;
  throw structural_error("unknown cell id: " + std::string(id));
}

int environment::region_index(std::string_view id) const {
  if (auto i = find_region(id)) return *i;
  throw structural_error("unknown region id: " + std::string(id));
}

std::optional<int> environment::find_cell(std::string_view id) const {
  auto it = cell_idx_.find(id);
  if (it == cell_idx_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> environment::find_region(std::string_view id) const {
  auto it = region_idx_.find(id);
  if (it == region_idx_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> environment::find_prop(std::string_view prop) const {
  auto it = prop_idx_.find(prop);
  if (it == prop_idx_.end()) return std::nullopt;
  return it->second;
}

int environment::prop_index(std::string_view prop) const {
  if (auto i = find_prop(prop)) return *i;
  throw structural_error("unknown proposition: " + std::string(prop));
}

bool environment::adjacent(int a, int b) const {
  const auto& n = neighbors_[a];
  return std::binary_search(n.begin(), n.end(), b);
}

guard environment::cell_label(int ci) const {
  std::vector<literal> lits;
  for (int r : cell_regions_[ci]) lits.push_back({regions_[r].prop, false});
  return guard::conjunction(std::move(lits));
}

guard environment::cell_label(std::string_view cell_id) const {
  return cell_label(cell_index(cell_id));
}

bag environment::occupancy_of(
    const std::map<std::string, std::string>& placement) const {
  std::vector<int> cells;
  cells.reserve(placement.size());
  for (const auto& [robot, cell_id] : placement) {
    cells.push_back(cell_index(cell_id));
  }
  return occupancy_from_cells(cells);
}

bag environment::occupancy_from_cells(std::span<const int> robot_cells) const {
  std::vector<std::int64_t> counts(regions_.size(), 0);
  for (int ci : robot_cells) {
    for (int r : cell_regions_[ci]) ++counts[r];
  }
  return bag(prop_universe_, std::move(counts));
}

bag environment::cell_occupancy(std::span<const int> robot_cells) const {
  std::vector<std::int64_t> counts(cells_.size(), 0);
  for (int ci : robot_cells) ++counts[ci];
  return bag(cell_universe_, std::move(counts));
}

}  // namespace hlpn
