#include "hlpn/robot_net.hpp"

#include <algorithm>

#include "hlpn/errors.hpp"

namespace hlpn {

robot_opn robot_opn::build(const environment& env, std::string robot_id,
                           const std::vector<std::string>& allowed_cells,
                           const std::string& initial_cell) {
  robot_opn net;
  net.id_ = std::move(robot_id);

  std::vector<int> allowed;
  allowed.reserve(allowed_cells.size());
  for (const auto& cid : allowed_cells) {
    auto idx = env.find_cell(cid);
    if (!idx) {
      throw structural_error("robot " + net.id_ +
                             ": allowed cell is not in the environment: " +
                             cid);
    }
    allowed.push_back(*idx);
  }
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());

  net.cell_to_place_.assign(env.cell_count(), -1);
  for (std::size_t p = 0; p < allowed.size(); ++p) {
    int ci = allowed[p];
    net.cell_to_place_[ci] = static_cast<int>(p);
    net.place_cells_.push_back(ci);
    net.place_ids_.push_back(env.cells()[ci].id);
    net.place_labels_.push_back(env.cell_label(ci));
  }

  net.outgoing_.resize(net.place_cells_.size());
  for (std::size_t src = 0; src < net.place_cells_.size(); ++src) {
    for (std::size_t dst = 0; dst < net.place_cells_.size(); ++dst) {
      if (src == dst) continue;  // staying put is not a move
      if (!env.adjacent(net.place_cells_[src], net.place_cells_[dst]))
        continue;
      robot_move m;
      m.id = "t_" + net.place_ids_[src] + "_" + net.place_ids_[dst];
      m.from = static_cast<int>(src);
      m.to = static_cast<int>(dst);
      net.outgoing_[src].push_back(static_cast<int>(net.moves_.size()));
      net.moves_.push_back(std::move(m));
    }
  }

  auto init = env.find_cell(initial_cell);
  if (!init || net.cell_to_place_[*init] < 0) {
    throw structural_error("robot " + net.id_ +
                           ": initial cell is not an allowed cell: " +
                           initial_cell);
  }
  net.initial_place_ = net.cell_to_place_[*init];
  net.marking_ = net.initial_place_;
  return net;
}

std::vector<int> robot_opn::enabled() const { return outgoing_[marking_]; }

void robot_opn::fire(int move_idx) {
  if (move_idx < 0 || move_idx >= static_cast<int>(moves_.size())) {
    throw structural_error("robot " + id_ + ": no such move index");
  }
  const auto& m = moves_[move_idx];
  if (m.from != marking_) {
    throw semantics_error("robot " + id_ + ": move " + m.id +
                          " is not enabled at " + marked_place_id());
  }
  marking_ = m.to;
}

int robot_opn::place_for_cell(int env_cell_idx) const {
  if (env_cell_idx < 0 ||
      env_cell_idx >= static_cast<int>(cell_to_place_.size())) {
    return -1;
  }
  return cell_to_place_[env_cell_idx];
}

int robot_opn::move_index(std::string_view move_id) const {
  for (std::size_t i = 0; i < moves_.size(); ++i) {
    if (moves_[i].id == move_id) return static_cast<int>(i);
  }
  throw structural_error("robot " + id_ + ": unknown move id: " +
                         std::string(move_id));
}

int robot_opn::move_to_place(int place) const {
  for (int m : outgoing_[marking_]) {
    if (moves_[m].to == place) return m;
  }
  return -1;
}

}  // namespace hlpn
