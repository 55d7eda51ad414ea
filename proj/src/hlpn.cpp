#include "hlpn/hlpn.hpp"

#include <algorithm>
#include <cassert>

#include "hlpn/errors.hpp"
#include "hlpn/gef.hpp"

namespace hlpn {

namespace {

std::vector<resolved_guard> resolve_guards(const environment& env,
                                           const spec_opn& spec) {
  std::vector<resolved_guard> out;
  out.reserve(spec.transitions().size());
  for (const auto& t : spec.transitions()) {
    resolved_guard g;
    g.is_true = t.g.is_true();
    for (const auto& lit : t.g.literals()) {
      int p = env.prop_index(lit.prop);  // undeclared props fail here
      (lit.negated ? g.negative : g.positive).push_back(p);
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

hlpn_state::hlpn_state(const environment& env, std::vector<robot_opn> robots,
                       spec_opn spec)
    : env_(&env),
      robots_(std::move(robots)),
      spec_(std::move(spec)),
      occupancy_(env.prop_universe()),
      guards_(std::make_shared<const std::vector<resolved_guard>>(
          resolve_guards(env, spec_))) {
  recompute_occupancy();
  for (std::size_t ci = 0; ci < cell_occupancy_.size(); ++ci) {
    if (cell_occupancy_[ci] > env_->capacity(static_cast<int>(ci))) {
      throw semantics_error("initial placement violates capacity of cell " +
                            env_->cells()[ci].id);
    }
  }
}

void hlpn_state::recompute_occupancy() {
  std::vector<int> placement(robots_.size());
  for (std::size_t r = 0; r < robots_.size(); ++r) {
    placement[r] = robots_[r].marked_cell();
  }
  cell_occupancy_.assign(env_->cell_count(), 0);
  for (int ci : placement) ++cell_occupancy_[ci];
  occupancy_ = env_->occupancy_from_cells(placement);
}

void hlpn_state::fire(const binding& b) {
  if (!gef(*this, b, *env_)) {
    throw semantics_error("binding is not admitted by the gef");
  }
  spec_.fire(b.spec_transition);
  for (const auto& [r, m] : b.moves) {
    robots_[r].fire(m);
  }
  recompute_occupancy();
#ifndef NDEBUG
  for (std::size_t ci = 0; ci < cell_occupancy_.size(); ++ci) {
    assert(cell_occupancy_[ci] <= env_->capacity(static_cast<int>(ci)));
  }
#endif
}

int hlpn_state::robot_index(std::string_view robot_id) const {
  for (std::size_t r = 0; r < robots_.size(); ++r) {
    if (robots_[r].id() == robot_id) return static_cast<int>(r);
  }
  throw structural_error("unknown robot id: " + std::string(robot_id));
}

void hlpn_state::set_markings(std::span<const int> robot_places,
                              int spec_place) {
  if (robot_places.size() != robots_.size()) {
    throw structural_error("set_markings: wrong number of robot markings");
  }
  for (std::size_t r = 0; r < robots_.size(); ++r) {
    if (robot_places[r] < 0 ||
        robot_places[r] >= static_cast<int>(robots_[r].place_count())) {
      throw structural_error("set_markings: place out of range");
    }
    robots_[r].set_marking(robot_places[r]);
  }
  if (spec_place < 0 ||
      spec_place >= static_cast<int>(spec_.places().size())) {
    throw structural_error("set_markings: spec place out of range");
  }
  spec_.set_marking(spec_place);
  recompute_occupancy();
}

binding make_binding(const hlpn_state& state, std::string_view spec_t_id,
                     const std::map<std::string, std::string>& moves_by_robot) {
  binding b;
  b.spec_transition = state.spec().transition_index(spec_t_id);
  for (const auto& [robot_id, move_id] : moves_by_robot) {
    int r = state.robot_index(robot_id);
    b.moves.emplace_back(r, state.robot(r).move_index(move_id));
  }
  std::sort(b.moves.begin(), b.moves.end());
  return b;
}

namespace {

// Marking-enabled spec transitions sorted by id, and each robot's enabled
// moves sorted by move id: the canonical axes of binding enumeration.
std::vector<int> spec_enabled_by_id(const hlpn_state& state) {
  std::vector<int> ts = state.spec().enabled();
  std::sort(ts.begin(), ts.end(), [&state](int a, int b) {
    return state.spec().transitions()[a].id < state.spec().transitions()[b].id;
  });
  return ts;
}

std::vector<std::vector<int>> moves_by_id(const hlpn_state& state) {
  std::vector<std::vector<int>> out(state.team_size());
  for (int r = 0; r < state.team_size(); ++r) {
    out[r] = state.robot(r).enabled();
    const auto& net = state.robot(r);
    std::sort(out[r].begin(), out[r].end(), [&net](int a, int b) {
      return net.moves()[a].id < net.moves()[b].id;
    });
  }
  return out;
}

// Enumerates robot index subsets of a fixed size in lexicographic order.
bool next_combination(std::vector<int>& subset, int n) {
  const int k = static_cast<int>(subset.size());
  for (int i = k - 1; i >= 0; --i) {
    if (subset[i] < n - (k - i)) {
      ++subset[i];
      for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<binding> enabled_bindings(const hlpn_state& state) {
  std::vector<binding> out;
  const int team = state.team_size();
  const auto spec_ts = spec_enabled_by_id(state);
  const auto enabled_moves = moves_by_id(state);

  for (int t : spec_ts) {
    for (int arity = 1; arity <= team; ++arity) {
      std::vector<int> subset(arity);
      for (int i = 0; i < arity; ++i) subset[i] = i;
      do {
        bool feasible = true;
        for (int r : subset) {
          if (enabled_moves[r].empty()) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;

        // Odometer over per-robot move choices; rightmost robot fastest so
        // move-id tuples come out lexicographically.
        std::vector<std::size_t> pick(arity, 0);
        while (true) {
          binding b;
          b.spec_transition = t;
          b.moves.reserve(arity);
          for (int i = 0; i < arity; ++i) {
            b.moves.emplace_back(subset[i], enabled_moves[subset[i]][pick[i]]);
          }
          if (gef(state, b, state.env())) out.push_back(std::move(b));

          int pos = arity - 1;
          while (pos >= 0 &&
                 ++pick[pos] == enabled_moves[subset[pos]].size()) {
            pick[pos] = 0;
            --pos;
          }
          if (pos < 0) break;
        }
      } while (next_combination(subset, team));
    }
  }
  return out;
}

std::optional<binding> sample_binding(const hlpn_state& state, rng& rand,
                                      int budget) {
  const auto spec_ts = state.spec().enabled();
  if (spec_ts.empty()) return std::nullopt;
  const int team = state.team_size();

  std::vector<int> robots(team);
  for (int r = 0; r < team; ++r) robots[r] = r;

  for (int attempt = 0; attempt < budget; ++attempt) {
    binding b;
    b.spec_transition =
        spec_ts[rand.bounded(spec_ts.size())];
    const int arity = 1 + static_cast<int>(rand.bounded(team));

    // Uniform arity-subset: partial Fisher-Yates, then sort for canonical
    // move ordering inside the binding.
    for (int i = 0; i < arity; ++i) {
      std::size_t j = i + rand.bounded(team - i);
      std::swap(robots[i], robots[j]);
    }
    std::vector<int> chosen(robots.begin(), robots.begin() + arity);
    std::sort(chosen.begin(), chosen.end());

    bool feasible = true;
    for (int r : chosen) {
      auto moves = state.robot(r).enabled();
      if (moves.empty()) {
        feasible = false;
        break;
      }
      b.moves.emplace_back(r, moves[rand.bounded(moves.size())]);
    }
    if (!feasible) continue;
    if (gef(state, b, state.env())) return b;
  }
  return std::nullopt;
}

}  // namespace hlpn
