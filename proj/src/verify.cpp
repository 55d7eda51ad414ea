#include "hlpn/verify.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

#include "hlpn/errors.hpp"
#include "hlpn/gef.hpp"
#include "hlpn/hlpn.hpp"

namespace hlpn {

namespace {

// Product state: per-robot place indices plus the spec marking, packed as
// the hash key. Occupancy is derivable, so it stays out of the key.
struct key_hash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b9;
      h *= 1099511628211ull;
    }
    return h;
  }
};

recorded_step to_recorded_step(const hlpn_state& state, const binding& b) {
  recorded_step step;
  step.spec_transition = state.spec().transitions()[b.spec_transition].id;
  for (const auto& [r, m] : b.moves) {
    step.moves.emplace(state.robot(r).id(), state.robot(r).moves()[m].id);
  }
  return step;
}

}  // namespace

oracle_result bfs_optimum(const environment& env,
                          const std::vector<robot_opn>& robots,
                          const spec_opn& spec, metric_kind metric,
                          const oracle_options& opts) {
  hlpn_state state(env, robots, spec);
  const int team = state.team_size();

  std::vector<int> initial(team + 1);
  for (int r = 0; r < team; ++r) initial[r] = robots[r].marking();
  initial[team] = spec.marking();

  struct node_info {
    std::int64_t dist = 0;
    std::vector<int> parent;
    recorded_step via;
    bool settled = false;
  };
  std::unordered_map<std::vector<int>, node_info, key_hash> nodes;

  // (cost, discovery sequence) keeps the pop order — and so the witness —
  // canonical.
  using qentry = std::tuple<std::int64_t, std::uint64_t, std::vector<int>>;
  std::priority_queue<qentry, std::vector<qentry>, std::greater<>> queue;
  std::uint64_t seq = 0;

  nodes[initial] = node_info{0, {}, {}, false};
  queue.emplace(0, seq++, initial);

  oracle_result result;

  const auto& finals = spec.final_places();
  auto is_goal = [&](const std::vector<int>& k) {
    return std::binary_search(finals.begin(), finals.end(), k[team]);
  };

  while (!queue.empty()) {
    auto [dist, _, key] = queue.top();
    queue.pop();
    auto& info = nodes[key];
    if (info.settled || dist > info.dist) continue;
    info.settled = true;
    ++result.states_explored;

    if (is_goal(key)) {
      result.reachable = true;
      result.optimum = dist;
      // Walk parents back to the initial state.
      std::vector<recorded_step> steps;
      std::vector<int> cur = key;
      while (cur != initial) {
        const auto& n = nodes[cur];
        steps.push_back(n.via);
        cur = n.parent;
      }
      std::reverse(steps.begin(), steps.end());
      result.witness = std::move(steps);
      result.witness_sync_steps =
          static_cast<std::int64_t>(result.witness.size());
      result.witness_total_moves = 0;
      for (const auto& s : result.witness) {
        result.witness_total_moves +=
            static_cast<std::int64_t>(s.moves.size());
      }
      return result;
    }

    state.set_markings(std::span<const int>(key.data(), team), key[team]);
    for (const auto& b : enabled_bindings(state)) {
      std::vector<int> next = key;
      for (const auto& [r, m] : b.moves) {
        next[r] = robots[r].moves()[m].to;
      }
      next[team] = spec.transitions()[b.spec_transition].to;

      const std::int64_t cost =
          metric == metric_kind::sync_steps
              ? 1
              : static_cast<std::int64_t>(b.moves.size());
      const std::int64_t ndist = dist + cost;

      auto it = nodes.find(next);
      if (it == nodes.end()) {
        if (nodes.size() >= opts.state_bound) {
          throw bound_error("product state bound exceeded");
        }
        nodes[next] = node_info{ndist, key, to_recorded_step(state, b), false};
        queue.emplace(ndist, seq++, std::move(next));
      } else if (!it->second.settled && ndist < it->second.dist) {
        it->second.dist = ndist;
        it->second.parent = key;
        it->second.via = to_recorded_step(state, b);
        queue.emplace(ndist, seq++, std::move(next));
      }
    }
  }

  return result;  // final places unreachable
}

bool replay(const std::vector<recorded_step>& steps, const environment& env,
            const std::vector<robot_opn>& robots, const spec_opn& spec) {
  try {
    hlpn_state state(env, robots, spec);
    for (const auto& s : steps) {
      binding b = make_binding(state, s.spec_transition, s.moves);
      if (b.moves.empty()) return false;
      if (!gef(state, b, env)) return false;
      state.fire(b);
    }
    return state.is_final();
  } catch (const error&) {
    return false;  // unknown ids, disabled firings, broken placements
  }
}

std::vector<recorded_step> to_recorded(const trace& t) {
  std::vector<recorded_step> steps;
  steps.reserve(t.steps.size());
  for (const auto& s : t.steps) {
    recorded_step rs;
    rs.spec_transition = s.spec_transition;
    for (const auto& [robot, move] : s.moves) rs.moves.emplace(robot, move);
    steps.push_back(std::move(rs));
  }
  return steps;
}

bool replay(const trace& t, const environment& env,
            const std::vector<robot_opn>& robots, const spec_opn& spec) {
  return replay(to_recorded(t), env, robots, spec);
}

namespace {

bool lit_holds(const literal& l, const bag& obs) {
  const std::int64_t n = obs[l.prop];
  return l.negated ? n == 0 : n >= 1;
}

bool lit_holds(const literal& l, std::uint64_t obs,
               const std::map<std::string, int>& prop_bit) {
  auto it = prop_bit.find(l.prop);
  if (it == prop_bit.end()) {
    throw structural_error("proposition not in observation order: " + l.prop);
  }
  const bool set = (obs >> it->second) & 1;
  return l.negated ? !set : set;
}

template <typename Obs, typename Holds>
bool eval_terms(const ltl_formula& formula, const std::vector<Obs>& trace,
                Holds&& holds) {
  if (trace.empty()) {
    throw structural_error("observation trace must not be empty");
  }
  for (const auto& term : formula.terms) {
    switch (term.kind) {
      case term_kind::immediate:
        if (!holds(term.a, trace[0])) return false;
        break;
      case term_kind::eventually: {
        bool found = false;
        for (const auto& obs : trace) {
          if (holds(term.a, obs)) {
            found = true;
            break;
          }
        }
        if (!found) return false;
        break;
      }
      case term_kind::until: {
        bool discharged = false;
        for (std::size_t j = 0; j < trace.size(); ++j) {
          if (holds(term.b, trace[j])) {
            discharged = true;
            break;
          }
          if (!holds(term.a, trace[j])) break;  // lhs broken before rhs
        }
        if (!discharged) return false;
        break;
      }
    }
  }
  return true;
}

}  // namespace

bool eval_ltl(const ltl_formula& formula, const std::vector<bag>& trace) {
  return eval_terms(formula, trace, [](const literal& l, const bag& obs) {
    return lit_holds(l, obs);
  });
}

bool eval_ltl(const ltl_formula& formula,
              const std::vector<std::uint64_t>& trace,
              const std::vector<std::string>& prop_order) {
  std::map<std::string, int> prop_bit;
  for (std::size_t i = 0; i < prop_order.size(); ++i) {
    prop_bit.emplace(prop_order[i], static_cast<int>(i));
  }
  return eval_terms(formula, trace,
                    [&prop_bit](const literal& l, std::uint64_t obs) {
                      return lit_holds(l, obs, prop_bit);
                    });
}

bool spec_marching_accepts(const spec_opn& net,
                           const std::vector<std::uint64_t>& observations,
                           const std::vector<std::string>& prop_order) {
  if (prop_order.size() > 64) {
    throw structural_error("more than 64 propositions in marching order");
  }
  std::map<std::string, int> prop_bit;
  for (std::size_t i = 0; i < prop_order.size(); ++i) {
    prop_bit.emplace(prop_order[i], static_cast<int>(i));
  }

  struct masked_guard {
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
  };
  std::vector<masked_guard> guards(net.transitions().size());
  for (std::size_t i = 0; i < net.transitions().size(); ++i) {
    for (const auto& lit : net.transitions()[i].g.literals()) {
      auto it = prop_bit.find(lit.prop);
      if (it == prop_bit.end()) {
        throw structural_error("guard proposition not in marching order: " +
                               lit.prop);
      }
      (lit.negated ? guards[i].neg : guards[i].pos) |= std::uint64_t{1}
                                                       << it->second;
    }
  }

  std::vector<char> current(net.places().size(), 0);
  std::vector<char> is_final(net.places().size(), 0);
  for (int f : net.final_places()) is_final[f] = 1;
  current[net.marking()] = 1;
  if (is_final[net.marking()]) return true;

  for (std::uint64_t obs : observations) {
    std::vector<char> next(net.places().size(), 0);
    bool any = false;
    for (std::size_t p = 0; p < current.size(); ++p) {
      if (!current[p]) continue;
      for (int t : net.outgoing(static_cast<int>(p))) {
        const auto& g = guards[t];
        if ((obs & g.pos) == g.pos && (obs & g.neg) == 0) {
          const int to = net.transitions()[t].to;
          if (is_final[to]) return true;
          next[to] = 1;
          any = true;
        }
      }
    }
    if (!any) return false;  // every token path is stuck
    current = std::move(next);
  }
  return false;
}

}  // namespace hlpn
