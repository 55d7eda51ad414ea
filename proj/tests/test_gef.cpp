#include "doctest.h"

#include "hlpn/errors.hpp"
#include "hlpn/gef.hpp"
#include "test_helpers.hpp"

using namespace hlpn;
using namespace hlpn::testing;

namespace {

// Tiny mission net with one transition per interesting guard, all leaving
// the initial place, so any guard can be put in front of any move set.
spec_opn guard_rack(std::vector<std::pair<std::string, std::string>> guards) {
  std::vector<std::string> places{"s0", "s1"};
  std::vector<spec_opn::transition_desc> ts;
  for (auto& [id, text] : guards) {
    ts.push_back({id, "s0", "s1", parse_guard(text)});
  }
  return spec_opn(places, "s0", {"s1"}, ts);
}

}  // namespace

TEST_CASE("synchronized one-step mission firing") {
  auto env = case_env();
  hlpn_state state(env, case_robots(env),
                   guard_rack({{"t", "b1 & b2 & b3"}}));

  // r1 -> y1, r2 -> y3, r3 -> y2: the guard is satisfied by the post-move
  // occupancy
  auto b = make_binding(state, "t",
                        {{"r1", "t_p4_p1"},
                         {"r2", "t_p4_p3"},
                         {"r3", "t_p4_p5"}});
  CHECK(gef(state, b, env));
  CHECK(naive_gef(state, b, env));
}

TEST_CASE("TRUE guards only need the capacity check") {
  auto env = case_env();
  hlpn_state state(env, case_robots(env), guard_rack({{"t", "1"}}));
  auto b = make_binding(state, "t", {{"r1", "t_p4_p1"}});
  CHECK(gef(state, b, env));
}

TEST_CASE("capacity violations veto the firing") {
  environment env({{"y1", "b1"}, {"y4", "b4"}}, "y4",
                  {{"p1", {"y1"}, 1}, {"p4", {"y4"}, 2}}, {{"p4", "p1"}}, 2);
  REQUIRE(env.validate().empty());
  std::vector<robot_opn> robots{
      robot_opn::build(env, "r1", {"p1", "p4"}, "p4"),
      robot_opn::build(env, "r2", {"p1", "p4"}, "p4")};
  hlpn_state state(env, robots, guard_rack({{"t", "1"}}));

  // two robots into a capacity-1 cell
  auto b = make_binding(state, "t",
                        {{"r1", "t_p4_p1"}, {"r2", "t_p4_p1"}});
  CHECK_FALSE(gef(state, b, env));
  CHECK_FALSE(naive_gef(state, b, env));

  auto single = make_binding(state, "t", {{"r1", "t_p4_p1"}});
  CHECK(gef(state, single, env));
}

TEST_CASE("negated literals see unmoved robots") {
  auto env = case_env();
  auto robots = case_robots(env);
  // park r2 in p3 (region y3) before building the state
  robots[1] = robot_opn::build(env, "r2", all_cells(), "p3");
  hlpn_state state(env, robots, guard_rack({{"t", "b1 & !b3"}}));

  // r1 moves to p1; r2 stays in y3, so !b3 fails on the simulated occupancy
  auto b = make_binding(state, "t", {{"r1", "t_p4_p1"}});
  CHECK_FALSE(gef(state, b, env));
  CHECK_FALSE(naive_gef(state, b, env));
}

TEST_CASE("errors are distinct from a False verdict") {
  auto env = case_env();
  hlpn_state state(env, case_robots(env), guard_rack({{"t", "1"}}));

  SUBCASE("unknown ids") {
    CHECK_THROWS_AS(make_binding(state, "nope", {{"r1", "t_p4_p1"}}),
                    structural_error);
    CHECK_THROWS_AS(make_binding(state, "t", {{"r9", "t_p4_p1"}}),
                    structural_error);
    CHECK_THROWS_AS(make_binding(state, "t", {{"r1", "t_zz"}}),
                    structural_error);
  }

  SUBCASE("malformed bindings") {
    binding empty;
    empty.spec_transition = 0;
    CHECK_THROWS_AS(gef(state, empty, env), structural_error);

    binding dup;
    dup.spec_transition = 0;
    dup.moves = {{0, 0}, {0, 1}};
    CHECK_THROWS_AS(gef(state, dup, env), structural_error);
  }

  SUBCASE("non-enabled moves break the precondition") {
    binding b;
    b.spec_transition = 0;
    b.moves = {{0, state.robot(0).move_index("t_p1_p4")}};
    CHECK_THROWS_AS(gef(state, b, env), semantics_error);
  }
}

TEST_CASE("gef does not mutate the state") {
  auto env = case_env();
  hlpn_state state(env, case_robots(env), guard_rack({{"t", "b1"}}));
  auto before_occ = state.occupancy();
  auto before_marking = state.spec().marking();

  auto b = make_binding(state, "t", {{"r1", "t_p4_p1"}});
  (void)gef(state, b, env);

  CHECK(state.occupancy() == before_occ);
  CHECK(state.spec().marking() == before_marking);
  for (int r = 0; r < state.team_size(); ++r) {
    CHECK(state.robot_cell(r) == env.cell_index("p4"));
  }
}

TEST_CASE("propositions outside every guard are irrelevant") {
  // same world twice, the second with an extra region and an extra isolated
  // cell that nobody visits
  auto base = case_env();
  environment extended(
      {{"y1", "b1"}, {"y2", "b2"}, {"y3", "b3"}, {"y4", "b4"}, {"y9", "b9"}},
      "y4",
      {{"p1", {"y1"}, 2},
       {"p2", {"y2", "y3"}, 2},
       {"p3", {"y3"}, 2},
       {"p4", {"y4"}, 3},
       {"p5", {"y2"}, 2},
       {"p9", {"y9"}, 1}},
      {{"p4", "p1"}, {"p4", "p3"}, {"p4", "p5"}, {"p3", "p2"}, {"p5", "p2"}},
      3);

  auto rack = guard_rack({{"t", "b1 & b2 & b3"}, {"u", "!b1"}});
  hlpn_state a(base, case_robots(base), rack);
  hlpn_state b(extended, case_robots(extended), rack);

  auto bindings_a = enabled_bindings(a);
  auto bindings_b = enabled_bindings(b);
  REQUIRE(bindings_a.size() == bindings_b.size());
  for (std::size_t i = 0; i < bindings_a.size(); ++i) {
    CHECK(bindings_a[i] == bindings_b[i]);
  }
}

TEST_CASE("verdicts match the naive evaluator on random instances") {
  rng r(424242);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    auto instance = make_random_instance(r);
    hlpn_state state(instance.env, instance.robots, instance.spec);
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      randomize_state(state, r);
      for (const auto& b : all_candidates(state)) {
        CHECK(gef(state, b, instance.env) ==
              naive_gef(state, b, instance.env));
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}
