#include "doctest.h"

#include "hlpn/errors.hpp"
#include "hlpn/json_io.hpp"
#include "hlpn/ltl.hpp"
#include "test_helpers.hpp"

using namespace hlpn;
using namespace hlpn::testing;

TEST_CASE("formula parsing") {
  SUBCASE("case-study mission") {
    auto f = parse_formula("F b3 & F b2 & F b1 & (!b3 U b1)");
    REQUIRE(f.terms.size() == 4);
    CHECK(f.terms[0].kind == term_kind::eventually);
    CHECK(f.terms[0].a == literal{"b3", false});
    CHECK(f.terms[3].kind == term_kind::until);
    CHECK(f.terms[3].a == literal{"b3", true});
    CHECK(f.terms[3].b == literal{"b1", false});
  }

  SUBCASE("single eventuality") {
    auto f = parse_formula("F b1");
    REQUIRE(f.terms.size() == 1);
    CHECK(f.terms[0].kind == term_kind::eventually);
  }

  SUBCASE("bare and negated literals") {
    auto f = parse_formula("!b2 & (b1 U b3)");
    REQUIRE(f.terms.size() == 2);
    CHECK(f.terms[0].kind == term_kind::immediate);
    CHECK(f.terms[0].a == literal{"b2", true});
  }

  SUBCASE("operators outside the fragment are rejected") {
    CHECK_THROWS_AS(parse_formula("G b1"), parse_error);
    CHECK_THROWS_AS(parse_formula("X b1"), parse_error);
  }

  SUBCASE("errors carry a position") {
    try {
      parse_formula("F b3 & & b2");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.position == 7);
    }
  }

  SUBCASE("unknown propositions") {
    CHECK_THROWS_AS(parse_formula("F zz", std::set<std::string>{"b1"}),
                    parse_error);
    CHECK_NOTHROW(parse_formula("F b1", std::set<std::string>{"b1"}));
  }

  SUBCASE("whitespace-insensitive") {
    auto a = parse_formula("F b3&(!b3 U b1)");
    auto b = parse_formula("F  b3  &  ( ! b3   U   b1 )");
    CHECK(a.terms == b.terms);
  }

  SUBCASE("until works without parentheses too") {
    auto f = parse_formula("!b3 U b1");
    REQUIRE(f.terms.size() == 1);
    CHECK(f.terms[0].kind == term_kind::until);
  }
}

TEST_CASE("compiling a single eventuality") {
  auto env = case_env();
  auto net = compile_to_specopn(parse_formula("F b3"), env);

  CHECK(net.places().size() == 2);
  REQUIRE(net.final_places().size() == 1);

  bool true_self_loop = false;
  bool guarded_entry = false;
  for (const auto& t : net.transitions()) {
    if (t.from == t.to && t.from == net.initial_place()) {
      true_self_loop |= t.g.is_true();
    }
    if (t.to == net.final_places()[0]) {
      CHECK(t.g.to_string() == "b3");
      guarded_entry = true;
    }
  }
  CHECK(true_self_loop);
  CHECK(guarded_entry);
}

TEST_CASE("compiling a two-eventuality product") {
  auto env = case_env();
  auto net = compile_to_specopn(parse_formula("F b1 & F b2"), env);
  CHECK(net.places().size() == 4);

  // the joint discharge reaches the final place in one firing
  bool one_shot = false;
  for (const auto& t : net.transitions()) {
    one_shot |= t.from == net.initial_place() &&
                t.to == net.final_places()[0] &&
                t.g.to_string() == "b1 & b2";
  }
  CHECK(one_shot);
}

TEST_CASE("compiling the case-study mission") {
  auto env = case_env();
  auto net = compile_to_specopn(case_formula(), env);

  bool one_step_path = false;
  for (const auto& t : net.transitions()) {
    one_step_path |= t.from == net.initial_place() &&
                     t.to == net.final_places()[0] &&
                     t.g.to_string() == "b1 & b2 & b3";
  }
  CHECK(one_step_path);
}

TEST_CASE("compilation is deterministic and canonical") {
  auto env = case_env();
  auto a = to_json(compile_to_specopn(case_formula(), env)).dump();
  auto b = to_json(compile_to_specopn(case_formula(), env)).dump();
  CHECK(a == b);
}

TEST_CASE("compile-time checks") {
  auto env = case_env();
  CHECK_THROWS_AS(compile_to_specopn(parse_formula("F nope"), env),
                  structural_error);

  compile_options tight;
  tight.max_places = 2;
  CHECK_THROWS_AS(
      compile_to_specopn(parse_formula("F b1 & F b2 & F b3"), env, tight),
      bound_error);
}

TEST_CASE("mission already satisfied by the initial placement") {
  auto env = case_env();
  // the team starts in free space, so "F b4" is discharged at position 0
  auto net = compile_to_specopn(parse_formula("F b4"), env);
  CHECK(net.places().size() == 1);
  CHECK(net.marking() == net.final_places()[0]);
}

TEST_CASE("mission unsatisfiable at position 0") {
  auto env = case_env();
  // a bare literal evaluated at position 0, where only b4 holds
  auto net = compile_to_specopn(parse_formula("b1"), env);
  CHECK(net.transitions().empty());
  CHECK_FALSE(net.is_final());
}

TEST_CASE("language agreement with the finite-trace evaluator") {
  // Exhaustive over every single-term formula on four propositions and all
  // traces up to length four; the wide joint sweep lives in the acceptance
  // suite.
  environment env({{"y1", "b1"}, {"y2", "b2"}, {"y3", "b3"}, {"yf", "bf"}},
                  "yf", {{"c1", {"y1"}, 1}, {"cf", {"yf"}, 1}}, {}, 1);
  std::vector<std::string> props{"b1", "b2", "b3", "bf"};
  const std::uint64_t obs0 = 1ull << 3;  // only the free proposition

  std::vector<literal> lits;
  for (const auto& p : props) {
    lits.push_back({p, false});
    lits.push_back({p, true});
  }

  std::vector<ltl_formula> formulas;
  for (const auto& l : lits) {
    formulas.push_back({{{term_kind::eventually, l, {}}}, ""});
    formulas.push_back({{{term_kind::immediate, l, {}}}, ""});
    for (const auto& r : lits) {
      formulas.push_back({{{term_kind::until, l, r}}, ""});
    }
  }
  REQUIRE(formulas.size() == 80);

  for (const auto& f : formulas) {
    auto net = compile_to_specopn(f, env);
    agreement_walker walker(net, f, props, obs0);
    CHECK(walker.run(4) == 0);
  }

  // multi-term nets, language-checked the same way
  std::vector<std::string> case_props{"b1", "b2", "b3", "b4"};
  auto env3 = case_env();
  const std::uint64_t case_obs0 = 1ull << 3;  // b4, the free proposition
  for (const char* text : {"F b1 & F b2", "F b3 & F b2 & F b1 & (!b3 U b1)",
                           "(b4 U b1) & F b2", "!b1 & (!b3 U b2)"}) {
    auto f2 = parse_formula(text);
    agreement_walker walker(compile_to_specopn(f2, env3), f2, case_props,
                            case_obs0);
    CHECK(walker.run(4) == 0);
  }

  // spot checks through the public marching API
  auto f = case_formula();
  auto net = compile_to_specopn(f, env3);
  // the blue path: positions 1.. consumed by the net, position 0 implicit
  CHECK(spec_marching_accepts(net, {0b0111}, case_props));
  CHECK_FALSE(spec_marching_accepts(net, {0b0100}, case_props));
  CHECK(eval_ltl(f, {0b1000, 0b0111}, case_props));
  CHECK_FALSE(eval_ltl(f, {0b1000, 0b0100}, case_props));
}
