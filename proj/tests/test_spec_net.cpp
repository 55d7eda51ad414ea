#include "doctest.h"

#include "hlpn/errors.hpp"
#include "hlpn/ltl.hpp"
#include "hlpn/spec_net.hpp"
#include "test_helpers.hpp"

using namespace hlpn;
using namespace hlpn::testing;

namespace {

// One-token net for "eventually b3": initial place with a TRUE self-loop, a
// b3-guarded arc into the final place, and a TRUE arc out of it.
raw_spec eventually_b3() {
  raw_spec raw;
  raw.places = {"p1S", "p2S", "p3S"};
  raw.initial = "p1S";
  raw.finals = {"p2S"};
  raw.transitions = {{"t1S", "p1S", "p2S", "b3"},
                     {"t2S", "p2S", "p3S", "1"},
                     {"t3S", "p1S", "p1S", "1"}};
  return raw;
}

}  // namespace

TEST_CASE("guard parsing") {
  CHECK(parse_guard("1").is_true());
  CHECK(parse_guard("b1 & !b3").to_string() == "b1 & !b3");
  CHECK(parse_guard("b1, !b3").to_string() == "b1 & !b3");  // Renew syntax
  CHECK(parse_guard("(b2)").to_string() == "b2");
  CHECK_THROWS_AS(parse_guard("b1 & b1"), structural_error);
  CHECK_THROWS_AS(parse_guard(""), parse_error);
  CHECK_THROWS_AS(parse_guard("b1 &"), parse_error);
}

TEST_CASE("normalize splits disjunctive guards") {
  SUBCASE("plain disjunction") {
    raw_spec raw;
    raw.places = {"a", "b"};
    raw.initial = "a";
    raw.finals = {"b"};
    raw.transitions = {{"t", "a", "b", "b1 | b2"}};
    auto net = spec_opn::normalize(raw);
    REQUIRE(net.transitions().size() == 2);
    CHECK(net.transitions()[0].g.to_string() == "b1");
    CHECK(net.transitions()[1].g.to_string() == "b2");
    CHECK(net.transitions()[0].id == "t#1");
  }

  SUBCASE("conjunctive guard is unchanged") {
    raw_spec raw;
    raw.places = {"a", "b"};
    raw.initial = "a";
    raw.finals = {"b"};
    raw.transitions = {{"t", "a", "b", "b1 & b2"}};
    auto net = spec_opn::normalize(raw);
    REQUIRE(net.transitions().size() == 1);
    CHECK(net.transitions()[0].id == "t");
    CHECK(net.transitions()[0].g.to_string() == "b1 & b2");
  }

  SUBCASE("mixed DNF, checked against a truth table") {
    raw_spec raw;
    raw.places = {"a", "b"};
    raw.initial = "a";
    raw.finals = {"b"};
    raw.transitions = {{"t", "a", "b", "(b1 & !b3) | b2"}};
    auto net = spec_opn::normalize(raw);
    REQUIRE(net.transitions().size() == 2);
    CHECK(net.transitions()[0].g.to_string() == "b1 & !b3");
    CHECK(net.transitions()[1].g.to_string() == "b2");

    // every assignment over {b1,b2,b3}: some split guard true iff the
    // original formula is true
    auto u = make_universe({"b1", "b2", "b3"});
    for (int mask = 0; mask < 8; ++mask) {
      std::vector<std::int64_t> counts{(mask >> 0) & 1, (mask >> 1) & 1,
                                       (mask >> 2) & 1};
      bag obs(u, counts);
      const bool original =
          ((counts[0] >= 1) && (counts[2] == 0)) || counts[1] >= 1;
      const bool split = net.transitions()[0].g.satisfied(obs) ||
                         net.transitions()[1].g.satisfied(obs);
      CHECK(original == split);
    }
  }

  SUBCASE("disjunct bound") {
    raw_spec raw;
    raw.places = {"a"};
    raw.initial = "a";
    raw.finals = {"a"};
    raw.transitions = {{"t", "a", "a", "b1 | b2 | b3"}};
    CHECK_THROWS_AS(spec_opn::normalize(raw, 2), bound_error);
  }
}

TEST_CASE("normalization preserves the guard language") {
  // random DNF guards over up to six propositions, checked by full truth
  // tables against the split transitions
  rng r(606);
  for (int trial = 0; trial < 200; ++trial) {
    const int nprops = 1 + static_cast<int>(r.bounded(6));
    std::vector<std::string> props;
    for (int i = 1; i <= nprops; ++i) props.push_back("b" + std::to_string(i));
    auto u = make_universe(props);

    const int ndisjuncts = 1 + static_cast<int>(r.bounded(4));
    std::vector<std::vector<literal>> dnf;
    std::string text;
    for (int d = 0; d < ndisjuncts; ++d) {
      std::vector<literal> conj;
      const int nlits = 1 + static_cast<int>(r.bounded(3));
      for (int k = 0; k < nlits; ++k) {
        literal lit{props[r.bounded(nprops)], r.bounded(2) == 0};
        bool dup = false;
        for (const auto& prev : conj) dup |= prev.prop == lit.prop;
        if (!dup) conj.push_back(lit);
      }
      if (d) text += " | ";
      text += "(";
      for (std::size_t k = 0; k < conj.size(); ++k) {
        if (k) text += " & ";
        if (conj[k].negated) text += "!";
        text += conj[k].prop;
      }
      text += ")";
      dnf.push_back(std::move(conj));
    }

    raw_spec raw;
    raw.places = {"a", "b"};
    raw.initial = "a";
    raw.finals = {"b"};
    raw.transitions = {{"t", "a", "b", text}};
    auto net = spec_opn::normalize(raw);
    REQUIRE(net.transitions().size() == dnf.size());

    for (std::uint32_t mask = 0; mask < (1u << nprops); ++mask) {
      std::vector<std::int64_t> counts;
      for (int i = 0; i < nprops; ++i) counts.push_back((mask >> i) & 1);
      bag obs(u, counts);

      bool direct = false;
      for (const auto& conj : dnf) {
        bool all = true;
        for (const auto& lit : conj) {
          const bool holds = obs[lit.prop] >= 1;
          all &= lit.negated ? !holds : holds;
        }
        direct |= all;
      }
      bool split = false;
      for (const auto& t : net.transitions()) split |= t.g.satisfied(obs);
      CHECK(direct == split);
    }
  }
}

TEST_CASE("marking-enabled transitions ignore guards") {
  auto net = spec_opn::normalize(eventually_b3());
  auto ids = [&net](const std::vector<int>& ts) {
    std::set<std::string> out;
    for (int t : ts) out.insert(net.transitions()[t].id);
    return out;
  };
  CHECK(ids(net.enabled()) == std::set<std::string>{"t1S", "t3S"});

  SUBCASE("final place with no outgoing arcs") {
    spec_opn sink({"a", "b"}, "a", {"b"},
                  {{"t", "a", "b", guard::truth()}});
    sink.fire(0);
    CHECK(sink.is_final());
    CHECK(sink.enabled().empty());
  }

  SUBCASE("compiled case-study net exposes the one-shot transition") {
    auto env = case_env();
    auto net2 = compile_to_specopn(case_formula(), env);
    bool found = false;
    for (int t : net2.enabled()) {
      found |= net2.transitions()[t].g.to_string() == "b1 & b2 & b3";
    }
    CHECK(found);
  }
}

TEST_CASE("firing and mission fulfillment") {
  auto net = spec_opn::normalize(eventually_b3());
  CHECK_FALSE(net.is_final());

  net.fire(net.transition_index("t1S"));
  CHECK(net.marked_place_id() == "p2S");
  CHECK(net.is_final());

  SUBCASE("TRUE self-loop keeps the marking") {
    auto loop = spec_opn::normalize(eventually_b3());
    loop.fire(loop.transition_index("t3S"));
    CHECK(loop.marked_place_id() == "p1S");
    CHECK_FALSE(loop.is_final());
  }

  SUBCASE("non-enabled firing is an error") {
    auto other = spec_opn::normalize(eventually_b3());
    CHECK_THROWS_AS(other.fire(other.transition_index("t2S")),
                    semantics_error);
  }
}

TEST_CASE("exactly one token after any firing sequence") {
  auto net = spec_opn::normalize(eventually_b3());
  rng r(3);
  for (int step = 0; step < 100; ++step) {
    auto ts = net.enabled();
    if (ts.empty()) break;
    net.fire(ts[r.bounded(ts.size())]);
    CHECK(net.marking() >= 0);
    CHECK(net.marking() < static_cast<int>(net.places().size()));
  }
}

TEST_CASE("shape checks") {
  auto net = spec_opn::normalize(eventually_b3());
  CHECK(net.validate().empty());
  // absorbing structure downstream of the final place
  CHECK(net.warnings().size() == 1);

  spec_opn no_final({"a"}, "a", {}, {});
  CHECK(no_final.validate().size() == 1);

  CHECK_THROWS_AS(spec_opn({"a"}, "zz", {"a"}, {}), structural_error);
}
