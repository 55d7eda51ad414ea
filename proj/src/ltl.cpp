#include "hlpn/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "hlpn/errors.hpp"

namespace hlpn {

namespace {

struct token {
  enum kind { lparen, rparen, bang, amp, ident, end } k = end;
  std::string text;
  std::size_t pos = 0;
};

std::vector<token> lex(std::string_view text) {
  std::vector<token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(') {
      out.push_back({token::lparen, "(", i++});
    } else if (c == ')') {
      out.push_back({token::rparen, ")", i++});
    } else if (c == '!') {
      out.push_back({token::bang, "!", i++});
    } else if (c == '&') {
      out.push_back({token::amp, "&", i++});
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_')) {
        ++i;
      }
      out.push_back({token::ident, std::string(text.substr(start, i - start)),
                     start});
    } else {
      throw parse_error(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({token::end, "", text.size()});
  return out;
}

bool is_reserved(const std::string& name) {
  return name == "F" || name == "U" || name == "G" || name == "X" ||
         name == "R" || name == "W" || name == "M";
}

class parser {
 public:
  explicit parser(std::string_view text) : tokens_(lex(text)) {}

  ltl_formula parse() {
    ltl_formula f;
    f.terms.push_back(parse_term());
    while (accept(token::amp)) {
      f.terms.push_back(parse_term());
    }
    expect(token::end, "expected '&' or end of formula");
    return f;
  }

 private:
  const token& peek() const { return tokens_[cursor_]; }
  const token& advance() { return tokens_[cursor_++]; }

  bool accept(token::kind k) {
    if (peek().k == k) {
      ++cursor_;
      return true;
    }
    return false;
  }

  void expect(token::kind k, const std::string& what) {
    if (!accept(k)) throw parse_error(what, peek().pos);
  }

  ltl_term parse_term() {
    const token& t = peek();
    if (t.k == token::ident && t.text == "F") {
      advance();
      return {term_kind::eventually, parse_literal_group(), {}};
    }
    if (t.k == token::ident && is_reserved(t.text)) {
      throw parse_error("operator '" + t.text +
                            "' is outside the supported fragment",
                        t.pos);
    }
    if (t.k == token::lparen) {
      advance();
      if (peek().k == token::ident && peek().text == "F") {
        advance();
        ltl_term inner{term_kind::eventually, parse_literal_group(), {}};
        expect(token::rparen, "expected ')'");
        return inner;
      }
      literal lhs = parse_literal();
      if (peek().k == token::ident && peek().text == "U") {
        advance();
        literal rhs = parse_literal();
        expect(token::rparen, "expected ')' after until");
        return {term_kind::until, lhs, rhs};
      }
      expect(token::rparen, "expected ')' or 'U'");
      return {term_kind::immediate, lhs, {}};
    }
    literal lhs = parse_literal();
    if (peek().k == token::ident && peek().text == "U") {
      advance();
      return {term_kind::until, lhs, parse_literal()};
    }
    return {term_kind::immediate, lhs, {}};
  }

  // A literal, possibly wrapped in parentheses: "b1", "!b1", "(!b1)".
  literal parse_literal_group() {
    if (accept(token::lparen)) {
      literal l = parse_literal();
      expect(token::rparen, "expected ')'");
      return l;
    }
    return parse_literal();
  }

  literal parse_literal() {
    bool neg = false;
    while (accept(token::bang)) neg = !neg;
    if (accept(token::lparen)) {
      literal l = parse_literal();
      expect(token::rparen, "expected ')'");
      if (neg) l.negated = !l.negated;
      return l;
    }
    const token& t = peek();
    if (t.k != token::ident) {
      throw parse_error("expected a proposition", t.pos);
    }
    if (is_reserved(t.text)) {
      throw parse_error("'" + t.text + "' cannot be used as a proposition",
                        t.pos);
    }
    advance();
    return literal{t.text, neg};
  }

  std::vector<token> tokens_;
  std::size_t cursor_ = 0;
};

void check_props(const ltl_formula& f,
                 const std::set<std::string>& known_props,
                 std::string_view text) {
  auto check = [&](const literal& l) {
    if (l.prop.empty()) return;
    if (!known_props.count(l.prop)) {
      auto pos = text.find(l.prop);
      throw parse_error("unknown proposition: " + l.prop,
                        pos == std::string_view::npos ? 0 : pos);
    }
  };
  for (const auto& t : f.terms) {
    check(t.a);
    if (t.kind == term_kind::until) check(t.b);
  }
}

}  // namespace

ltl_formula parse_formula(std::string_view text) {
  parser p(text);
  ltl_formula f = p.parse();
  f.source = std::string(text);
  return f;
}

ltl_formula parse_formula(std::string_view text,
                          const std::set<std::string>& known_props) {
  ltl_formula f = parse_formula(text);
  check_props(f, known_props, text);
  return f;
}

namespace {

// Term progress inside the compiler's product construction.
enum class term_state { waiting, done, dead };

// Truth of a literal under the canonical initial observation: the whole
// team in free space, so exactly the free proposition holds.
bool holds_initially(const literal& l, const std::string& free_prop) {
  bool positive_holds = (l.prop == free_prop);
  return l.negated ? !positive_holds : positive_holds;
}

term_state initial_term_state(const ltl_term& t,
                              const std::string& free_prop) {
  switch (t.kind) {
    case term_kind::eventually:
      return holds_initially(t.a, free_prop) ? term_state::done
                                             : term_state::waiting;
    case term_kind::until:
      if (holds_initially(t.b, free_prop)) return term_state::done;
      if (holds_initially(t.a, free_prop)) return term_state::waiting;
      return term_state::dead;
    case term_kind::immediate:
      return holds_initially(t.a, free_prop) ? term_state::done
                                             : term_state::dead;
  }
  return term_state::dead;
}

// Accumulates conjunction literals, rejecting contradictions and merging
// duplicates. Returns false on a contradiction.
class conjunction_builder {
 public:
  bool add(const literal& l) {
    auto it = polarity_.find(l.prop);
    if (it != polarity_.end()) return it->second == l.negated;
    polarity_.emplace(l.prop, l.negated);
    return true;
  }

  guard build(const environment& env) const {
    std::vector<literal> lits;
    lits.reserve(polarity_.size());
    for (const auto& [prop, neg] : polarity_) lits.push_back({prop, neg});
    std::sort(lits.begin(), lits.end(),
              [&env](const literal& x, const literal& y) {
                return env.prop_index(x.prop) < env.prop_index(y.prop);
              });
    return guard::conjunction(std::move(lits));
  }

 private:
  std::map<std::string, bool> polarity_;
};

spec_opn unsatisfiable_net() {
  return spec_opn({"q0", "q1"}, "q0", {"q1"}, {});
}

}  // namespace

spec_opn compile_to_specopn(const ltl_formula& formula,
                            const environment& env,
                            const compile_options& opts) {
  if (formula.terms.empty()) {
    throw structural_error("cannot compile an empty formula");
  }
  for (const auto& t : formula.terms) {
    env.prop_index(t.a.prop);  // throws on undeclared propositions
    if (t.kind == term_kind::until) env.prop_index(t.b.prop);
  }
  if (formula.terms.size() >= 63) {
    throw bound_error("too many terms to compile");
  }

  const int free_region_idx = env.find_region(env.free_region())
                                  ? env.region_index(env.free_region())
                                  : -1;
  if (free_region_idx < 0) {
    throw structural_error("environment has no usable free region");
  }
  const std::string& free_prop = env.prop_of(free_region_idx);

  const std::size_t n = formula.terms.size();
  const std::uint64_t all_done = (std::uint64_t{1} << n) - 1;

  // Initial product state after consuming the initial observation.
  std::uint64_t init = 0;
  for (std::size_t i = 0; i < n; ++i) {
    switch (initial_term_state(formula.terms[i], free_prop)) {
      case term_state::done:
        init |= std::uint64_t{1} << i;
        break;
      case term_state::waiting:
        break;
      case term_state::dead:
        // Some term already failed at position 0; no trace can satisfy the
        // formula, so emit a net whose final place is unreachable.
        return unsatisfiable_net();
    }
  }

  // Breadth-first discovery over done-bitmask states, emitting one
  // transition per consistent discharge combination.
  std::map<std::uint64_t, int> place_of;
  std::vector<std::uint64_t> order;
  auto discover = [&](std::uint64_t s) {
    auto it = place_of.find(s);
    if (it != place_of.end()) return it->second;
    int idx = static_cast<int>(order.size());
    place_of.emplace(s, idx);
    order.push_back(s);
    return idx;
  };

  struct edge {
    int from;
    int to;
    guard g;
  };
  std::vector<edge> edges;

  discover(init);
  for (std::size_t head = 0; head < order.size(); ++head) {
    if (order.size() > opts.max_places) {
      throw bound_error("compiled mission net exceeds the place bound");
    }
    const std::uint64_t s = order[head];
    if (s == all_done) continue;  // final places get no outgoing arcs

    std::vector<std::size_t> waiting;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(s & (std::uint64_t{1} << i))) waiting.push_back(i);
    }

    const std::uint64_t combos = std::uint64_t{1} << waiting.size();
    for (std::uint64_t d = 0; d < combos; ++d) {
      conjunction_builder conj;
      bool consistent = true;
      std::uint64_t target = s;
      for (std::size_t w = 0; w < waiting.size() && consistent; ++w) {
        const ltl_term& term = formula.terms[waiting[w]];
        const bool discharge = (d >> w) & 1;
        if (discharge) {
          target |= std::uint64_t{1} << waiting[w];
          consistent = conj.add(term.kind == term_kind::until ? term.b
                                                              : term.a);
        } else if (term.kind == term_kind::until) {
          consistent = conj.add(term.a);  // staying requires the lhs to hold
        }
      }
      if (!consistent) continue;
      int from = static_cast<int>(head);
      int to = discover(target);
      edges.push_back({from, to, conj.build(env)});
    }
  }

  std::vector<std::string> place_ids;
  place_ids.reserve(order.size() + 1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    place_ids.push_back("q" + std::to_string(i));
  }

  std::string final_id;
  auto fin = place_of.find(all_done);
  if (fin != place_of.end()) {
    final_id = place_ids[fin->second];
  } else {
    // All discharge paths are contradictory; keep the net well-formed with
    // an unreachable final place.
    final_id = "q" + std::to_string(order.size());
    place_ids.push_back(final_id);
  }

  std::vector<spec_opn::transition_desc> transitions;
  transitions.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    transitions.push_back({"t" + std::to_string(i), place_ids[edges[i].from],
                           place_ids[edges[i].to], edges[i].g});
  }

  return spec_opn(place_ids, "q0", {final_id}, transitions);
}

}  // namespace hlpn
