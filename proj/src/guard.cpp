#include "hlpn/guard.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hlpn/errors.hpp"

namespace hlpn {

guard guard::truth() { return guard{}; }

guard guard::conjunction(std::vector<literal> lits) {
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i].prop == lits[j].prop) {
        throw structural_error("proposition repeated in guard conjunction: " +
                               lits[i].prop);
      }
    }
  }
  guard g;
  g.literals_ = std::move(lits);
  return g;
}

std::string guard::to_string() const {
  if (is_true()) return "1";
  std::ostringstream out;
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (i) out << " & ";
    if (literals_[i].negated) out << "!";
    out << literals_[i].prop;
  }
  return out.str();
}

bool guard::satisfied(const bag& prop_occupancy) const {
  for (const auto& lit : literals_) {
    std::int64_t n = prop_occupancy[lit.prop];
    if (lit.negated ? n >= 1 : n == 0) return false;
  }
  return true;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_top_level(std::string_view text,
                                              char sep_a, char sep_b) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth < 0) throw parse_error("unbalanced ')'", i);
    } else if (depth == 0 && (c == sep_a || c == sep_b)) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw parse_error("unbalanced '('", text.size());
  parts.push_back(text.substr(start));
  return parts;
}

std::string_view strip_parens(std::string_view s) {
  s = trim(s);
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    // only strip if the parens match each other
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') {
        --depth;
        if (depth == 0 && i + 1 != s.size()) {
          wraps = false;
          break;
        }
      }
    }
    if (!wraps) break;
    s = trim(s.substr(1, s.size() - 2));
  }
  return s;
}

literal parse_literal(std::string_view text) {
  text = trim(text);
  bool neg = false;
  while (!text.empty() && text.front() == '!') {
    neg = !neg;
    text.remove_prefix(1);
    text = trim(text);
  }
  if (text.empty()) throw parse_error("empty literal in guard", 0);
  for (char c : text) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
      throw parse_error("bad proposition name: " + std::string(text), 0);
    }
  }
  return literal{std::string(text), neg};
}

}  // namespace

guard parse_guard(std::string_view text) {
  auto body = strip_parens(text);
  if (body.empty()) throw parse_error("empty guard", 0);
  if (body == "1" || body == "true" || body == "T") return guard::truth();
  std::vector<literal> lits;
  for (auto part : split_top_level(body, '&', ',')) {
    part = strip_parens(part);
    if (part.empty()) throw parse_error("empty conjunct in guard", 0);
    lits.push_back(parse_literal(part));
  }
  return guard::conjunction(std::move(lits));
}

std::vector<guard> parse_guard_dnf(std::string_view text,
                                   std::size_t max_disjuncts) {
  auto body = trim(text);
  if (body.empty()) throw parse_error("empty guard", 0);
  std::vector<guard> out;
  for (auto part : split_top_level(body, '|', '|')) {
    out.push_back(parse_guard(part));
  }
  if (out.size() > max_disjuncts) {
    throw bound_error("guard has more disjuncts than the configured bound");
  }
  return out;
}

}  // namespace hlpn
