#include "hlpn/spec_net.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hlpn/errors.hpp"

namespace hlpn {

spec_opn::spec_opn(std::vector<std::string> places, const std::string& initial,
                   const std::vector<std::string>& finals,
                   const std::vector<transition_desc>& transitions)
    : place_ids_(std::move(places)) {
  std::map<std::string, int, std::less<>> index;
  for (std::size_t i = 0; i < place_ids_.size(); ++i) {
    auto [_, inserted] = index.emplace(place_ids_[i], static_cast<int>(i));
    if (!inserted) {
      throw structural_error("duplicate spec place: " + place_ids_[i]);
    }
  }
  auto lookup = [&index](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) {
      throw structural_error("unknown spec place: " + id);
    }
    return it->second;
  };

  initial_ = lookup(initial);
  marking_ = initial_;
  for (const auto& f : finals) finals_.push_back(lookup(f));
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());

  outgoing_.resize(place_ids_.size());
  std::set<std::string> transition_ids;
  for (const auto& t : transitions) {
    if (!transition_ids.insert(t.id).second) {
      throw structural_error("duplicate spec transition id: " + t.id);
    }
    spec_transition st;
    st.id = t.id;
    st.from = lookup(t.from);
    st.to = lookup(t.to);
    st.g = t.g;
    outgoing_[st.from].push_back(static_cast<int>(transitions_.size()));
    transitions_.push_back(std::move(st));
  }
}

spec_opn spec_opn::normalize(const raw_spec& raw, std::size_t max_disjuncts) {
  std::vector<transition_desc> out;
  for (const auto& t : raw.transitions) {
    auto disjuncts = parse_guard_dnf(t.guard_text, max_disjuncts);
    if (disjuncts.size() == 1) {
      out.push_back({t.id, t.from, t.to, disjuncts[0]});
    } else {
      for (std::size_t k = 0; k < disjuncts.size(); ++k) {
        out.push_back({t.id + "#" + std::to_string(k + 1), t.from, t.to,
                       disjuncts[k]});
      }
    }
  }
  return spec_opn(raw.places, raw.initial, raw.finals, out);
}

bool spec_opn::is_final() const {
  return std::binary_search(finals_.begin(), finals_.end(), marking_);
}

std::vector<int> spec_opn::enabled() const { return outgoing_[marking_]; }

void spec_opn::fire(int t) {
  if (t < 0 || t >= static_cast<int>(transitions_.size())) {
    throw structural_error("no such spec transition index");
  }
  if (transitions_[t].from != marking_) {
    throw semantics_error("spec transition " + transitions_[t].id +
                          " is not enabled at " + marked_place_id());
  }
  marking_ = transitions_[t].to;
}

int spec_opn::transition_index(std::string_view id) const {
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    if (transitions_[i].id == id) return static_cast<int>(i);
  }
  throw structural_error("unknown spec transition id: " + std::string(id));
}

int spec_opn::place_index(std::string_view id) const {
  for (std::size_t i = 0; i < place_ids_.size(); ++i) {
    if (place_ids_[i] == id) return static_cast<int>(i);
  }
  throw structural_error("unknown spec place id: " + std::string(id));
}

std::vector<violation> spec_opn::validate() const {
  std::vector<violation> out;
  if (finals_.empty()) {
    out.push_back({"no-final", "spec net declares no final places"});
  }
  if (place_ids_.empty()) {
    out.push_back({"no-places", "spec net has no places"});
  }
  return out;
}

std::vector<std::string> spec_opn::warnings() const {
  std::vector<std::string> out;
  // Strong connectivity over the place graph. Missions compiled from co-safe
  // formulas routinely have absorbing final places, so this is only a note.
  auto reach = [this](int start, bool forward) {
    std::vector<char> seen(place_ids_.size(), 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      for (const auto& t : transitions_) {
        int a = forward ? t.from : t.to;
        int b = forward ? t.to : t.from;
        if (a == p && !seen[b]) {
          seen[b] = 1;
          stack.push_back(b);
        }
      }
    }
    return seen;
  };
  if (!place_ids_.empty()) {
    auto fwd = reach(initial_, true);
    auto bwd = reach(initial_, false);
    bool strongly_connected =
        std::all_of(fwd.begin(), fwd.end(), [](char c) { return c; }) &&
        std::all_of(bwd.begin(), bwd.end(), [](char c) { return c; });
    if (!strongly_connected) {
      out.push_back("spec net is not strongly connected");
    }
  }
  return out;
}

}  // namespace hlpn
