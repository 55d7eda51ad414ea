#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hlpn/environment.hpp"
#include "hlpn/guard.hpp"

namespace hlpn {

struct spec_transition {
  std::string id;
  int from = 0;
  int to = 0;
  guard g;
};

/// Mission net as read from a file, before guard normalization. Guards are
/// raw text and may still contain disjunctions.
struct raw_spec {
  struct transition {
    std::string id;
    std::string from;
    std::string to;
    std::string guard_text;
  };
  std::vector<std::string> places;
  std::string initial;
  std::vector<std::string> finals;
  std::vector<transition> transitions;
};

/// Mission object net: a one-token state machine whose transitions carry
/// conjunctive guards. The mission is fulfilled once a final place holds the
/// token. Guard truth is not this class's business — it only plays the token
/// game; the gef decides which guarded firings are admissible.
class spec_opn {
 public:
  struct transition_desc {
    std::string id;
    std::string from;
    std::string to;
    guard g;
  };

  spec_opn(std::vector<std::string> places, const std::string& initial,
           const std::vector<std::string>& finals,
           const std::vector<transition_desc>& transitions);

  /// Builds a spec_opn from raw input, splitting every k-disjunct guard into
  /// k parallel transitions (ids suffixed "#1".."#k" when k > 1).
  static spec_opn normalize(const raw_spec& raw,
                            std::size_t max_disjuncts = 64);

  const std::vector<std::string>& places() const { return place_ids_; }
  const std::vector<spec_transition>& transitions() const {
    return transitions_;
  }
  const std::vector<int>& final_places() const { return finals_; }
  int initial_place() const { return initial_; }
  const std::string& place_id(int p) const { return place_ids_[p]; }

  int marking() const { return marking_; }
  const std::string& marked_place_id() const { return place_ids_[marking_]; }
  bool is_final() const;

  /// Marking-enabled transitions (token on the input place), declaration
  /// order. Guards are deliberately ignored here.
  std::vector<int> enabled() const;
  const std::vector<int>& outgoing(int place) const {
    return outgoing_[place];
  }

  void fire(int t);  // semantics_error if not marking-enabled
  void reset() { marking_ = initial_; }

  int transition_index(std::string_view id) const;  // structural_error
  int place_index(std::string_view id) const;       // structural_error

  std::vector<violation> validate() const;
  /// Non-fatal shape notes, e.g. the net not being strongly connected.
  std::vector<std::string> warnings() const;

 private:
  std::vector<std::string> place_ids_;
  std::vector<spec_transition> transitions_;
  std::vector<std::vector<int>> outgoing_;
  std::vector<int> finals_;
  int initial_ = 0;
  int marking_ = 0;

  friend class hlpn_state;
  void set_marking(int place) { marking_ = place; }
};

}  // namespace hlpn
