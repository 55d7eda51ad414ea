#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hlpn {

/// Ordered finite label set. Bags over the same universe are comparable;
/// the declaration order fixes canonical printing and serialization.
class universe {
 public:
  explicit universe(std::vector<std::string> labels);

  std::size_t size() const { return labels_; }
  const std::string& label(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(std::string_view label) const;
  /// Index of `label`; throws structural_error if the label is unknown.
  std::size_t index_of(std::string_view label) const;

  bool operator==(const universe& other) const {
    return names_ == other.names_;
  }

 private:
  std::size_t labels_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using universe_ptr = std::shared_ptr<const universe>;

universe_ptr make_universe(std::vector<std::string> labels);

/// Multi-set over a finite label universe with non-negative integer counts.
/// Values are immutable once built; all operations return fresh bags.
class bag {
 public:
  /// Empty bag (all counts zero).
  explicit bag(universe_ptr u);
  /// Bag from sparse counts. Unknown labels or negative counts are
  /// structural errors.
  bag(universe_ptr u, const std::map<std::string, std::int64_t>& counts);
  /// Bag from a dense count vector in universe order.
  bag(universe_ptr u, std::vector<std::int64_t> counts);

  const universe& labels() const { return *uni_; }
  const universe_ptr& universe_handle() const { return uni_; }

  /// Count of `label`; zero if absent, structural_error if not in universe.
  std::int64_t operator[](std::string_view label) const;
  std::int64_t count(std::size_t index) const { return counts_[index]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

  bool empty() const;
  std::int64_t total() const;

  /// Pointwise addition. Universes must match.
  bag operator+(const bag& other) const;
  /// Pointwise subtraction; any negative result is an underflow_error.
  bag operator-(const bag& other) const;

  bool operator==(const bag& other) const;

  /// Symbolic-sum form in universe order, e.g. "1'b1 + 2'b2"; "0" if empty.
  std::string to_string() const;

 private:
  void require_same_universe(const bag& other) const;

  universe_ptr uni_;
  std::vector<std::int64_t> counts_;
};

/// True iff a[l] <= b[l] for every label. Universes must match.
bool leq(const bag& a, const bag& b);

}  // namespace hlpn
