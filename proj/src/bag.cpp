#include "hlpn/bag.hpp"

#include <sstream>

#include "hlpn/errors.hpp"

namespace hlpn {

universe::universe(std::vector<std::string> labels)
    : labels_(labels.size()), names_(std::move(labels)) {
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    auto [_, inserted] = index_.emplace(names_[i], i);
    if (!inserted) {
      throw structural_error("duplicate label in universe: " + names_[i]);
    }
  }
}

std::optional<std::size_t> universe::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t universe::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw structural_error("label not in universe: " + std::string(label));
}

universe_ptr make_universe(std::vector<std::string> labels) {
  return std::make_shared<const universe>(std::move(labels));
}

bag::bag(universe_ptr u) : uni_(std::move(u)), counts_(uni_->size(), 0) {}

bag::bag(universe_ptr u, const std::map<std::string, std::int64_t>& counts)
    : bag(std::move(u)) {
  for (const auto& [label, n] : counts) {
    if (n < 0) {
      throw structural_error("negative multiplicity for label: " + label);
    }
    counts_[uni_->index_of(label)] = n;
  }
}

bag::bag(universe_ptr u, std::vector<std::int64_t> counts)
    : uni_(std::move(u)), counts_(std::move(counts)) {
  if (counts_.size() != uni_->size()) {
    throw structural_error("count vector does not match universe size");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 0) {
      throw structural_error("negative multiplicity for label: " +
                             uni_->label(i));
    }
  }
}

std::int64_t bag::operator[](std::string_view label) const {
  return counts_[uni_->index_of(label)];
}

bool bag::empty() const {
  for (auto n : counts_) {
    if (n != 0) return false;
  }
  return true;
}

std::int64_t bag::total() const {
  std::int64_t sum = 0;
  for (auto n : counts_) sum += n;
  return sum;
}

void bag::require_same_universe(const bag& other) const {
  if (uni_ == other.uni_) return;
  if (*uni_ == *other.uni_) return;
  throw structural_error("bag universes differ");
}

bag bag::operator+(const bag& other) const {
  require_same_universe(other);
  std::vector<std::int64_t> out(counts_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.counts_[i];
  return bag(uni_, std::move(out));
}

bag bag::operator-(const bag& other) const {
  require_same_universe(other);
  std::vector<std::int64_t> out(counts_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] -= other.counts_[i];
    if (out[i] < 0) {
      throw underflow_error("bag subtraction underflow at label " +
                            uni_->label(i));
    }
  }
  return bag(uni_, std::move(out));
}

bool bag::operator==(const bag& other) const {
  require_same_universe(other);
  return counts_ == other.counts_;
}

std::string bag::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] == 0) continue;
    if (!first) out << " + ";
    out << counts_[i] << "'" << uni_->label(i);
    first = false;
  }
  if (first) return "0";
  return out.str();
}

bool leq(const bag& a, const bag& b) {
  if (!(a.labels() == b.labels())) {
    throw structural_error("bag universes differ");
  }
  for (std::size_t i = 0; i < a.labels().size(); ++i) {
    if (a.count(i) > b.count(i)) return false;
  }
  return true;
}

}  // namespace hlpn
