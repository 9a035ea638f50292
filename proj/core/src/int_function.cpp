#include "fsrecon/int_function.hpp"

#include <algorithm>

#include "fsrecon/error.hpp"
#include "fsrecon/numtheory.hpp"

namespace fsrecon {

IntFunction IntFunction::delta(const GroupSpec& group, const GroupElement& g, std::int64_t value) {
  IntFunction f(group);
  f.add(g, value);
  return f;
}

IntFunction IntFunction::from_elements(const GroupSpec& group, const std::vector<GroupElement>& elems) {
  IntFunction f(group);
  for (const auto& e : elems) f.add(e, 1);
  return f;
}

IntFunction IntFunction::from_residues(const GroupSpec& group, std::initializer_list<std::int64_t> residues) {
  if (group.dimension() != 1) throw Error(ErrorCode::GroupMismatch, "from_residues needs a rank-one group");
  IntFunction f(group);
  for (std::int64_t r : residues) f.add(group.element({r}), 1);
  return f;
}

std::int64_t IntFunction::operator()(const GroupElement& g) const {
  auto it = entries_.find(g);
  return it == entries_.end() ? 0 : it->second;
}

void IntFunction::add(const GroupElement& g, std::int64_t delta) {
  if (delta == 0) return;
  group_.require(g);
  auto [it, inserted] = entries_.try_emplace(g, delta);
  if (!inserted) {
    it->second = checked_add(it->second, delta);
    if (it->second == 0) entries_.erase(it);
  }
}

bool IntFunction::is_multiset() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& kv) { return kv.second > 0; });
}

std::int64_t IntFunction::l1_norm() const {
  std::int64_t s = 0;
  for (const auto& [g, v] : entries_) s = checked_add(s, v < 0 ? -v : v);
  return s;
}

std::int64_t IntFunction::total() const {
  std::int64_t s = 0;
  for (const auto& [g, v] : entries_) s = checked_add(s, v);
  return s;
}

std::vector<GroupElement> IntFunction::elements() const {
  if (!is_multiset()) throw Error(ErrorCode::InvalidInput, "elements() of a function with negative values");
  std::vector<GroupElement> out;
  for (const auto& [g, v] : entries_)
    for (std::int64_t i = 0; i < v; ++i) out.push_back(g);
  return out;
}

IntFunction& IntFunction::operator+=(const IntFunction& other) {
  if (!(group_ == other.group_)) throw Error(ErrorCode::GroupMismatch, "adding functions on different groups");
  for (const auto& [g, v] : other.entries_) add(g, v);
  return *this;
}

IntFunction& IntFunction::operator-=(const IntFunction& other) {
  if (!(group_ == other.group_)) throw Error(ErrorCode::GroupMismatch, "subtracting functions on different groups");
  for (const auto& [g, v] : other.entries_) add(g, checked_mul(v, -1));
  return *this;
}

IntFunction operator*(std::int64_t k, const IntFunction& f) {
  IntFunction out(f.group_);
  if (k == 0) return out;
  for (const auto& [g, v] : f.entries_) out.entries_.emplace(g, checked_mul(k, v));
  return out;
}

GroupElement multiset_sum(const IntFunction& mu) {
  const GroupSpec& g = mu.group();
  GroupElement s = g.zero();
  for (const auto& [x, v] : mu.entries()) s = g.add(s, g.scale(x, v));
  return s;
}

}  // namespace fsrecon
