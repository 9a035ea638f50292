#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

#include "fsrecon/group.hpp"

namespace fsrecon {

/// Finitely supported function mu : G -> Z. Zero values are never stored.
/// A multiset is the special case where every value is positive.
class IntFunction {
 public:
  using Entries = std::map<GroupElement, std::int64_t>;

  IntFunction() = default;
  explicit IntFunction(GroupSpec group) : group_(std::move(group)) {}

  static IntFunction delta(const GroupSpec& group, const GroupElement& g, std::int64_t value = 1);
  /// Multiset with one copy of each listed element (repeats accumulate).
  static IntFunction from_elements(const GroupSpec& group, const std::vector<GroupElement>& elems);
  /// Convenience for Z/n: elements given as residues.
  static IntFunction from_residues(const GroupSpec& group, std::initializer_list<std::int64_t> residues);

  const GroupSpec& group() const noexcept { return group_; }
  const Entries& entries() const noexcept { return entries_; }

  std::int64_t operator()(const GroupElement& g) const;
  /// mu(g) += delta; removes the key when the value reaches zero.
  void add(const GroupElement& g, std::int64_t delta);

  bool is_zero() const noexcept { return entries_.empty(); }
  bool is_multiset() const noexcept;
  std::size_t support_size() const noexcept { return entries_.size(); }
  /// sum of |mu(g)|.
  std::int64_t l1_norm() const;
  /// sum of mu(g); for a multiset, its cardinality.
  std::int64_t total() const;

  /// Elements of a multiset listed with multiplicity, in key order.
  std::vector<GroupElement> elements() const;

  IntFunction& operator+=(const IntFunction& other);
  IntFunction& operator-=(const IntFunction& other);
  friend IntFunction operator+(IntFunction a, const IntFunction& b) { return a += b; }
  friend IntFunction operator-(IntFunction a, const IntFunction& b) { return a -= b; }
  friend IntFunction operator*(std::int64_t k, const IntFunction& f);

  friend bool operator==(const IntFunction&, const IntFunction&) = default;

 private:
  GroupSpec group_;
  Entries entries_;
};

/// Sum_g mu(g) * g.
GroupElement multiset_sum(const IntFunction& mu);

}  // namespace fsrecon
