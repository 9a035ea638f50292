#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fsrecon/group.hpp"
#include "fsrecon/int_function.hpp"
#include "fsrecon/numtheory.hpp"

namespace fsrecon {

inline constexpr std::int64_t kDefaultSizeCap = 64;

/// Cap on |A| for subset-sum computations: FSRECON_SIZE_CAP if set, else fallback.
std::int64_t size_cap_from_env(std::int64_t fallback = kDefaultSizeCap);

/// Multiplicity function of a multiset of subset sums, with exact multiplicities.
class FSMultiset {
 public:
  using Entries = std::map<GroupElement, BigInt>;

  FSMultiset() = default;
  explicit FSMultiset(GroupSpec group) : group_(std::move(group)) {}

  /// {0 -> 1}, the subset sums of the empty multiset.
  static FSMultiset unit(const GroupSpec& group);

  const GroupSpec& group() const noexcept { return group_; }
  const Entries& entries() const noexcept { return entries_; }
  const BigInt& total() const noexcept { return total_; }

  BigInt operator()(const GroupElement& g) const;
  /// Adds a positive multiplicity at g.
  void add(const GroupElement& g, const BigInt& m);

  friend bool operator==(const FSMultiset&, const FSMultiset&) = default;

 private:
  GroupSpec group_;
  Entries entries_;
  BigInt total_ = 0;
};

/// FS(A) as the convolution of (delta_0 + delta_a) over the elements of A.
/// Throws SizeCapExceeded when |A| > size_cap, InvalidInput for negative values.
FSMultiset fs_multiset(const IntFunction& a, std::int64_t size_cap = kDefaultSizeCap);

/// Convolution of multiplicity functions.
FSMultiset minkowski_sum(const FSMultiset& s, const FSMultiset& t);

/// Translate every key by s.
FSMultiset shift(const FSMultiset& s, const GroupElement& by);

/// All s with S = T + s, sorted.
std::vector<GroupElement> find_shifts(const FSMultiset& s, const FSMultiset& t);

/// Sum over the multiset of multiplicity * element.
GroupElement weighted_sum(const FSMultiset& s);

}  // namespace fsrecon
