#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace fsrecon {

/// Coordinate vector of an element of Z/n_1 + ... + Z/n_k + Z^r.
/// Torsion coordinates are kept in [0, n_i); free coordinates are unrestricted.
/// Ordering is plain lexicographic on the coordinate vector.
struct GroupElement {
  std::vector<std::int64_t> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// Order of an element; std::nullopt means infinite order.
using ElementOrder = std::optional<std::int64_t>;

/// A finitely generated abelian group with odd torsion:
///   G = Z/n_1 + ... + Z/n_k + Z^r,  every n_i odd and >= 3.
/// Construct through make_group(), which enforces the invariants.
class GroupSpec {
 public:
  GroupSpec() = default;  // trivial group

  const std::vector<std::int64_t>& torsion() const noexcept { return torsion_; }
  int free_rank() const noexcept { return free_rank_; }
  std::size_t torsion_rank() const noexcept { return torsion_.size(); }
  std::size_t dimension() const noexcept { return torsion_.size() + static_cast<std::size_t>(free_rank_); }

  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_cyclic_finite() const noexcept { return free_rank_ == 0 && torsion_.size() <= 1; }
  /// |G|; throws InfiniteGroup when free_rank > 0, Overflow if it does not fit.
  std::int64_t order() const;
  /// |G_T|, the order of the torsion subgroup.
  std::int64_t torsion_order() const;
  /// Exponent of the torsion subgroup (lcm of the n_i).
  std::int64_t torsion_exponent() const;

  GroupElement zero() const;
  /// Builds an element from raw integers, reducing torsion coordinates.
  GroupElement element(std::vector<std::int64_t> raw) const;
  /// True iff g has the right length and reduced torsion coordinates.
  bool contains(const GroupElement& g) const noexcept;
  /// Throws GroupMismatch unless contains(g).
  void require(const GroupElement& g) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  GroupElement scale(const GroupElement& a, std::int64_t m) const;

  bool is_zero(const GroupElement& g) const noexcept;
  bool is_torsion(const GroupElement& g) const noexcept;

  /// Mixed-radix index of a torsion element in [0, torsion_order()).
  std::int64_t torsion_index(const GroupElement& g) const;
  /// Inverse of torsion_index; free coordinates are zero.
  GroupElement torsion_element_at(std::int64_t index) const;
  /// All torsion elements in index order; throws GroupTooLarge above bound.
  std::vector<GroupElement> torsion_elements(std::int64_t bound = 1'000'000) const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  friend GroupSpec make_group(std::vector<std::int64_t> torsion_orders, int free_rank);

  std::vector<std::int64_t> torsion_;
  int free_rank_ = 0;
};

/// Drops order-1 factors; throws EvenTorsion on an even factor and
/// InvalidInput on non-positive orders or negative rank.
GroupSpec make_group(std::vector<std::int64_t> torsion_orders, int free_rank);

/// Z/n (the trivial group when n == 1).
GroupSpec cyclic_group(std::int64_t n);

ElementOrder element_order(const GroupSpec& group, const GroupElement& g);

/// {0, g, 2g, ..., (n-1)g} for a torsion element g of order n, in that order.
std::vector<GroupElement> cyclic_span(const GroupSpec& group, const GroupElement& g);

/// Smallest (lexicographic) generator of the cyclic subgroup <g>.
GroupElement canonical_generator(const GroupSpec& group, const GroupElement& g);

struct CyclicSubgroup {
  GroupElement generator;             // canonical generator
  std::int64_t order = 1;
  std::vector<GroupElement> elements;  // sorted

  /// H^x: the elements of exact order |H|, sorted.
  std::vector<GroupElement> primitive_elements(const GroupSpec& group) const;

  friend bool operator==(const CyclicSubgroup& a, const CyclicSubgroup& b) { return a.elements == b.elements; }
};

/// Every cyclic subgroup of a finite group, sorted by (order, generator).
std::vector<CyclicSubgroup> enumerate_cyclic_subgroups(const GroupSpec& group);

/// Every subgroup of a finite group as a sorted element set, sorted by (size, elements).
std::vector<std::vector<GroupElement>> enumerate_subgroups(const GroupSpec& group, std::int64_t bound = 2000);

/// An injective homomorphism Z/n -> G, determined by the image of 1.
struct Embedding {
  GroupElement target_of_one;
  std::int64_t modulus = 1;

  GroupElement image(const GroupSpec& group, std::int64_t j) const { return group.scale(target_of_one, j); }

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// One embedding per torsion element of exact order n, in element order.
std::vector<Embedding> enumerate_embeddings(std::int64_t n, const GroupSpec& group);

}  // namespace fsrecon
