#pragma once

#include <vector>

#include "fsrecon/group.hpp"
#include "fsrecon/int_function.hpp"

namespace fsrecon {

/// A homomorphism psi : source -> target, stored as the images of the standard
/// generators of source (one column per coordinate).
class Homomorphism {
 public:
  /// Throws BadHomomorphism if some torsion generator of order n_i has an
  /// image not killed by n_i, GroupMismatch if an image is not in target.
  static Homomorphism make(GroupSpec source, GroupSpec target, std::vector<GroupElement> generator_images);
  static Homomorphism identity(const GroupSpec& group);
  static Homomorphism zero(const GroupSpec& source, const GroupSpec& target);

  const GroupSpec& source() const noexcept { return source_; }
  const GroupSpec& target() const noexcept { return target_; }
  const std::vector<GroupElement>& generator_images() const noexcept { return images_; }

  GroupElement operator()(const GroupElement& x) const;

  /// The kernel is finite iff the free generators map to Z-independent free parts.
  bool has_finite_kernel() const;

  /// Every x in source with psi(x) = y. Requires a finite kernel.
  std::vector<GroupElement> preimage(const GroupElement& y) const;

 private:
  Homomorphism() = default;

  GroupSpec source_;
  GroupSpec target_;
  std::vector<GroupElement> images_;
};

/// (psi_* mu)(y) = sum of mu over psi^{-1}(y).
IntFunction pushforward(const Homomorphism& psi, const IntFunction& mu);

/// psi^* mu = mu o psi; throws InfiniteKernel unless psi has finite kernel.
IntFunction pullback(const Homomorphism& psi, const IntFunction& mu);

}  // namespace fsrecon
