#pragma once

#include <cstdint>
#include <vector>

namespace fsrecon {

/// Points of (Z/n)^r and homomorphisms (Z/n)^r -> Z/n are both indexed in base n,
/// first coordinate most significant. A homomorphism is its coefficient vector v,
/// psi(x) = sum_i v_i x_i.
struct TorusShape {
  std::int64_t n = 1;
  int r = 1;

  std::int64_t size() const;  // n^r
  std::vector<std::int64_t> coords(std::int64_t index) const;
  std::int64_t index(const std::vector<std::int64_t>& coords) const;
};

/// All n^r homomorphisms as coefficient vectors, in index order.
std::vector<std::vector<std::int64_t>> hom_enumerate(std::int64_t n, int r);

/// Rf(psi, c) for every homomorphism psi and c in Z/n.
struct RadonData {
  TorusShape shape;
  std::vector<std::int64_t> values;  // values[psi_index * n + c]

  std::int64_t at(std::int64_t psi_index, std::int64_t c) const;
  /// Every fiber partition carries the same total mass.
  bool mass_conserved() const;
};

/// f is a full table of n^r values in point-index order.
RadonData radon_transform(std::int64_t n, int r, const std::vector<std::int64_t>& f);

/// Primes p | n with p dividing every coefficient of psi (equivalently, psi lands in pZ/nZ).
std::vector<std::int64_t> determining_primes(std::int64_t n, const std::vector<std::int64_t>& psi);

struct RadonInversion {
  std::vector<std::int64_t> scaled;  // S(x) = sum_psi Rf(psi, psi(x)) prod_{p | psi} (1 - p^(r-1))
  std::int64_t scale = 1;            // n^(r-1) phi(n)
  std::vector<std::int64_t> f;       // S(x) / scale
};

/// Exact inversion in scaled integers. Throws InconsistentRadonData when mass is
/// not conserved and NonIntegralInversion when scale does not divide some S(x).
RadonInversion radon_invert(const RadonData& rf);

}  // namespace fsrecon
