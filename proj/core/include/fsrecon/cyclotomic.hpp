#pragma once

#include <cstdint>
#include <vector>

#include "fsrecon/int_function.hpp"
#include "fsrecon/numtheory.hpp"

namespace fsrecon {

/// Integer polynomial, coefficients from the constant term upward.
using IntPoly = std::vector<std::int64_t>;

/// Phi_d(x), by exact division of x^d - 1 by Phi_e for the proper divisors e of d.
IntPoly cyclotomic_poly(std::int64_t d);

/// Element of Z[x]/Phi_d(x), stored as its canonical residue of degree < phi(d).
struct CycInt {
  std::int64_t d = 1;
  std::vector<BigInt> coeffs;  // length phi(d)

  friend bool operator==(const CycInt&, const CycInt&) = default;
};

/// Z[x]/Phi_d with the reduction data precomputed.
class CyclotomicRing {
 public:
  explicit CyclotomicRing(std::int64_t d);

  std::int64_t modulus() const noexcept { return d_; }
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(phi_.size()) - 1; }
  const IntPoly& phi() const noexcept { return phi_; }

  CycInt zero() const;
  CycInt one() const;
  CycInt from_int(const BigInt& c) const;
  /// omega_d^j, any integer j.
  CycInt omega_pow(std::int64_t j) const;
  /// Reduces an arbitrary polynomial mod Phi_d.
  CycInt reduce(std::vector<BigInt> p) const;
  CycInt reduce(const IntPoly& p) const;

  CycInt add(const CycInt& a, const CycInt& b) const;
  CycInt mul(const CycInt& a, const CycInt& b) const;
  CycInt pow(const CycInt& a, std::uint64_t e) const;
  /// a * (1 + omega_d^j)^e, computed by repeated shift-and-add.
  CycInt mul_one_plus_omega_pow(CycInt a, std::int64_t j, std::int64_t e) const;

 private:
  void check(const CycInt& a) const;

  std::int64_t d_;
  IntPoly phi_;
};

CycInt cyc_add(const CycInt& a, const CycInt& b);
CycInt cyc_mul(const CycInt& a, const CycInt& b);
CycInt cyc_pow(const CycInt& a, std::uint64_t e);

struct DivisorCheck {
  std::int64_t d = 1;
  CycInt lhs;  // prod_{mu(j) > 0} (1 + w^j)^mu(j)
  CycInt rhs;  // w^s prod_{mu(j) < 0} (1 + w^j)^-mu(j)
  bool holds = false;
};

struct FourierClaim {
  std::int64_t n = 1;
  IntFunction mu;
  std::int64_t s = 0;
  std::vector<DivisorCheck> per_divisor;

  bool holds() const noexcept;
};

/// For each d | n, compares prod_j (1 + w_d^j)^mu(j) against w_d^s in Z[w_d],
/// cross-multiplying the negative exponents. mu must live on Z/n, n odd.
/// Products are formed in int64 and redone in arbitrary precision on overflow.
FourierClaim fourier_check(const IntFunction& mu, std::int64_t s);

/// Every s in Z/n for which fourier_check(mu, s) holds, computed with one
/// product per divisor. Sorted.
std::vector<std::int64_t> fourier_shifts(const IntFunction& mu);

}  // namespace fsrecon
