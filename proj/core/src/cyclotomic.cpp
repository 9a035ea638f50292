#include "fsrecon/cyclotomic.hpp"

#include <algorithm>
#include <string>

#include "fsrecon/error.hpp"
#include "fsrecon/numtheory.hpp"

namespace fsrecon {

namespace {

// Quotient of p by a monic divisor q; throws if the division is not exact.
IntPoly exact_divide(IntPoly p, const IntPoly& q) {
  const std::size_t m = q.size() - 1;
  if (p.size() < q.size()) throw Error(ErrorCode::InternalInconsistency, "polynomial division degree");
  IntPoly quot(p.size() - m, 0);
  for (std::size_t i = p.size(); i-- > m;) {
    const std::int64_t c = p[i];
    quot[i - m] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= m; ++k) p[i - m + k] = checked_add(p[i - m + k], -checked_mul(c, q[k]));
  }
  for (std::size_t i = 0; i < m; ++i)
    if (p[i] != 0) throw Error(ErrorCode::InternalInconsistency, "cyclotomic division left a remainder");
  return quot;
}

std::int64_t residue_of(const GroupElement& g) { return g.coords.empty() ? 0 : g.coords[0]; }

std::int64_t check_cyclic_odd(const GroupSpec& group) {
  if (!group.is_cyclic_finite()) throw Error(ErrorCode::BadModulus, "Fourier criterion needs a finite cyclic group");
  const std::int64_t n = group.order();
  if (n % 2 == 0) throw Error(ErrorCode::BadModulus, "Fourier criterion needs odd n");
  return n;
}

void acc(std::int64_t& a, std::int64_t b) { a = checked_add(a, b); }
void acc(BigInt& a, const BigInt& b) { a += b; }
std::int64_t times(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
BigInt times(const BigInt& a, std::int64_t b) { return a * b; }

// Products are formed in Z[x]/(x^d - 1), where multiplying by 1 + x^j is a rotation
// and add; Phi_d divides x^d - 1, so reducing at the end gives the same residue.
template <class T>
std::vector<T> cyclic_product(const IntFunction& mu, std::int64_t d, int sign) {
  std::vector<T> a(static_cast<std::size_t>(d), T(0));
  a[0] = 1;
  std::vector<T> tmp(a.size());
  for (const auto& [g, v] : mu.entries()) {
    const std::int64_t e = sign > 0 ? v : -v;
    if (e <= 0) continue;
    const auto j = static_cast<std::size_t>(mod_reduce(residue_of(g), d));
    for (std::int64_t rep = 0; rep < e; ++rep) {
      for (std::size_t i = 0; i < a.size(); ++i) tmp[(i + j) % a.size()] = a[i];
      for (std::size_t i = 0; i < a.size(); ++i) acc(a[i], tmp[i]);
    }
  }
  return a;
}

template <class T>
std::vector<T> rotate(const std::vector<T>& a, std::int64_t r) {
  std::vector<T> out(a.size());
  const auto n = static_cast<std::int64_t>(a.size());
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(mod_reduce(i + r, n))] = a[static_cast<std::size_t>(i)];
  return out;
}

// Remainder of p modulo the monic phi, truncated to deg phi coefficients.
template <class T>
std::vector<T> reduce_mod(std::vector<T> p, const IntPoly& phi) {
  const std::size_t m = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > m;) {
    const T c = p[i];
    if (c == 0) continue;
    for (std::size_t k = 0; k <= m; ++k) acc(p[i - m + k], -times(c, phi[k]));
  }
  p.resize(m, T(0));
  return p;
}

template <class T>
std::vector<BigInt> widen(const std::vector<T>& v) {
  return std::vector<BigInt>(v.begin(), v.end());
}

template <class T>
DivisorCheck divisor_check(const IntFunction& mu, std::int64_t d, const IntPoly& phi, std::int64_t s) {
  const auto lhs = reduce_mod(cyclic_product<T>(mu, d, +1), phi);
  const auto rhs = reduce_mod(rotate(cyclic_product<T>(mu, d, -1), s), phi);
  DivisorCheck c;
  c.d = d;
  c.holds = lhs == rhs;
  c.lhs = CycInt{d, widen(lhs)};
  c.rhs = CycInt{d, widen(rhs)};
  return c;
}

// ok[r] for r in Z/d: whether lhs = w^r rhs.
template <class T>
std::vector<bool> residue_shifts(const IntFunction& mu, std::int64_t d, const IntPoly& phi) {
  const auto lhs = reduce_mod(cyclic_product<T>(mu, d, +1), phi);
  const auto rhs = cyclic_product<T>(mu, d, -1);
  std::vector<bool> ok(static_cast<std::size_t>(d), false);
  for (std::int64_t r = 0; r < d; ++r) ok[static_cast<std::size_t>(r)] = reduce_mod(rotate(rhs, r), phi) == lhs;
  return ok;
}

}  // namespace

IntPoly cyclotomic_poly(std::int64_t d) {
  if (d < 1) throw Error(ErrorCode::BadModulus, "cyclotomic polynomial of d < 1");
  // Divisors of a divisor of d are divisors of d, so ascending order has every
  // Phi_e available when it is needed.
  const auto divs = divisors(d);
  std::vector<IntPoly> phis;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    const std::int64_t e = divs[i];
    IntPoly p(static_cast<std::size_t>(e) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(e)] = 1;
    for (std::size_t k = 0; k < i; ++k)
      if (e % divs[k] == 0) p = exact_divide(std::move(p), phis[k]);
    phis.push_back(std::move(p));
  }
  return phis.back();
}

CyclotomicRing::CyclotomicRing(std::int64_t d) : d_(d), phi_(cyclotomic_poly(d)) {}

void CyclotomicRing::check(const CycInt& a) const {
  if (a.d != d_ || static_cast<std::int64_t>(a.coeffs.size()) != degree())
    throw Error(ErrorCode::ModulusMismatch, "element of Z[w_" + std::to_string(a.d) + "] used in Z[w_" +
                                                std::to_string(d_) + "]");
}

CycInt CyclotomicRing::zero() const { return CycInt{d_, std::vector<BigInt>(static_cast<std::size_t>(degree()), 0)}; }

CycInt CyclotomicRing::from_int(const BigInt& c) const {
  CycInt z = zero();
  z.coeffs[0] = c;
  return z;
}

CycInt CyclotomicRing::one() const { return from_int(1); }

CycInt CyclotomicRing::reduce(std::vector<BigInt> p) const { return CycInt{d_, reduce_mod(std::move(p), phi_)}; }

CycInt CyclotomicRing::reduce(const IntPoly& p) const { return reduce(std::vector<BigInt>(p.begin(), p.end())); }

CycInt CyclotomicRing::omega_pow(std::int64_t j) const {
  IntPoly p(static_cast<std::size_t>(mod_reduce(j, d_)) + 1, 0);
  p.back() = 1;
  return reduce(p);
}

CycInt CyclotomicRing::add(const CycInt& a, const CycInt& b) const {
  check(a);
  check(b);
  CycInt out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

CycInt CyclotomicRing::mul(const CycInt& a, const CycInt& b) const {
  check(a);
  check(b);
  std::vector<BigInt> p(a.coeffs.size() + b.coeffs.size(), 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) p[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return reduce(std::move(p));
}

CycInt CyclotomicRing::pow(const CycInt& a, std::uint64_t e) const {
  check(a);
  CycInt result = one();
  CycInt base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

CycInt CyclotomicRing::mul_one_plus_omega_pow(CycInt a, std::int64_t j, std::int64_t e) const {
  check(a);
  const CycInt w = omega_pow(j);
  for (std::int64_t i = 0; i < e; ++i) a = add(a, mul(a, w));
  return a;
}

CycInt cyc_add(const CycInt& a, const CycInt& b) {
  if (a.d != b.d) throw Error(ErrorCode::ModulusMismatch, "cyc_add");
  return CyclotomicRing(a.d).add(a, b);
}

CycInt cyc_mul(const CycInt& a, const CycInt& b) {
  if (a.d != b.d) throw Error(ErrorCode::ModulusMismatch, "cyc_mul");
  return CyclotomicRing(a.d).mul(a, b);
}

CycInt cyc_pow(const CycInt& a, std::uint64_t e) { return CyclotomicRing(a.d).pow(a, e); }

bool FourierClaim::holds() const noexcept {
  return std::all_of(per_divisor.begin(), per_divisor.end(), [](const DivisorCheck& c) { return c.holds; });
}

FourierClaim fourier_check(const IntFunction& mu, std::int64_t s) {
  const std::int64_t n = check_cyclic_odd(mu.group());
  FourierClaim claim;
  claim.n = n;
  claim.mu = mu;
  claim.s = mod_reduce(s, n);
  for (std::int64_t d : divisors(n)) {
    const IntPoly phi = cyclotomic_poly(d);
    try {
      claim.per_divisor.push_back(divisor_check<std::int64_t>(mu, d, phi, claim.s));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      claim.per_divisor.push_back(divisor_check<BigInt>(mu, d, phi, claim.s));
    }
  }
  return claim;
}

std::vector<std::int64_t> fourier_shifts(const IntFunction& mu) {
  const std::int64_t n = check_cyclic_odd(mu.group());
  std::vector<bool> ok(static_cast<std::size_t>(n), true);
  for (std::int64_t d : divisors(n)) {
    const IntPoly phi = cyclotomic_poly(d);
    std::vector<bool> residue_ok;
    try {
      residue_ok = residue_shifts<std::int64_t>(mu, d, phi);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
      residue_ok = residue_shifts<BigInt>(mu, d, phi);
    }
    for (std::int64_t s = 0; s < n; ++s)
      if (!residue_ok[static_cast<std::size_t>(s % d)]) ok[static_cast<std::size_t>(s)] = false;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t s = 0; s < n; ++s)
    if (ok[static_cast<std::size_t>(s)]) out.push_back(s);
  return out;
}

}  // namespace fsrecon
