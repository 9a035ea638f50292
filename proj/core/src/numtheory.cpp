#include "fsrecon/numtheory.hpp"

#include <numeric>

#include "fsrecon/error.hpp"

namespace fsrecon {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EvenTorsion: return "EvenTorsion";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::InfiniteGroup: return "InfiniteGroup";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::BadHomomorphism: return "BadHomomorphism";
    case ErrorCode::InfiniteKernel: return "InfiniteKernel";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::SupportNotUnits: return "SupportNotUnits";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NotInV: return "NotInV";
    case ErrorCode::MoveNotApplicable: return "MoveNotApplicable";
    case ErrorCode::ReplayDiverged: return "ReplayDiverged";
    case ErrorCode::ShiftMismatch: return "ShiftMismatch";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::NonIntegralInversion: return "NonIntegralInversion";
    case ErrorCode::InconsistentRadonData: return "InconsistentRadonData";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

std::int64_t mod_reduce(std::int64_t a, std::int64_t n) noexcept {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

__extension__ using Wide = __int128;

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) noexcept {
  const Wide p = static_cast<Wide>(mod_reduce(a, n)) * mod_reduce(b, n);
  return static_cast<std::int64_t>(p % n);
}

std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t n) noexcept {
  if (n == 1) return 0;
  std::int64_t result = 1;
  std::int64_t b = mod_reduce(base, n);
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, b, n);
    b = mul_mod(b, b, n);
    exp >>= 1U;
  }
  return result;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "int64 addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "int64 multiplication");
  return r;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::BadModulus, "phi of n < 1");
  std::int64_t result = n;
  for (std::int64_t p : prime_divisors(n)) result = result / p * (p - 1);
  return result;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small;
  std::vector<std::int64_t> large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::int64_t> units_mod(std::int64_t n) {
  if (n == 1) return {0};
  std::vector<std::int64_t> out;
  for (std::int64_t a = 1; a < n; ++a)
    if (std::gcd(a, n) == 1) out.push_back(a);
  return out;
}

std::int64_t multiplicative_order(std::int64_t a, std::int64_t n) {
  if (n == 1) return 1;
  if (std::gcd(mod_reduce(a, n), n) != 1)
    throw Error(ErrorCode::BadModulus, "multiplicative order of a non-unit");
  std::int64_t x = mod_reduce(a, n);
  std::int64_t k = 1;
  while (x != 1) {
    x = mul_mod(x, a, n);
    ++k;
  }
  return k;
}

}  // namespace fsrecon
