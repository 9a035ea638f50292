#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fsrecon {

using BigInt = boost::multiprecision::cpp_int;

/// Least non-negative residue of a modulo n (n >= 1).
std::int64_t mod_reduce(std::int64_t a, std::int64_t n) noexcept;

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) noexcept;
std::int64_t pow_mod(std::int64_t base, std::uint64_t exp, std::int64_t n) noexcept;

/// Arithmetic on int64 that throws Error{Overflow} instead of wrapping.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

std::int64_t euler_phi(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
std::vector<std::int64_t> prime_divisors(std::int64_t n);

/// Residues in [1, n) coprime to n; for n == 1 returns {0}.
std::vector<std::int64_t> units_mod(std::int64_t n);

/// Multiplicative order of a modulo n; requires gcd(a, n) == 1.
std::int64_t multiplicative_order(std::int64_t a, std::int64_t n);

}  // namespace fsrecon
