#pragma once

// Test-only helpers: seeded generators and brute-force reference implementations
// that share no code paths with the library routines they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fsrecon/fs.hpp"
#include "fsrecon/group.hpp"
#include "fsrecon/int_function.hpp"

namespace testsupport {

using fsrecon::GroupElement;
using fsrecon::GroupSpec;
using fsrecon::IntFunction;

inline std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline GroupElement residue(const GroupSpec& g, std::int64_t r) { return g.element({r}); }

/// f over Z/n from raw residues (repeats give multiplicities).
inline IntFunction ms(std::int64_t n, const std::vector<std::int64_t>& residues) {
  const GroupSpec g = fsrecon::cyclic_group(n);
  IntFunction f(g);
  for (std::int64_t r : residues) f.add(g.element({r}), 1);
  return f;
}

/// Flattened multiset, one element per copy.
inline std::vector<GroupElement> copies(const IntFunction& a) {
  std::vector<GroupElement> out;
  for (const auto& [g, v] : a.entries())
    for (std::int64_t i = 0; i < v; ++i) out.push_back(g);
  return out;
}

/// FS(A) by running over all 2^|A| subsets; plain integer counts.
inline std::map<GroupElement, std::uint64_t> fs_by_subsets(const IntFunction& a) {
  const GroupSpec& g = a.group();
  const auto xs = copies(a);
  std::map<GroupElement, std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    GroupElement s = g.zero();
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (mask >> i & 1U) s = g.add(s, xs[i]);
    ++out[s];
  }
  return out;
}

inline bool same_counts(const fsrecon::FSMultiset& s, const std::map<GroupElement, std::uint64_t>& ref) {
  if (s.entries().size() != ref.size()) return false;
  for (const auto& [g, m] : ref)
    if (s(g) != m) return false;
  return true;
}

/// Every s with S = T + s, trying every pair of support points.
inline std::vector<GroupElement> shifts_exhaustive(const fsrecon::FSMultiset& s, const fsrecon::FSMultiset& t) {
  const GroupSpec& g = s.group();
  std::vector<GroupElement> out;
  for (const auto& [x, m] : s.entries())
    for (const auto& [y, k] : t.entries()) {
      const GroupElement cand = g.sub(x, y);
      if (std::find(out.begin(), out.end(), cand) != out.end()) continue;
      if (fsrecon::shift(t, cand) == s) out.push_back(cand);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rank over Q by plain Gaussian elimination on rationals.
inline std::size_t rational_rank(std::vector<std::vector<boost::multiprecision::cpp_rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const boost::multiprecision::cpp_rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// A random multiset over the given domain with |A| = size.
inline IntFunction random_multiset(std::mt19937_64& rng, const GroupSpec& g, const std::vector<GroupElement>& domain,
                                   std::int64_t size) {
  IntFunction f(g);
  for (std::int64_t i = 0; i < size; ++i)
    f.add(domain[static_cast<std::size_t>(rand_int(rng, 0, static_cast<std::int64_t>(domain.size()) - 1))], 1);
  return f;
}

}  // namespace testsupport
