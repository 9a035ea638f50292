#include "fsrecon/fs.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "fsrecon/error.hpp"

namespace fsrecon {

std::int64_t size_cap_from_env(std::int64_t fallback) {
  if (const char* v = std::getenv("FSRECON_SIZE_CAP"); v != nullptr && *v != '\0') {
    char* end = nullptr;
    const long long cap = std::strtoll(v, &end, 10);
    if (end != nullptr && *end == '\0' && cap >= 0) return cap;
    throw Error(ErrorCode::InvalidInput, std::string("FSRECON_SIZE_CAP is not a non-negative integer: ") + v);
  }
  return fallback;
}

FSMultiset FSMultiset::unit(const GroupSpec& group) {
  FSMultiset s(group);
  s.add(group.zero(), 1);
  return s;
}

BigInt FSMultiset::operator()(const GroupElement& g) const {
  auto it = entries_.find(g);
  return it == entries_.end() ? BigInt(0) : it->second;
}

void FSMultiset::add(const GroupElement& g, const BigInt& m) {
  if (m <= 0) throw Error(ErrorCode::InvalidInput, "FS multiplicities must be positive");
  group_.require(g);
  entries_[g] += m;
  total_ += m;
}

namespace {

// s * (delta_0 + delta_a)
FSMultiset convolve_factor(const FSMultiset& s, const GroupElement& a) {
  FSMultiset out = s;
  const GroupSpec& g = s.group();
  for (const auto& [x, m] : s.entries()) out.add(g.add(x, a), m);
  return out;
}

}  // namespace

FSMultiset fs_multiset(const IntFunction& a, std::int64_t size_cap) {
  if (!a.is_multiset()) throw Error(ErrorCode::InvalidInput, "FS of a function with negative values");
  const std::int64_t q = a.total();
  if (q > size_cap)
    throw Error(ErrorCode::SizeCapExceeded, "|A| = " + std::to_string(q) + " exceeds cap " + std::to_string(size_cap));
  const GroupSpec& g = a.group();
  FSMultiset out = FSMultiset::unit(g);
  // The factor for a = 0 is 2*delta_0 (support 1); it goes first, then keys in order.
  const GroupElement zero = g.zero();
  for (std::int64_t i = 0; i < a(zero); ++i) out = convolve_factor(out, zero);
  for (const auto& [x, m] : a.entries()) {
    if (x == zero) continue;
    for (std::int64_t i = 0; i < m; ++i) out = convolve_factor(out, x);
  }
  return out;
}

FSMultiset minkowski_sum(const FSMultiset& s, const FSMultiset& t) {
  if (!(s.group() == t.group())) throw Error(ErrorCode::GroupMismatch, "Minkowski sum over different groups");
  const GroupSpec& g = s.group();
  FSMultiset out(g);
  for (const auto& [x, m] : s.entries())
    for (const auto& [y, n] : t.entries()) out.add(g.add(x, y), m * n);
  return out;
}

FSMultiset shift(const FSMultiset& s, const GroupElement& by) {
  const GroupSpec& g = s.group();
  g.require(by);
  FSMultiset out(g);
  for (const auto& [x, m] : s.entries()) out.add(g.add(x, by), m);
  return out;
}

namespace {

// Free coordinates most significant, then torsion coordinates.
bool extreme_less(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  const std::size_t k = g.torsion_rank();
  for (std::size_t i = k; i < a.coords.size(); ++i)
    if (a.coords[i] != b.coords[i]) return a.coords[i] < b.coords[i];
  for (std::size_t i = 0; i < k; ++i)
    if (a.coords[i] != b.coords[i]) return a.coords[i] < b.coords[i];
  return false;
}

}  // namespace

std::vector<GroupElement> find_shifts(const FSMultiset& s, const FSMultiset& t) {
  if (!(s.group() == t.group())) throw Error(ErrorCode::GroupMismatch, "find_shifts over different groups");
  std::vector<GroupElement> out;
  if (s.total() != t.total() || s.entries().size() != t.entries().size() || s.entries().empty()) return out;
  const GroupSpec& g = s.group();
  auto a0_it = s.entries().begin();
  for (auto it = s.entries().begin(); it != s.entries().end(); ++it)
    if (extreme_less(g, a0_it->first, it->first)) a0_it = it;
  const auto& [a0, m0] = *a0_it;
  for (const auto& [b, m] : t.entries()) {
    if (m != m0) continue;
    const GroupElement cand = g.sub(a0, b);
    bool ok = true;
    for (const auto& [y, n] : t.entries()) {
      auto it = s.entries().find(g.add(y, cand));
      if (it == s.entries().end() || it->second != n) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroupElement weighted_sum(const FSMultiset& s) {
  const GroupSpec& g = s.group();
  std::vector<BigInt> acc(g.dimension(), 0);
  for (const auto& [x, m] : s.entries())
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += m * x.coords[i];
  std::vector<std::int64_t> raw(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) {
    BigInt v = acc[i];
    if (i < g.torsion_rank()) {
      const std::int64_t n = g.torsion()[i];
      v %= n;
      if (v < 0) v += n;
    }
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
      throw Error(ErrorCode::Overflow, "weighted sum coordinate exceeds int64");
    raw[i] = static_cast<std::int64_t>(v);
  }
  return g.element(std::move(raw));
}

}  // namespace fsrecon
