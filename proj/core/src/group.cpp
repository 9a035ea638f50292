#include "fsrecon/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <string>

#include "fsrecon/error.hpp"
#include "fsrecon/numtheory.hpp"

namespace fsrecon {

GroupSpec make_group(std::vector<std::int64_t> torsion_orders, int free_rank) {
  if (free_rank < 0) throw Error(ErrorCode::InvalidInput, "negative free rank");
  GroupSpec g;
  for (std::int64_t n : torsion_orders) {
    if (n < 1) throw Error(ErrorCode::InvalidInput, "torsion order must be >= 1, got " + std::to_string(n));
    if (n % 2 == 0) throw Error(ErrorCode::EvenTorsion, "torsion order " + std::to_string(n) + " is even");
    if (n > 1) g.torsion_.push_back(n);
  }
  g.free_rank_ = free_rank;
  return g;
}

GroupSpec cyclic_group(std::int64_t n) { return make_group({n}, 0); }

std::int64_t GroupSpec::order() const {
  if (!is_finite()) throw Error(ErrorCode::InfiniteGroup, "group has free rank " + std::to_string(free_rank_));
  return torsion_order();
}

std::int64_t GroupSpec::torsion_order() const {
  std::int64_t n = 1;
  for (std::int64_t t : torsion_) n = checked_mul(n, t);
  return n;
}

std::int64_t GroupSpec::torsion_exponent() const {
  std::int64_t e = 1;
  for (std::int64_t t : torsion_) e = std::lcm(e, t);
  return e;
}

GroupElement GroupSpec::zero() const { return GroupElement{std::vector<std::int64_t>(dimension(), 0)}; }

GroupElement GroupSpec::element(std::vector<std::int64_t> raw) const {
  if (raw.size() != dimension())
    throw Error(ErrorCode::GroupMismatch, "element has " + std::to_string(raw.size()) + " coordinates, group needs " +
                                              std::to_string(dimension()));
  for (std::size_t i = 0; i < torsion_.size(); ++i) raw[i] = mod_reduce(raw[i], torsion_[i]);
  return GroupElement{std::move(raw)};
}

bool GroupSpec::contains(const GroupElement& g) const noexcept {
  if (g.coords.size() != dimension()) return false;
  for (std::size_t i = 0; i < torsion_.size(); ++i)
    if (g.coords[i] < 0 || g.coords[i] >= torsion_[i]) return false;
  return true;
}

void GroupSpec::require(const GroupElement& g) const {
  if (!contains(g)) throw Error(ErrorCode::GroupMismatch, "element does not belong to the group");
}

GroupElement GroupSpec::add(const GroupElement& a, const GroupElement& b) const {
  require(a);
  require(b);
  GroupElement out = a;
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    std::int64_t v = out.coords[i] + b.coords[i];
    out.coords[i] = v >= torsion_[i] ? v - torsion_[i] : v;
  }
  for (std::size_t i = torsion_.size(); i < out.coords.size(); ++i) out.coords[i] = checked_add(out.coords[i], b.coords[i]);
  return out;
}

GroupElement GroupSpec::neg(const GroupElement& a) const {
  require(a);
  GroupElement out = a;
  for (std::size_t i = 0; i < torsion_.size(); ++i) out.coords[i] = out.coords[i] == 0 ? 0 : torsion_[i] - out.coords[i];
  for (std::size_t i = torsion_.size(); i < out.coords.size(); ++i) out.coords[i] = checked_mul(out.coords[i], -1);
  return out;
}

GroupElement GroupSpec::sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

GroupElement GroupSpec::scale(const GroupElement& a, std::int64_t m) const {
  require(a);
  GroupElement out = a;
  for (std::size_t i = 0; i < torsion_.size(); ++i) out.coords[i] = mul_mod(out.coords[i], m, torsion_[i]);
  for (std::size_t i = torsion_.size(); i < out.coords.size(); ++i) out.coords[i] = checked_mul(out.coords[i], m);
  return out;
}

bool GroupSpec::is_zero(const GroupElement& g) const noexcept {
  return std::all_of(g.coords.begin(), g.coords.end(), [](std::int64_t c) { return c == 0; });
}

bool GroupSpec::is_torsion(const GroupElement& g) const noexcept {
  for (std::size_t i = torsion_.size(); i < g.coords.size(); ++i)
    if (g.coords[i] != 0) return false;
  return true;
}

std::int64_t GroupSpec::torsion_index(const GroupElement& g) const {
  require(g);
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < torsion_.size(); ++i) idx = idx * torsion_[i] + g.coords[i];
  return idx;
}

GroupElement GroupSpec::torsion_element_at(std::int64_t index) const {
  GroupElement g = zero();
  for (std::size_t i = torsion_.size(); i-- > 0;) {
    g.coords[i] = index % torsion_[i];
    index /= torsion_[i];
  }
  return g;
}

std::vector<GroupElement> GroupSpec::torsion_elements(std::int64_t bound) const {
  const std::int64_t n = torsion_order();
  if (n > bound) throw Error(ErrorCode::GroupTooLarge, "torsion subgroup has " + std::to_string(n) + " elements");
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(torsion_element_at(i));
  return out;
}

ElementOrder element_order(const GroupSpec& group, const GroupElement& g) {
  group.require(g);
  if (!group.is_torsion(g)) return std::nullopt;
  std::int64_t order = 1;
  for (std::size_t i = 0; i < group.torsion_rank(); ++i) {
    const std::int64_t n = group.torsion()[i];
    order = std::lcm(order, n / std::gcd(g.coords[i], n));
  }
  return order;
}

std::vector<GroupElement> cyclic_span(const GroupSpec& group, const GroupElement& g) {
  const ElementOrder ord = element_order(group, g);
  if (!ord) throw Error(ErrorCode::InfiniteGroup, "cyclic span of an infinite-order element");
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(*ord));
  GroupElement x = group.zero();
  for (std::int64_t j = 0; j < *ord; ++j) {
    out.push_back(x);
    x = group.add(x, g);
  }
  return out;
}

GroupElement canonical_generator(const GroupSpec& group, const GroupElement& g) {
  const auto span = cyclic_span(group, g);
  const auto n = static_cast<std::int64_t>(span.size());
  const GroupElement* best = &span[n == 1 ? 0 : 1];
  for (std::int64_t j = 2; j < n; ++j)
    if (std::gcd(j, n) == 1 && span[j] < *best) best = &span[j];
  return *best;
}

std::vector<GroupElement> CyclicSubgroup::primitive_elements(const GroupSpec& group) const {
  std::vector<GroupElement> out;
  for (const auto& e : elements)
    if (element_order(group, e) == order) out.push_back(e);
  return out;
}

std::vector<CyclicSubgroup> enumerate_cyclic_subgroups(const GroupSpec& group) {
  if (!group.is_finite()) throw Error(ErrorCode::InfiniteGroup, "cyclic subgroups of an infinite group");
  const std::int64_t n = group.order();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<CyclicSubgroup> out;
  // Every element lies in exactly one H^x, namely that of <g>; visiting elements
  // in index order and marking H^x yields each cyclic subgroup once.
  for (std::int64_t i = 0; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    const GroupElement g = group.torsion_element_at(i);
    auto span = cyclic_span(group, g);
    const auto ord = static_cast<std::int64_t>(span.size());
    for (std::int64_t j = 0; j < ord; ++j)
      if (std::gcd(j, ord) == 1 || ord == 1) seen[static_cast<std::size_t>(group.torsion_index(span[j]))] = true;
    CyclicSubgroup h;
    h.generator = canonical_generator(group, g);
    h.order = ord;
    std::sort(span.begin(), span.end());
    h.elements = std::move(span);
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const CyclicSubgroup& a, const CyclicSubgroup& b) {
    return a.order != b.order ? a.order < b.order : a.generator < b.generator;
  });
  return out;
}

std::vector<std::vector<GroupElement>> enumerate_subgroups(const GroupSpec& group, std::int64_t bound) {
  if (!group.is_finite()) throw Error(ErrorCode::InfiniteGroup, "subgroups of an infinite group");
  const std::int64_t n = group.order();
  if (n > bound) throw Error(ErrorCode::GroupTooLarge, "group of order " + std::to_string(n) + " exceeds bound " +
                                                           std::to_string(bound));
  const auto elems = group.torsion_elements(bound);
  // Subgroups as sorted index vectors; closing S + <x> over all x reaches every subgroup.
  std::set<std::vector<std::int64_t>> found;
  std::deque<std::vector<std::int64_t>> queue;
  found.insert({0});
  queue.push_back({0});
  while (!queue.empty()) {
    const std::vector<std::int64_t> s = std::move(queue.front());
    queue.pop_front();
    std::vector<bool> in_s(static_cast<std::size_t>(n), false);
    for (std::int64_t i : s) in_s[static_cast<std::size_t>(i)] = true;
    for (std::int64_t x = 0; x < n; ++x) {
      if (in_s[static_cast<std::size_t>(x)]) continue;
      std::vector<bool> in_t(static_cast<std::size_t>(n), false);
      std::vector<std::int64_t> t;
      for (const auto& m : cyclic_span(group, elems[static_cast<std::size_t>(x)]))
        for (std::int64_t i : s) {
          const std::int64_t k = group.torsion_index(group.add(elems[static_cast<std::size_t>(i)], m));
          if (!in_t[static_cast<std::size_t>(k)]) {
            in_t[static_cast<std::size_t>(k)] = true;
            t.push_back(k);
          }
        }
      std::sort(t.begin(), t.end());
      if (found.insert(t).second) queue.push_back(std::move(t));
    }
  }
  std::vector<std::vector<GroupElement>> out;
  for (const auto& idx : found) {
    std::vector<GroupElement> h;
    h.reserve(idx.size());
    for (std::int64_t i : idx) h.push_back(elems[static_cast<std::size_t>(i)]);
    std::sort(h.begin(), h.end());
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

std::vector<Embedding> enumerate_embeddings(std::int64_t n, const GroupSpec& group) {
  if (n < 3 || n % 2 == 0) throw Error(ErrorCode::BadModulus, "embedding modulus must be odd and >= 3");
  std::vector<Embedding> out;
  if (group.torsion_exponent() % n != 0) return out;
  for (auto& g : group.torsion_elements())
    if (element_order(group, g) == n) out.push_back(Embedding{std::move(g), n});
  return out;
}

}  // namespace fsrecon
