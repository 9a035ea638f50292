#include "fsrecon/vmodule.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "fsrecon/error.hpp"
#include "fsrecon/numtheory.hpp"
#include "fsrecon/smith.hpp"

namespace fsrecon {

USet u_set(std::int64_t n) {
  if (n < 3 || n % 2 == 0) throw Error(ErrorCode::BadModulus, "U_n needs odd n >= 3, got " + std::to_string(n));
  USet u;
  u.modulus = n;
  u.elements.push_back(1);
  std::int64_t x = 2 % n;
  u.k = 1;
  while (x != 1 && x != n - 1) {
    u.elements.push_back(x);
    x = mul_mod(x, 2, n);
    ++u.k;
  }
  u.sign = x == 1 ? 1 : -1;
  return u;
}

bool is_in_ofs(std::int64_t n) {
  if (n < 1 || n % 2 == 0) throw Error(ErrorCode::BadModulus, "O_FS membership needs odd n >= 1");
  if (n == 1) return true;
  std::set<std::int64_t> closure{1};
  std::vector<std::int64_t> frontier{1};
  while (!frontier.empty()) {
    std::vector<std::int64_t> next;
    for (std::int64_t x : frontier)
      for (std::int64_t gen : {std::int64_t{2}, n - 1}) {
        const std::int64_t y = mul_mod(x, gen, n);
        if (closure.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return static_cast<std::int64_t>(closure.size()) == euler_phi(n);
}

UnitCosets unit_coset_partition(std::int64_t n) {
  const USet u = u_set(n);
  UnitCosets out;
  out.modulus = n;
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  for (std::int64_t r : units_mod(n)) {
    if (covered[static_cast<std::size_t>(r)]) continue;
    std::vector<std::int64_t> half;
    for (std::int64_t e : u.elements) {
      const std::int64_t x = mul_mod(r, e, n);
      half.push_back(x);
      covered[static_cast<std::size_t>(x)] = true;
      covered[static_cast<std::size_t>(n - x)] = true;
    }
    out.representatives.push_back(r);
    out.halves.push_back(std::move(half));
  }
  return out;
}

namespace {

std::int64_t pair_value(const IntFunction& mu, const GroupElement& g) {
  return checked_add(mu(g), mu(mu.group().neg(g)));
}

std::int64_t sum_over(const IntFunction& mu, const std::vector<GroupElement>& set) {
  std::int64_t s = 0;
  for (const auto& g : set) s = checked_add(s, mu(g));
  return s;
}

bool is_subgroup(const GroupSpec& group, const std::vector<GroupElement>& set) {
  if (!std::binary_search(set.begin(), set.end(), group.zero())) return false;
  for (const auto& a : set)
    for (const auto& b : set)
      if (!std::binary_search(set.begin(), set.end(), group.sub(a, b))) return false;
  return true;
}

// Checks the restriction of mu to H^x for H = <h> of order n; returns a violation of
// the V(G) conditions inside H when the restriction is not in V~(H).
std::optional<VWitness> cyclic_piece_violation(const IntFunction& mu, const GroupElement& h, std::int64_t n) {
  const GroupSpec& group = mu.group();
  if (n == 1) {
    const std::int64_t v = mu(group.zero());
    if (v != 0) return SubgroupSumViolation{{group.zero()}, v};
    return std::nullopt;
  }
  // F(x) = mu(xh) + mu(-xh) must satisfy F(x) = F(2x) on units x.
  std::int64_t unit_sum = 0;
  for (std::int64_t x : units_mod(n)) {
    const GroupElement gx = group.scale(h, x);
    const std::int64_t f = pair_value(mu, gx);
    const std::int64_t f2 = pair_value(mu, group.scale(h, mul_mod(2, x, n)));
    if (f != f2) return DoublingViolation{gx, f, f2};
    unit_sum = checked_add(unit_sum, mu(gx));
  }
  if (unit_sum == 0) return std::nullopt;
  // By inclusion-exclusion over the subgroups dH, one of them has a nonzero sum.
  for (std::int64_t d : divisors(n)) {
    auto sub = cyclic_span(group, group.scale(h, d));
    std::sort(sub.begin(), sub.end());
    const std::int64_t s = sum_over(mu, sub);
    if (s != 0) return SubgroupSumViolation{std::move(sub), s};
  }
  throw Error(ErrorCode::InternalInconsistency, "nonzero H^x sum with every subgroup sum zero");
}

}  // namespace

bool witness_holds(const IntFunction& mu, const VWitness& w) {
  const GroupSpec& group = mu.group();
  if (const auto* d = std::get_if<DoublingViolation>(&w)) {
    if (!group.contains(d->g)) return false;
    return pair_value(mu, d->g) != pair_value(mu, group.scale(d->g, 2));
  }
  if (const auto* s = std::get_if<SubgroupSumViolation>(&w)) {
    for (const auto& g : s->subgroup)
      if (!group.contains(g)) return false;
    if (!std::is_sorted(s->subgroup.begin(), s->subgroup.end()) || !is_subgroup(group, s->subgroup)) return false;
    return sum_over(mu, s->subgroup) != 0;
  }
  const auto& p = std::get<InfiniteOrderPairViolation>(w);
  return group.contains(p.g) && !group.is_torsion(p.g) && pair_value(mu, p.g) != 0;
}

VMembershipReport v_check(const IntFunction& mu) {
  const GroupSpec& group = mu.group();
  // Torsion support grouped by the cyclic subgroup each element generates,
  // ordered by (order, canonical generator).
  std::map<std::pair<std::int64_t, GroupElement>, bool> pieces;
  for (const auto& [g, v] : mu.entries()) {
    if (!group.is_torsion(g)) {
      const std::int64_t p = pair_value(mu, g);
      if (p != 0) return {false, InfiniteOrderPairViolation{g, p}};
      continue;
    }
    pieces.emplace(std::make_pair(*element_order(group, g), canonical_generator(group, g)), true);
  }
  for (const auto& [key, unused] : pieces) {
    if (auto w = cyclic_piece_violation(mu, key.second, key.first)) return {false, std::move(w)};
  }
  return {true, std::nullopt};
}

VMembershipReport v_check_definitional(const IntFunction& mu, std::int64_t bound) {
  const GroupSpec& group = mu.group();
  if (!group.is_finite()) throw Error(ErrorCode::InfiniteGroup, "definitional check needs a finite group");
  if (group.order() > bound) throw Error(ErrorCode::GroupTooLarge, "group order exceeds bound");
  for (const auto& g : group.torsion_elements(bound)) {
    const std::int64_t a = pair_value(mu, g);
    const std::int64_t b = pair_value(mu, group.scale(g, 2));
    if (a != b) return {false, DoublingViolation{g, a, b}};
  }
  for (auto& h : enumerate_subgroups(group, bound)) {
    const std::int64_t s = sum_over(mu, h);
    if (s != 0) return {false, SubgroupSumViolation{std::move(h), s}};
  }
  return {true, std::nullopt};
}

bool tilde_v_check(const IntFunction& mu) {
  const GroupSpec& group = mu.group();
  if (!group.is_cyclic_finite()) throw Error(ErrorCode::GroupMismatch, "V~ is defined on Z/n");
  const std::int64_t n = group.order();
  for (const auto& [g, v] : mu.entries()) {
    if (n > 1 && std::gcd(g.coords[0], n) != 1)
      throw Error(ErrorCode::SupportNotUnits, "support element " + std::to_string(g.coords[0]) + " is not a unit");
  }
  if (n == 1) return mu.total() == 0;
  const GroupElement one = group.element({1});
  return !cyclic_piece_violation(mu, one, n).has_value() && mu.total() == 0;
}

std::vector<IntFunction> v_generators(const GroupSpec& group) {
  if (!group.is_finite()) throw Error(ErrorCode::InfiniteGroup, "generators of V(G) need a finite group");
  auto by_entries = [](const IntFunction& a, const IntFunction& b) { return a.entries() < b.entries(); };
  std::set<IntFunction, decltype(by_entries)> found(by_entries);

  for (const auto& g : group.torsion_elements()) {
    if (group.is_zero(g)) continue;
    IntFunction f(group);
    f.add(g, 1);
    f.add(group.neg(g), -1);
    found.insert(std::move(f));
  }
  // An embedding iota with iota(1) = c*h and a unit alpha give the set (alpha*c) h U_n,
  // so ranging over every unit x of Z/n for each cyclic H = <h> covers all (iota, alpha).
  for (const auto& h : enumerate_cyclic_subgroups(group)) {
    if (h.order < 3) continue;
    const USet u = u_set(h.order);
    std::set<std::vector<GroupElement>> coset_sets;
    for (std::int64_t x : units_mod(h.order)) {
      std::vector<GroupElement> s;
      for (std::int64_t e : u.elements) s.push_back(group.scale(h.generator, mul_mod(x, e, h.order)));
      std::sort(s.begin(), s.end());
      coset_sets.insert(std::move(s));
    }
    for (const auto& a : coset_sets)
      for (const auto& b : coset_sets) {
        if (a == b) continue;
        IntFunction f(group);
        for (const auto& g : a) f.add(g, 1);
        for (const auto& g : b) f.add(g, -1);
        if (!f.is_zero()) found.insert(std::move(f));
      }
  }
  return {found.begin(), found.end()};
}

RankReport rank_closed_form(std::int64_t n) {
  if (n < 1 || n % 2 == 0) throw Error(ErrorCode::BadModulus, "rank formula needs odd n >= 1");
  RankReport r;
  r.n = n;
  if (n == 1) return r;
  auto coset_count = [](std::int64_t d) { return euler_phi(d) / (2 * u_set(d).size()); };
  r.tilde_closed_form = euler_phi(n) / 2 + coset_count(n) - 1;
  r.closed_form = (n - 1) / 2;
  for (std::int64_t d : divisors(n))
    if (d != 1) r.closed_form += coset_count(d) - 1;
  return r;
}

std::int64_t rank_via_snf(const std::vector<IntFunction>& generators) {
  if (generators.empty()) return 0;
  const GroupSpec& group = generators.front().group();
  std::map<GroupElement, std::size_t> column;
  for (const auto& f : generators) {
    if (!(f.group() == group)) throw Error(ErrorCode::GroupMismatch, "generators live on different groups");
    for (const auto& [g, v] : f.entries()) column.emplace(g, 0);
  }
  std::size_t c = 0;
  for (auto& [g, idx] : column) idx = c++;
  IntMatrix m(generators.size(), std::vector<BigInt>(column.size(), 0));
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (const auto& [g, v] : generators[i].entries()) m[i][column.at(g)] = v;
  return static_cast<std::int64_t>(integer_rank(m));
}

RankReport rank_report(std::int64_t n) {
  RankReport r = rank_closed_form(n);
  const auto gens = v_generators(cyclic_group(n));
  r.generator_count = static_cast<std::int64_t>(gens.size());
  r.snf_rank = rank_via_snf(gens);
  return r;
}

}  // namespace fsrecon
