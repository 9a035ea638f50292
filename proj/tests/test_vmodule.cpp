#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fsrecon/error.hpp"
#include "fsrecon/homomorphism.hpp"
#include "fsrecon/numtheory.hpp"
#include "fsrecon/vmodule.hpp"
#include "support.hpp"

using namespace fsrecon;
using testsupport::ms;

namespace {

IntFunction fn(std::int64_t n, std::initializer_list<std::pair<std::int64_t, std::int64_t>> entries) {
  const GroupSpec g = cyclic_group(n);
  IntFunction f(g);
  for (auto [x, v] : entries) f.add(g.element({x}), v);
  return f;
}

IntFunction scaled_uset(std::int64_t n, std::int64_t c) {
  std::vector<std::int64_t> r;
  for (std::int64_t e : u_set(n).elements) r.push_back(mul_mod(c, e, n));
  return ms(n, r);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::InvalidInput;
}

// Exact order of 2 in the sense of the definition, straight from powers.
std::int64_t smallest_pm_one_power(std::int64_t n) {
  std::int64_t p = 1;
  for (std::int64_t k = 1;; ++k) {
    p = p * 2 % n;
    if (p == 1 || p == n - 1) return k;
  }
}

}  // namespace

TEST_CASE("u_set examples") {
  const USet u3 = u_set(3);
  CHECK(u3.elements == std::vector<std::int64_t>{1});
  CHECK(u3.k == 1);
  CHECK(u3.sign == -1);
  const USet u7 = u_set(7);
  CHECK(u7.elements == std::vector<std::int64_t>{1, 2, 4});
  CHECK(u7.sign == 1);
  const USet u17 = u_set(17);
  CHECK(u17.elements == std::vector<std::int64_t>{1, 2, 4, 8});
  CHECK(u17.k == 4);
  CHECK(u17.sign == -1);
  CHECK(code_of([] { u_set(9 + 1); }) == ErrorCode::BadModulus);
  CHECK(code_of([] { u_set(1); }) == ErrorCode::BadModulus);
}

TEST_CASE("U_n and -U_n are disjoint with 2k elements together") {
  for (std::int64_t n = 3; n <= 201; n += 2) {
    const USet u = u_set(n);
    CHECK(u.k == smallest_pm_one_power(n));
    std::set<std::int64_t> pm;
    for (std::int64_t e : u.elements) {
      pm.insert(e);
      pm.insert(n - e);
    }
    CHECK(static_cast<std::int64_t>(pm.size()) == 2 * u.k);
    CHECK(pow_mod(2, static_cast<std::uint64_t>(u.k), n) == mod_reduce(u.sign, n));
  }
}

TEST_CASE("is_in_ofs") {
  CHECK(is_in_ofs(1));
  CHECK(is_in_ofs(7));
  CHECK_FALSE(is_in_ofs(17));
  CHECK(code_of([] { is_in_ofs(8); }) == ErrorCode::BadModulus);
  // For primes, O_FS membership means U_p^+- is all of (Z/p)^x, a single coset.
  for (std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 73, 89, 97, 127}) {
    const UnitCosets c = unit_coset_partition(p);
    CHECK(is_in_ofs(p) == (c.representatives.size() == 1));
  }
}

TEST_CASE("unit coset partition covers every unit once") {
  for (std::int64_t n = 3; n <= 99; n += 2) {
    const UnitCosets c = unit_coset_partition(n);
    std::multiset<std::int64_t> seen;
    for (const auto& half : c.halves)
      for (std::int64_t x : half) {
        seen.insert(x);
        seen.insert(n - x);
      }
    const auto units = units_mod(n);
    CHECK(seen == std::multiset<std::int64_t>(units.begin(), units.end()));
    CHECK(std::is_sorted(c.representatives.begin(), c.representatives.end()));
  }
}

TEST_CASE("v_check examples") {
  CHECK(v_check(fn(3, {{1, 1}, {2, -1}})).member);
  CHECK(v_check(scaled_uset(17, 1) - scaled_uset(17, 3)).member);

  const VMembershipReport r = v_check(fn(3, {{1, 1}}));
  CHECK_FALSE(r.member);
  REQUIRE(r.witness.has_value());
  CHECK(witness_holds(fn(3, {{1, 1}}), *r.witness));

  const GroupSpec g = make_group({3}, 1);
  IntFunction mu(g);
  mu.add(g.element({0, 1}), 1);
  mu.add(g.element({0, -1}), 1);
  const VMembershipReport ri = v_check(mu);
  CHECK_FALSE(ri.member);
  REQUIRE(ri.witness.has_value());
  const auto* w = std::get_if<InfiniteOrderPairViolation>(&*ri.witness);
  REQUIRE(w != nullptr);
  CHECK(w->pair_sum == 2);
  CHECK(witness_holds(mu, *ri.witness));
}

TEST_CASE("v_check_definitional examples") {
  CHECK(v_check_definitional(fn(3, {{1, 1}, {2, -1}})).member);
  CHECK(v_check_definitional(scaled_uset(17, 1) - scaled_uset(17, 3)).member);
  CHECK_FALSE(v_check_definitional(fn(3, {{1, 1}})).member);
  CHECK(v_check_definitional(IntFunction(cyclic_group(9))).member);
  CHECK(v_check_definitional(fn(9, {{3, 1}, {6, -1}})).member);
  CHECK(code_of([] { v_check_definitional(IntFunction(cyclic_group(2001))); }) == ErrorCode::GroupTooLarge);
}

TEST_CASE("decomposition and definitional membership agree exhaustively on Z/3 and Z/5") {
  for (std::int64_t n : {3, 5}) {
    const GroupSpec g = cyclic_group(n);
    std::int64_t count = 1;
    for (std::int64_t i = 0; i < n; ++i) count *= 5;
    std::int64_t members = 0;
    for (std::int64_t code = 0; code < count; ++code) {
      IntFunction mu(g);
      std::int64_t c = code;
      for (std::int64_t x = 0; x < n; ++x, c /= 5) mu.add(g.element({x}), c % 5 - 2);
      const auto a = v_check(mu);
      const auto b = v_check_definitional(mu);
      REQUIRE(a.member == b.member);
      if (!a.member) {
        REQUIRE(a.witness);
        REQUIRE(b.witness);
        CHECK(witness_holds(mu, *a.witness));
        CHECK(witness_holds(mu, *b.witness));
      }
      members += a.member;
    }
    CHECK(members > 1);
  }
}

TEST_CASE("decomposition and definitional membership agree on random small-support functions") {
  std::mt19937_64 rng(21);
  const std::vector<GroupSpec> groups = {make_group({}, 0),     cyclic_group(7),       cyclic_group(9),
                                         cyclic_group(15),      cyclic_group(17),      make_group({3, 3}, 0),
                                         make_group({3, 9}, 0), make_group({5, 5}, 0), make_group({3, 3, 3}, 0),
                                         cyclic_group(45),      make_group({3, 15}, 0)};
  for (const auto& g : groups) {
    const auto els = g.torsion_elements();
    const auto gens = v_generators(g);
    int members = 0;
    for (int trial = 0; trial < 400; ++trial) {
      IntFunction mu(g);
      if (trial % 3 == 0 && !gens.empty()) {
        // Sparse combination of generators, so members are well represented.
        for (int k = 0; k < 2; ++k)
          mu += testsupport::rand_int(rng, -1, 1) * gens[static_cast<std::size_t>(rng() % gens.size())];
      } else {
        const auto support = testsupport::rand_int(rng, 0, 4);
        for (std::int64_t s = 0; s < support; ++s)
          mu.add(els[static_cast<std::size_t>(rng() % els.size())], testsupport::rand_int(rng, -2, 2));
      }
      const auto a = v_check(mu);
      const auto b = v_check_definitional(mu);
      REQUIRE(a.member == b.member);
      if (!a.member) CHECK(witness_holds(mu, *a.witness));
      members += a.member;
    }
    CHECK(members > 0);
  }
}

TEST_CASE("tilde_v_check") {
  CHECK(tilde_v_check(IntFunction(cyclic_group(7))));
  CHECK(tilde_v_check(scaled_uset(5, 1) - scaled_uset(5, 4)));
  CHECK_FALSE(tilde_v_check(fn(7, {{1, 1}, {3, -1}})));
  CHECK(tilde_v_check(scaled_uset(17, 1) - scaled_uset(17, 3)));
  CHECK_FALSE(tilde_v_check(fn(7, {{1, 1}})));
  CHECK(code_of([] { tilde_v_check(fn(9, {{3, 1}})); }) == ErrorCode::SupportNotUnits);
}

TEST_CASE("v_generators") {
  CHECK(v_generators(make_group({}, 0)).empty());
  const auto z3 = v_generators(cyclic_group(3));
  CHECK(std::find(z3.begin(), z3.end(), fn(3, {{1, 1}, {2, -1}})) != z3.end());
  const auto z5 = v_generators(cyclic_group(5));
  CHECK(std::find(z5.begin(), z5.end(), fn(5, {{1, 1}, {4, -1}})) != z5.end());
  const IntFunction swap12 = ms(5, {1, 2}) - ms(5, {2, 4});
  CHECK(std::find(z5.begin(), z5.end(), swap12) != z5.end());
  CHECK(code_of([] { v_generators(make_group({3}, 1)); }) == ErrorCode::InfiniteGroup);

  for (const auto& g : {cyclic_group(9), cyclic_group(15), cyclic_group(17), make_group({3, 3}, 0),
                        make_group({3, 5}, 0), cyclic_group(21)}) {
    const auto gens = v_generators(g);
    CHECK(std::is_sorted(gens.begin(), gens.end(), [](const IntFunction& a, const IntFunction& b) {
      return a.entries() < b.entries();
    }));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      CHECK_FALSE(gens[i].is_zero());
      CHECK(v_check(gens[i]).member);
      if (i > 0) CHECK_FALSE(gens[i] == gens[i - 1]);
    }
  }
}

TEST_CASE("rank closed forms") {
  CHECK(rank_closed_form(1).closed_form == 0);
  CHECK(rank_closed_form(7).closed_form == 3);
  CHECK(rank_closed_form(15).closed_form == 7);
  CHECK(rank_closed_form(17).closed_form == 9);
  CHECK(rank_closed_form(17).tilde_closed_form == 8 + 2 - 1);
  CHECK(code_of([] { rank_closed_form(10); }) == ErrorCode::BadModulus);
  CHECK(code_of([] { rank_closed_form(-3); }) == ErrorCode::BadModulus);
}

TEST_CASE("rank via Smith form") {
  CHECK(rank_via_snf({}) == 0);
  CHECK(rank_via_snf(v_generators(cyclic_group(3))) == 1);
  CHECK(rank_via_snf(v_generators(cyclic_group(15))) == 7);
  CHECK_THROWS_AS(rank_via_snf({fn(3, {{1, 1}}), fn(5, {{1, 1}})}), Error);
}

TEST_CASE("Smith rank agrees with rational elimination and the closed form") {
  for (std::int64_t n = 1; n <= 27; n += 2) {
    const auto gens = v_generators(cyclic_group(n));
    std::vector<std::vector<boost::multiprecision::cpp_rational>> m;
    for (const auto& f : gens) {
      std::vector<boost::multiprecision::cpp_rational> row(static_cast<std::size_t>(n), 0);
      for (const auto& [g, v] : f.entries()) row[static_cast<std::size_t>(g.coords[0])] = v;
      m.push_back(std::move(row));
    }
    const auto ref = static_cast<std::int64_t>(testsupport::rational_rank(m));
    CHECK(rank_via_snf(gens) == ref);
    CHECK(rank_closed_form(n).closed_form == ref);
  }
  const RankReport r = rank_report(17);
  CHECK(r.snf_rank == 9);
  CHECK(r.generator_count.has_value());
}

TEST_CASE("V-tilde rank closed form matches the rank of unit-supported members") {
  // Unit-supported generators: differences of signed coset indicators.
  for (std::int64_t n : {3, 5, 7, 9, 15, 17, 21, 25, 31}) {
    const GroupSpec g = cyclic_group(n);
    std::vector<IntFunction> gens;
    for (const auto& f : v_generators(g)) {
      bool units = true;
      for (const auto& [x, v] : f.entries()) units = units && std::gcd(x.coords[0], n) == 1;
      if (units) gens.push_back(f);
    }
    for (const auto& f : gens) CHECK(tilde_v_check(f));
    CHECK(rank_via_snf(gens) == rank_closed_form(n).tilde_closed_form);
  }
}

TEST_CASE("pushforward examples") {
  const GroupSpec z9 = cyclic_group(9);
  const GroupSpec z3 = cyclic_group(3);
  const Homomorphism red = Homomorphism::make(z9, z3, {z3.element({1})});
  CHECK(pushforward(red, fn(9, {{1, 1}, {8, -1}})) == fn(3, {{1, 1}, {2, -1}}));
  CHECK(pushforward(red, IntFunction(z9)).is_zero());
  CHECK(pushforward(Homomorphism::zero(z3, z3), fn(3, {{1, 1}, {2, -1}})).is_zero());
  CHECK_THROWS_AS(pushforward(red, fn(3, {{1, 1}})), Error);
}

TEST_CASE("pullback examples") {
  const GroupSpec z3 = cyclic_group(3);
  const GroupSpec z9 = cyclic_group(9);
  const IntFunction mu = fn(9, {{3, 1}, {6, -1}});
  CHECK(pullback(Homomorphism::identity(z9), mu) == mu);
  const Homomorphism inc = Homomorphism::make(z3, z9, {z9.element({3})});
  CHECK(pullback(inc, mu) == fn(3, {{1, 1}, {2, -1}}));
  const Homomorphism from_z = Homomorphism::make(make_group({}, 1), z3, {z3.element({1})});
  CHECK(code_of([&] { pullback(from_z, fn(3, {{1, 1}})); }) == ErrorCode::InfiniteKernel);
  CHECK(code_of([&] { Homomorphism::make(z3, z9, {z9.element({1})}); }) == ErrorCode::BadHomomorphism);
}

namespace {

// Random homomorphism: torsion generators of order n_i go to elements killed by n_i.
Homomorphism random_hom(std::mt19937_64& rng, const GroupSpec& src, const GroupSpec& dst) {
  std::vector<GroupElement> images;
  std::vector<GroupElement> pool;
  for (const auto& t : dst.torsion_elements()) {
    std::vector<std::int64_t> c = t.coords;
    c.resize(dst.dimension(), 0);
    pool.push_back(dst.element(c));
  }
  for (std::int64_t n : src.torsion()) {
    std::vector<GroupElement> ok;
    for (const auto& y : pool)
      if (dst.is_zero(dst.scale(y, n))) ok.push_back(y);
    images.push_back(ok[static_cast<std::size_t>(rng() % ok.size())]);
  }
  for (int i = 0; i < src.free_rank(); ++i) {
    std::vector<std::int64_t> c;
    for (std::size_t k = 0; k < dst.dimension(); ++k) c.push_back(testsupport::rand_int(rng, -2, 2));
    images.push_back(dst.element(c));
  }
  return Homomorphism::make(src, dst, images);
}

// A random member of V(G): sign flips everywhere, coset swaps on the torsion part.
IntFunction random_member(std::mt19937_64& rng, const GroupSpec& g) {
  IntFunction mu(g);
  std::vector<GroupElement> pool;
  for (const auto& t : g.torsion_elements()) {
    std::vector<std::int64_t> c = t.coords;
    c.resize(g.dimension(), 0);
    pool.push_back(g.element(c));
  }
  std::vector<IntFunction> torsion_gens;
  if (g.is_finite()) torsion_gens = v_generators(g);
  else {
    const GroupSpec t = make_group(g.torsion(), 0);
    for (const auto& f : v_generators(t)) {
      IntFunction h(g);
      for (const auto& [x, v] : f.entries()) {
        std::vector<std::int64_t> c = x.coords;
        c.resize(g.dimension(), 0);
        h.add(g.element(c), v);
      }
      torsion_gens.push_back(h);
    }
  }
  const int terms = static_cast<int>(testsupport::rand_int(rng, 1, 4));
  for (int i = 0; i < terms; ++i) {
    if (!torsion_gens.empty() && rng() % 2)
      mu += testsupport::rand_int(rng, -2, 2) * torsion_gens[static_cast<std::size_t>(rng() % torsion_gens.size())];
    else {
      std::vector<std::int64_t> c = pool[static_cast<std::size_t>(rng() % pool.size())].coords;
      for (std::size_t k = g.torsion_rank(); k < g.dimension(); ++k) c[k] = testsupport::rand_int(rng, -3, 3);
      const GroupElement x = g.element(c);
      const std::int64_t v = testsupport::rand_int(rng, -2, 2);
      mu.add(x, v);
      mu.add(g.neg(x), -v);
    }
  }
  return mu;
}

}  // namespace

TEST_CASE("pushforward preserves V") {
  std::mt19937_64 rng(31);
  const std::vector<GroupSpec> sources = {cyclic_group(9), cyclic_group(15), make_group({3, 3}, 0),
                                          make_group({3}, 1), make_group({}, 2)};
  const std::vector<GroupSpec> targets = {cyclic_group(3), cyclic_group(9), make_group({5, 3}, 0),
                                          make_group({3}, 1), cyclic_group(27)};
  for (const auto& s : sources)
    for (const auto& t : targets)
      for (int trial = 0; trial < 25; ++trial) {
        const Homomorphism psi = random_hom(rng, s, t);
        const IntFunction mu = random_member(rng, s);
        REQUIRE(v_check(mu).member);
        const IntFunction push = pushforward(psi, mu);
        CHECK(v_check(push).member);
        CHECK(multiset_sum(push) == psi(multiset_sum(mu)));
        if (t.is_finite() && t.order() <= 200) CHECK(v_check_definitional(push).member);
      }
}

TEST_CASE("pullback along finite-kernel maps preserves V and is composition") {
  std::mt19937_64 rng(32);
  const GroupSpec z3 = cyclic_group(3);
  const GroupSpec z9 = cyclic_group(9);
  const GroupSpec z15 = cyclic_group(15);
  const GroupSpec z35 = make_group({3, 5}, 0);
  const GroupSpec z3z = make_group({3}, 1);
  const GroupSpec zz = make_group({}, 1);
  const std::vector<Homomorphism> maps = {
      Homomorphism::make(z3, z9, {z9.element({3})}),
      Homomorphism::make(z9, z9, {z9.element({2})}),
      Homomorphism::make(z15, z35, {z35.element({1, 1})}),
      Homomorphism::make(z35, z15, {z15.element({5}), z15.element({3})}),
      Homomorphism::make(zz, z3z, {z3z.element({1, 2})}),
      Homomorphism::make(z3z, z3z, {z3z.element({2, 0}), z3z.element({1, -1})}),
      Homomorphism::make(z9, z3, {z3.element({1})}),  // kernel {0, 3, 6}
  };
  for (const auto& psi : maps) {
    REQUIRE(psi.has_finite_kernel());
    for (int trial = 0; trial < 40; ++trial) {
      const IntFunction mu = random_member(rng, psi.target());
      const IntFunction back = pullback(psi, mu);
      CHECK(v_check(back).member);
      for (const auto& [x, v] : back.entries()) CHECK(mu(psi(x)) == v);
      if (psi.source().is_finite())
        for (const auto& x : psi.source().torsion_elements()) CHECK(back(x) == mu(psi(x)));
    }
  }
  CHECK_FALSE(Homomorphism::make(make_group({}, 2), zz, {zz.element({1}), zz.element({2})}).has_finite_kernel());
}
