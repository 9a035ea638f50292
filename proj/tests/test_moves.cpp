#include <doctest.h>

#include <random>

#include "fsrecon/error.hpp"
#include "fsrecon/moves.hpp"
#include "fsrecon/numtheory.hpp"
#include "fsrecon/oracle.hpp"
#include "support.hpp"

using namespace fsrecon;
using testsupport::ms;

namespace {

CosetSwap swap_on(std::int64_t modulus, std::int64_t n, std::int64_t gen, std::int64_t alpha, std::int64_t beta) {
  const GroupSpec g = cyclic_group(modulus);
  return CosetSwap{n, Embedding{g.element({gen}), n}, alpha, beta};
}

IntFunction uset_times(std::int64_t n, std::int64_t c) {
  std::vector<std::int64_t> r;
  for (std::int64_t e : u_set(n).elements) r.push_back(mul_mod(c, e, n));
  return ms(n, r);
}

}  // namespace

TEST_CASE("apply_move examples") {
  const GroupSpec z5 = cyclic_group(5);
  CHECK(apply_move(ms(5, {1, 2}), SignFlip{z5.element({1})}) == ms(5, {4, 2}));
  CHECK(apply_move(uset_times(17, 1), swap_on(17, 17, 1, 1, 3)) == ms(17, {3, 6, 7, 12}));
  try {
    apply_move(ms(5, {1}), SignFlip{z5.element({2})});
    FAIL("move applied");
  } catch (const MoveNotApplicableError& e) {
    CHECK(e.code() == ErrorCode::MoveNotApplicable);
    CHECK(e.missing() == z5.element({2}));
  }
  // A coset swap needs every element of the source coset.
  CHECK_THROWS_AS(apply_move(ms(17, {1, 2, 4}), swap_on(17, 17, 1, 1, 3)), MoveNotApplicableError);
  // Multiplicity is kept: only one copy of each coset element moves.
  CHECK(apply_move(ms(7, {1, 1, 2, 4}), swap_on(7, 7, 1, 1, 3)) == ms(7, {1, 3, 6, 5}));
}

TEST_CASE("move validation") {
  CHECK_THROWS_AS(apply_move(ms(9, {3, 6}), swap_on(9, 3, 1, 1, 2)), Error);  // 1 has order 9, not 3
  CHECK_THROWS_AS(apply_move(ms(9, {3}), swap_on(9, 3, 3, 3, 2)), Error);     // alpha not a unit
  CHECK(apply_move(ms(9, {3}), swap_on(9, 3, 3, 1, 2)) == ms(9, {6}));
}

TEST_CASE("move_shift examples") {
  const GroupSpec g = make_group({3}, 1);
  CHECK(move_shift(g, SignFlip{g.element({2, 5})}) == g.element({2, 5}));
  CHECK(move_shift(cyclic_group(7), swap_on(7, 7, 1, 1, 3)) == cyclic_group(7).zero());
  CHECK(move_shift(cyclic_group(17), swap_on(17, 17, 1, 1, 3)) == cyclic_group(17).element({2}));
  // Through a non-identity embedding the shift is iota(beta - alpha).
  CHECK(move_shift(cyclic_group(15), swap_on(15, 5, 3, 1, 2)) == cyclic_group(15).element({3}));
}

TEST_CASE("move soundness on random multisets") {
  std::mt19937_64 rng(41);
  int plus = 0;
  int minus = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n = 2 * testsupport::rand_int(rng, 1, 12) + 1;
    const GroupSpec g = cyclic_group(n);
    IntFunction e(g);
    Move m;
    if (trial % 3 == 0) {
      const GroupElement x = g.element({testsupport::rand_int(rng, 0, n - 1)});
      e.add(x, 1);
      m = SignFlip{x};
    } else {
      // Embed Z/d for a random divisor d >= 3 of n and place a full coset.
      std::vector<std::int64_t> ds;
      for (std::int64_t d : divisors(n))
        if (d >= 3) ds.push_back(d);
      const std::int64_t d = ds[rng() % ds.size()];
      const auto units = units_mod(d);
      const std::int64_t gen = (n / d) * units[rng() % units.size()] % n;
      const CosetSwap s{d, Embedding{g.element({gen}), d}, units[rng() % units.size()], units[rng() % units.size()]};
      for (const auto& x : coset_image(g, s, s.alpha)) e.add(x, 1);
      (u_set(d).sign == 1 ? plus : minus) += 1;
      m = s;
    }
    const std::int64_t extra = testsupport::rand_int(rng, 0, std::max<std::int64_t>(0, 10 - e.total()));
    for (std::int64_t i = 0; i < extra; ++i) e.add(g.element({testsupport::rand_int(rng, 0, n - 1)}), 1);
    const IntFunction after = apply_move(e, m);
    CHECK(after.total() == e.total());
    CHECK(testsupport::same_counts(shift(fs_multiset(after), move_shift(g, m)), testsupport::fs_by_subsets(e)));
  }
  CHECK(plus > 10);
  CHECK(minus > 10);
}

TEST_CASE("synthesize_moves examples") {
  const GroupSpec g = make_group({5}, 1);
  const GroupElement x = g.element({2, 3});
  const IntFunction a = IntFunction::delta(g, x);
  const IntFunction b = IntFunction::delta(g, g.neg(x));
  const MoveCertificate c1 = synthesize_moves(a, b);
  REQUIRE(c1.steps.size() == 1);
  CHECK(c1.steps[0].move == Move{SignFlip{x}});
  CHECK(c1.total_shift == x);

  const GroupSpec z5 = cyclic_group(5);
  const MoveCertificate c2 = synthesize_moves(ms(5, {1, 2}), ms(5, {3, 4}));
  REQUIRE(c2.steps.size() == 2);
  for (const auto& st : c2.steps) CHECK(std::holds_alternative<SignFlip>(st.move));
  CHECK(c2.total_shift == z5.element({3}));

  const MoveCertificate c3 = synthesize_moves(uset_times(17, 1), uset_times(17, 3));
  REQUIRE(c3.steps.size() == 1);
  const auto* s = std::get_if<CosetSwap>(&c3.steps[0].move);
  REQUIRE(s != nullptr);
  CHECK(s->alpha == 1);
  CHECK(s->beta == 3);
  CHECK(c3.total_shift == cyclic_group(17).element({2}));

  for (const auto& [p, c] : {std::pair{std::pair{a, b}, c1}, std::pair{std::pair{ms(5, {1, 2}), ms(5, {3, 4})}, c2},
                             std::pair{std::pair{uset_times(17, 1), uset_times(17, 3)}, c3}}) {
    const CertificateReport r = verify_certificate(p.first, p.second, c);
    CHECK(r.ok);
    CHECK(r.recomputed_total_shift == c.total_shift);
    CHECK(r.fs_checked_steps == c.steps.size());
  }
}

TEST_CASE("synthesis rejects non-members with a witness") {
  try {
    synthesize_moves(ms(3, {1}), ms(3, {2, 2}));
    FAIL("synthesized");
  } catch (const NotInVError& e) {
    CHECK(e.code() == ErrorCode::NotInV);
    REQUIRE(e.report().witness.has_value());
    CHECK(witness_holds(ms(3, {1}) - ms(3, {2, 2}), *e.report().witness));
  }
  CHECK_THROWS_AS(synthesize_moves(ms(3, {1}), ms(5, {1})), Error);
}

TEST_CASE("verify_certificate failures") {
  const IntFunction a = uset_times(17, 1);
  const IntFunction b = uset_times(17, 3);
  MoveCertificate c = synthesize_moves(a, b);
  MoveCertificate tampered = c;
  std::get<CosetSwap>(tampered.steps[0].move).beta = 5;
  try {
    verify_certificate(a, b, tampered);
    FAIL("tampered certificate verified");
  } catch (const StepError& e) {
    CHECK(e.code() == ErrorCode::ReplayDiverged);
  }

  MoveCertificate wrong_shift = c;
  wrong_shift.steps[0].predicted_shift = cyclic_group(17).element({1});
  wrong_shift.total_shift = cyclic_group(17).element({1});
  try {
    verify_certificate(a, b, wrong_shift);
    FAIL("wrong shift verified");
  } catch (const StepError& e) {
    CHECK(e.code() == ErrorCode::ShiftMismatch);
    CHECK(e.step() == 0);
  }

  MoveCertificate wrong_total = c;
  wrong_total.total_shift = cyclic_group(17).zero();
  CHECK_THROWS_AS(verify_certificate(a, b, wrong_total), StepError);

  MoveCertificate empty{{}, cyclic_group(17).zero()};
  const CertificateReport r = verify_certificate(a, a, empty);
  CHECK(r.ok);
  CHECK(r.recomputed_total_shift == cyclic_group(17).zero());
  CHECK_THROWS_AS(verify_certificate(a, b, empty), StepError);
}

TEST_CASE("verify_certificate above the replay cap falls back to predicted shifts") {
  const IntFunction a = ms(5, {1, 1, 1, 2, 2, 3});
  const IntFunction b = ms(5, {4, 1, 1, 3, 2, 3});
  const MoveCertificate c = synthesize_moves(a, b);
  const CertificateReport full = verify_certificate(a, b, c);
  CHECK_FALSE(full.fs_replay_skipped);
  const CertificateReport capped = verify_certificate(a, b, c, 4);
  CHECK(capped.ok);
  CHECK(capped.fs_replay_skipped);
  CHECK(capped.fs_checked_steps == 0);
  CHECK(capped.recomputed_total_shift == full.recomputed_total_shift);
}

TEST_CASE("synthesis on random members, with the coset-swap count bound") {
  std::mt19937_64 rng(42);
  const std::vector<GroupSpec> groups = {cyclic_group(7),  cyclic_group(9),       cyclic_group(15),
                                         cyclic_group(17), make_group({3, 3}, 0), make_group({3}, 1),
                                         cyclic_group(31), make_group({5}, 2)};
  for (const auto& g : groups) {
    const std::vector<GroupElement> domain = scan_domain(g, 2);
    for (int trial = 0; trial < 60; ++trial) {
      const IntFunction a = testsupport::random_multiset(rng, g, domain, testsupport::rand_int(rng, 0, 9));
      // Walk A through random applicable moves to get an equivalent B.
      IntFunction b = a;
      GroupElement expected = g.zero();
      for (int step = 0; step < 6; ++step) {
        const auto els = testsupport::copies(b);
        if (els.empty()) break;
        const GroupElement x = els[rng() % els.size()];
        b = apply_move(b, SignFlip{x});
        expected = g.add(expected, x);
        for (const auto& emb : enumerate_embeddings(7, g)) {
          const CosetSwap s{7, emb, 1, 3};
          try {
            b = apply_move(b, s);
            expected = g.add(expected, move_shift(g, s));
          } catch (const MoveNotApplicableError&) {
          }
        }
      }
      const MoveCertificate c = synthesize_moves(a, b);
      const CertificateReport r = verify_certificate(a, b, c);
      CHECK(r.ok);
      CHECK(c.total_shift == expected);

      // At most l1(mu on units of H) / |U_n| coset swaps per cyclic piece.
      const IntFunction mu = a - b;
      std::map<std::pair<std::int64_t, GroupElement>, std::int64_t> l1;
      std::map<std::pair<std::int64_t, GroupElement>, std::int64_t> swaps;
      for (const auto& [x, v] : mu.entries())
        if (g.is_torsion(x) && !g.is_zero(x))
          l1[{*element_order(g, x), canonical_generator(g, x)}] += std::abs(v);
      for (const auto& st : c.steps)
        if (const auto* s = std::get_if<CosetSwap>(&st.move))
          ++swaps[{s->n, canonical_generator(g, s->iota.target_of_one)}];
      for (const auto& [key, k] : swaps) CHECK(k * u_set(key.first).k <= l1[key]);
    }
  }
}

TEST_CASE("decide_equivalence examples") {
  const EquivalenceReport r = decide_equivalence(ms(5, {1, 2}), ms(5, {3, 4}));
  CHECK(r.shift_equivalent);
  REQUIRE(r.shift.has_value());
  CHECK(*r.shift == cyclic_group(5).element({3}));
  CHECK_FALSE(r.no_shift_equal);
  CHECK(r.consistent);
  REQUIRE(r.cond_i.has_value());
  CHECK(r.cond_i->size() == 1);
  CHECK(r.cond_iii.has_value());

  const EquivalenceReport same = decide_equivalence(ms(7, {1, 3, 3}), ms(7, {1, 3, 3}));
  CHECK(same.shift_equivalent);
  CHECK(same.no_shift_equal);
  CHECK(*same.shift == cyclic_group(7).zero());

  const EquivalenceReport none = decide_equivalence(ms(3, {1}), ms(3, {1, 1}));
  CHECK_FALSE(none.shift_equivalent);
  CHECK(none.cond_i->empty());
  CHECK_FALSE(none.cond_ii.member);
  CHECK_FALSE(none.cond_iii.has_value());

  const EquivalenceReport capped = decide_equivalence(ms(5, {1, 2}), ms(5, {3, 4}), 1);
  CHECK_FALSE(capped.cond_i.has_value());
  CHECK(capped.shift_equivalent);
}
