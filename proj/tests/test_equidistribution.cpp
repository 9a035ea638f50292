#include <doctest.h>

#include <random>

#include "fsrecon/equidistribution.hpp"
#include "fsrecon/error.hpp"
#include "fsrecon/numtheory.hpp"
#include "support.hpp"

using namespace fsrecon;
using testsupport::ms;

namespace {

// Uniformity by listing subset sums directly.
bool uniform_by_subsets(const IntFunction& a) {
  auto counts = testsupport::fs_by_subsets(a);
  --counts[a.group().zero()];
  const std::int64_t n = a.group().order();
  const std::uint64_t first = counts[a.group().element({0})];
  for (std::int64_t x = 1; x < n; ++x)
    if (counts[a.group().element({x})] != first) return false;
  return true;
}

}  // namespace

TEST_CASE("check_equidistributed examples") {
  const EquidistributionReport a = check_equidistributed(ms(7, {1, 2, 4}));
  CHECK(a.uniform);
  CHECK(a.order_of_two == 3);
  REQUIRE(a.baseline.has_value());
  CHECK(*a.baseline == ms(7, {1, 2, 4}));
  REQUIRE(a.certificate.has_value());
  CHECK(a.certificate->steps.empty());

  const EquidistributionReport b = check_equidistributed(ms(7, {3, 5, 6}));
  CHECK(b.uniform);
  REQUIRE(b.membership.has_value());
  CHECK(b.membership->member);
  REQUIRE(b.certificate.has_value());
  CHECK(verify_certificate(ms(7, {3, 5, 6}), *b.baseline, *b.certificate).ok);

  CHECK_FALSE(check_equidistributed(ms(7, {1, 1, 1})).uniform);
}

TEST_CASE("check_equidistributed errors") {
  try {
    check_equidistributed(ms(9, {3, 1, 2, 4, 5, 7}));
    FAIL("accepted a non-unit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportNotUnits);
  }
  try {
    check_equidistributed(ms(7, {1, 2}));
    FAIL("accepted |A| = 2 over Z/7");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDivisible);
  }
  CHECK_THROWS_AS(check_equidistributed(IntFunction(make_group({3, 3}, 0))), Error);
}

TEST_CASE("equidistribution verdicts match subset enumeration over Z/9, Z/15 and Z/31") {
  for (std::int64_t n : {9, 15, 31}) {
    const GroupSpec g = cyclic_group(n);
    const std::int64_t m = multiplicative_order(2, n);
    const auto units = units_mod(n);
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    int uniform = 0;
    for (int trial = 0; trial < 200; ++trial) {
      IntFunction a(g);
      for (std::int64_t i = 0; i < m; ++i) a.add(g.element({units[rng() % units.size()]}), 1);
      if (trial % 4 == 0) {  // a random unit multiple of <2> is always uniform
        a = IntFunction(g);
        const std::int64_t c = units[rng() % units.size()];
        for (std::int64_t i = 0, e = 1; i < m; ++i, e = e * 2 % n) a.add(g.element({c * e % n}), 1);
      }
      const EquidistributionReport r = check_equidistributed(a);
      CHECK(r.uniform == uniform_by_subsets(a));
      uniform += r.uniform;
    }
    CHECK(uniform > 0);
  }
}
