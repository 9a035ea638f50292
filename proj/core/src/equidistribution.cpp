#include "fsrecon/equidistribution.hpp"

#include <numeric>
#include <string>

#include "fsrecon/error.hpp"
#include "fsrecon/numtheory.hpp"

namespace fsrecon {

bool fs_minus_zero_uniform(const FSMultiset& fs) {
  const GroupSpec& group = fs.group();
  if (!group.is_cyclic_finite()) throw Error(ErrorCode::BadModulus, "uniformity is tested on Z/n only");
  const GroupElement zero = group.zero();
  std::optional<BigInt> common;
  for (const GroupElement& g : group.torsion_elements()) {
    BigInt m = fs(g);
    if (g == zero) m -= 1;
    if (!common) common = m;
    else if (m != *common) return false;
  }
  return true;
}

EquidistributionReport check_equidistributed(const IntFunction& a, std::int64_t size_cap) {
  const GroupSpec& group = a.group();
  if (!group.is_cyclic_finite() || group.order() < 3 || group.order() % 2 == 0)
    throw Error(ErrorCode::BadModulus, "equidistribution is checked on Z/n with n odd and >= 3");
  if (!a.is_multiset()) throw Error(ErrorCode::InvalidInput, "A must be a multiset");
  const std::int64_t n = group.order();
  for (const auto& [g, v] : a.entries())
    if (std::gcd(g.coords[0], n) != 1)
      throw Error(ErrorCode::SupportNotUnits, "element " + std::to_string(g.coords[0]) + " is not a unit mod " +
                                                  std::to_string(n));

  EquidistributionReport rep;
  rep.n = n;
  rep.order_of_two = multiplicative_order(2, n);
  const std::int64_t q = a.total();
  if (q % rep.order_of_two != 0)
    throw Error(ErrorCode::NotDivisible, "ord_" + std::to_string(n) + "(2) = " + std::to_string(rep.order_of_two) +
                                             " does not divide |A| = " + std::to_string(q));

  const FSMultiset fs_a = fs_multiset(a, size_cap);
  rep.uniform = fs_minus_zero_uniform(fs_a);
  if (!rep.uniform) return rep;

  IntFunction b(group);
  for (std::int64_t e = 1, i = 0; i < rep.order_of_two; ++i, e = mul_mod(e, 2, n))
    b.add(group.element({e}), q / rep.order_of_two);
  if (!(fs_multiset(b, size_cap) == fs_a))
    throw Error(ErrorCode::InternalInconsistency, "uniform FS(A) differs from FS of the <2> baseline");

  const IntFunction mu = a - b;
  rep.membership = v_check(mu);
  if (!rep.membership->member || !group.is_zero(multiset_sum(mu)))
    throw Error(ErrorCode::InternalInconsistency, "uniform A is not V-equivalent to the <2> baseline without shift");
  MoveCertificate cert = synthesize_moves(a, b);
  const CertificateReport check = verify_certificate(a, b, cert);
  if (!check.ok || !group.is_zero(check.recomputed_total_shift))
    throw Error(ErrorCode::InternalInconsistency, "certificate to the <2> baseline carries a nonzero shift");
  rep.baseline = std::move(b);
  rep.certificate = std::move(cert);
  return rep;
}

}  // namespace fsrecon
