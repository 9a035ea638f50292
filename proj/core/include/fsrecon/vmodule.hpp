#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fsrecon/group.hpp"
#include "fsrecon/int_function.hpp"

namespace fsrecon {

/// U_n = {1, 2, 4, ..., 2^(k-1)} mod n for the least k >= 1 with 2^k = +-1 (mod n).
struct USet {
  std::int64_t modulus = 3;
  std::int64_t k = 1;
  std::vector<std::int64_t> elements;
  int sign = -1;  // 2^k = sign (mod n)

  std::int64_t size() const noexcept { return k; }
};

/// Throws BadModulus unless n is odd and >= 3.
USet u_set(std::int64_t n);

/// True iff (Z/n)^x is generated by 2 and -1. Throws BadModulus for even n or n < 1.
bool is_in_ofs(std::int64_t n);

/// Partition of (Z/n)^x into cosets r * U_n^+-. Representatives are taken as the
/// smallest unit not yet covered; halves[i] lists r_i * U_n in U_n order.
struct UnitCosets {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> representatives;
  std::vector<std::vector<std::int64_t>> halves;
};

UnitCosets unit_coset_partition(std::int64_t n);

// Witnesses of non-membership in V(G). Each one is an actual violation of a
// defining condition and can be re-checked with witness_holds().

/// mu(g) + mu(-g) != mu(2g) + mu(-2g)
struct DoublingViolation {
  GroupElement g;
  std::int64_t pair_sum = 0;     // mu(g) + mu(-g)
  std::int64_t doubled_sum = 0;  // mu(2g) + mu(-2g)
};

/// sum of mu over a subgroup is nonzero
struct SubgroupSumViolation {
  std::vector<GroupElement> subgroup;  // sorted element set
  std::int64_t sum = 0;
};

/// mu(g) + mu(-g) != 0 for g of infinite order
struct InfiniteOrderPairViolation {
  GroupElement g;
  std::int64_t pair_sum = 0;
};

using VWitness = std::variant<DoublingViolation, SubgroupSumViolation, InfiniteOrderPairViolation>;

struct VMembershipReport {
  bool member = true;
  std::optional<VWitness> witness;
};

/// Re-evaluates a witness against mu; true iff it is a genuine violation.
bool witness_holds(const IntFunction& mu, const VWitness& w);

/// Membership in V(G) via the torsion / non-torsion split and the
/// decomposition over cyclic subgroups. Works for infinite G.
VMembershipReport v_check(const IntFunction& mu);

/// Membership straight from the defining conditions, quantifying over every
/// element and every subgroup. Finite groups of order <= bound only.
VMembershipReport v_check_definitional(const IntFunction& mu, std::int64_t bound = 2000);

/// Membership in the unit-supported module V~(Z/n). mu must live on Z/n with
/// support in the units, otherwise SupportNotUnits.
bool tilde_v_check(const IntFunction& mu);

/// Generators of V(G): sign flips delta_g - delta_{-g} and coset swaps
/// mu_{iota(alpha U_n)} - mu_{iota(beta U_n)}; nonzero, deduplicated, sorted.
std::vector<IntFunction> v_generators(const GroupSpec& group);

struct RankReport {
  std::int64_t n = 1;
  std::int64_t closed_form = 0;        // rk V(Z/n)
  std::int64_t tilde_closed_form = 0;  // rk V~(Z/n)
  std::optional<std::int64_t> snf_rank;
  std::optional<std::int64_t> generator_count;
};

/// Closed-form ranks of V(Z/n) and V~(Z/n); throws BadModulus for even or non-positive n.
RankReport rank_closed_form(std::int64_t n);

/// Rank of the integer matrix whose rows are the generators' value vectors.
std::int64_t rank_via_snf(const std::vector<IntFunction>& generators);

/// rank_closed_form(n) with snf_rank and generator_count filled in from v_generators(Z/n).
RankReport rank_report(std::int64_t n);

}  // namespace fsrecon
