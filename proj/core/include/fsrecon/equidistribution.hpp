#pragma once

#include <cstdint>
#include <optional>

#include "fsrecon/fs.hpp"
#include "fsrecon/int_function.hpp"
#include "fsrecon/moves.hpp"
#include "fsrecon/vmodule.hpp"

namespace fsrecon {

struct EquidistributionReport {
  bool uniform = false;
  std::int64_t n = 1;
  std::int64_t order_of_two = 1;            // m = ord_n(2)
  std::optional<IntFunction> baseline;      // |A| / m copies of <2>
  std::optional<VMembershipReport> membership;  // for mu_A - mu_B
  std::optional<MoveCertificate> certificate;
};

/// True iff FS(A) with one copy of 0 removed takes the same multiplicity at
/// every element of the group. A must live on a finite cyclic group.
bool fs_minus_zero_uniform(const FSMultiset& fs);

/// Decides whether FS(A) minus one copy of 0 is uniform on Z/n. Support must lie
/// in the units (SupportNotUnits); ord_n(2) must divide |A| (NotDivisible, which
/// already rules out uniformity). A uniform A is compared with the baseline B made
/// of |A| / m copies of <2>: FS(A) = FS(B) is confirmed and a verified move
/// certificate from A to B is attached.
EquidistributionReport check_equidistributed(const IntFunction& a, std::int64_t size_cap = kDefaultSizeCap);

}  // namespace fsrecon
