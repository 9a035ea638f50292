#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsrecon/group.hpp"
#include "fsrecon/int_function.hpp"

namespace fsrecon {

/// Torsion elements times the box [-box, box]^r of free coordinates, sorted.
std::vector<GroupElement> scan_domain(const GroupSpec& group, std::int64_t box);

/// All multisets over the domain with |A| <= max_size and every multiplicity
/// <= max_multiplicity. Ordered by size, then lexicographically by the sorted
/// element list. The domain is sorted and deduplicated first.
std::vector<IntFunction> enumerate_multisets(const GroupSpec& group, std::vector<GroupElement> domain,
                                             std::int64_t max_size, std::int64_t max_multiplicity);

/// Number of multisets enumerate_multisets would produce, per size 0..max_size.
std::vector<std::uint64_t> count_multisets(std::size_t domain_size, std::int64_t max_size,
                                           std::int64_t max_multiplicity);

struct ScanChecks {
  bool v_check = true;
  bool moves = true;
  bool fourier = true;
  bool sum_rule = true;
};

struct FiberScanConfig {
  GroupSpec group;
  std::int64_t max_size = 3;
  std::int64_t max_multiplicity = -1;  // < 0 means max_size
  std::optional<std::vector<GroupElement>> support_restriction;
  std::int64_t box = 2;  // free coordinates range over [-box, box]
  ScanChecks checks;
  unsigned jobs = 1;
  bool collect_equivalent_pairs = false;
};

struct Discrepancy {
  std::string kind;
  std::string detail;
  IntFunction a;
  IntFunction b;
};

/// FS(A) = FS(B) + shift
struct EquivalentPair {
  IntFunction a;
  IntFunction b;
  GroupElement shift;
};

struct FiberScanReport {
  std::uint64_t multisets = 0;
  std::uint64_t planned_pairs = 0;
  std::uint64_t pairs_tested = 0;
  std::uint64_t equivalent_pairs = 0;
  std::uint64_t certificates_issued = 0;
  std::uint64_t fourier_checked = 0;
  std::uint64_t sum_rule_checked = 0;
  std::uint64_t classes = 0;  // equivalence classes among the scanned multisets
  std::vector<Discrepancy> discrepancies;
  std::vector<EquivalentPair> pairs;  // only with collect_equivalent_pairs
  double wall_time_seconds = 0;
};

/// Planned pair count (unordered pairs A != B of equal size) without running the scan.
std::uint64_t planned_pairs(const FiberScanConfig& cfg);

/// Exhaustive cross-check of the three characterizations of FS(A) = FS(B) + s
/// on every pair of equal-size multisets. Discrepancies are reported, not thrown.
FiberScanReport fiber_scan(const FiberScanConfig& cfg);

}  // namespace fsrecon
