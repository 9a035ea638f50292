#pragma once

#include <cstddef>
#include <vector>

#include "fsrecon/numtheory.hpp"

namespace fsrecon {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Nonzero diagonal of the Smith normal form, d_1 | d_2 | ... (all positive).
/// Rows may have differing lengths only if the matrix is empty.
std::vector<BigInt> smith_invariants(IntMatrix m);

/// Rank over Z (= rank over Q), the number of Smith invariants.
std::size_t integer_rank(const IntMatrix& m);

}  // namespace fsrecon
