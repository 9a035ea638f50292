#include "fsrecon/smith.hpp"

#include <algorithm>
#include <utility>

#include "fsrecon/error.hpp"

namespace fsrecon {

namespace {

// Locates the nonzero entry of smallest magnitude in the lower-right block at t.
bool find_pivot(const IntMatrix& m, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  BigInt best;
  for (std::size_t i = t; i < m.size(); ++i)
    for (std::size_t j = t; j < m[i].size(); ++j) {
      if (m[i][j] == 0) continue;
      BigInt a = abs(m[i][j]);
      if (!found || a < best) {
        best = std::move(a);
        pr = i;
        pc = j;
        found = true;
        if (best == 1) return true;
      }
    }
  return found;
}

void sub_row(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q, std::size_t from) {
  for (std::size_t j = from; j < m[dst].size(); ++j)
    if (m[src][j] != 0) m[dst][j] -= q * m[src][j];
}

void sub_col(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q, std::size_t from) {
  for (std::size_t i = from; i < m.size(); ++i)
    if (m[i][src] != 0) m[i][dst] -= q * m[i][src];
}

}  // namespace

std::vector<BigInt> smith_invariants(IntMatrix m) {
  std::vector<BigInt> diag;
  if (m.empty()) return diag;
  const std::size_t cols = m.front().size();
  for (const auto& row : m)
    if (row.size() != cols) throw Error(ErrorCode::InvalidInput, "ragged matrix");
  const std::size_t limit = std::min(m.size(), cols);
  for (std::size_t t = 0; t < limit; ++t) {
    std::size_t pr = t;
    std::size_t pc = t;
    if (!find_pivot(m, t, pr, pc)) break;
    std::swap(m[t], m[pr]);
    if (pc != t)
      for (auto& row : m) std::swap(row[t], row[pc]);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m.size(); ++i) {
        if (m[i][t] == 0) continue;
        const BigInt q = m[i][t] / m[t][t];
        sub_row(m, i, t, q, t);
        if (m[i][t] != 0) {
          clean = false;
          if (abs(m[i][t]) < abs(m[t][t])) std::swap(m[t], m[i]);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        const BigInt q = m[t][j] / m[t][t];
        sub_col(m, j, t, q, t);
        if (m[t][j] != 0) {
          clean = false;
          if (abs(m[t][j]) < abs(m[t][t]))
            for (auto& row : m) std::swap(row[t], row[j]);
        }
      }
      if (!clean) continue;
      // Divisibility: fold any row whose entries are not multiples of the pivot.
      bool folded = false;
      for (std::size_t i = t + 1; i < m.size() && !folded; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
            folded = true;
            break;
          }
      if (!folded) break;
    }
    diag.push_back(abs(m[t][t]));
  }
  return diag;
}

std::size_t integer_rank(const IntMatrix& m) { return smith_invariants(m).size(); }

}  // namespace fsrecon
