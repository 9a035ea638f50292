#include "fsrecon/homomorphism.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "fsrecon/error.hpp"
#include "fsrecon/numtheory.hpp"
#include "fsrecon/smith.hpp"

namespace fsrecon {

using Rational = boost::multiprecision::cpp_rational;

Homomorphism Homomorphism::make(GroupSpec source, GroupSpec target, std::vector<GroupElement> generator_images) {
  if (generator_images.size() != source.dimension())
    throw Error(ErrorCode::BadHomomorphism, "need one image per source coordinate");
  for (std::size_t i = 0; i < generator_images.size(); ++i) {
    target.require(generator_images[i]);
    if (i < source.torsion_rank() && !target.is_zero(target.scale(generator_images[i], source.torsion()[i])))
      throw Error(ErrorCode::BadHomomorphism, "image of generator " + std::to_string(i) + " is not killed by " +
                                                  std::to_string(source.torsion()[i]));
  }
  Homomorphism h;
  h.source_ = std::move(source);
  h.target_ = std::move(target);
  h.images_ = std::move(generator_images);
  return h;
}

Homomorphism Homomorphism::identity(const GroupSpec& group) {
  std::vector<GroupElement> imgs;
  for (std::size_t i = 0; i < group.dimension(); ++i) {
    GroupElement e = group.zero();
    e.coords[i] = 1;
    imgs.push_back(group.element(e.coords));
  }
  return make(group, group, std::move(imgs));
}

Homomorphism Homomorphism::zero(const GroupSpec& source, const GroupSpec& target) {
  return make(source, target, std::vector<GroupElement>(source.dimension(), target.zero()));
}

GroupElement Homomorphism::operator()(const GroupElement& x) const {
  source_.require(x);
  GroupElement y = target_.zero();
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (x.coords[i] != 0) y = target_.add(y, target_.scale(images_[i], x.coords[i]));
  return y;
}

namespace {

// Free-coordinate block: rows = free coordinates of target, cols = free generators of source.
IntMatrix free_block(const GroupSpec& source, const GroupSpec& target, const std::vector<GroupElement>& images) {
  const std::size_t k1 = source.torsion_rank();
  const std::size_t k2 = target.torsion_rank();
  IntMatrix m(static_cast<std::size_t>(target.free_rank()),
              std::vector<BigInt>(static_cast<std::size_t>(source.free_rank()), 0));
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < static_cast<std::size_t>(source.free_rank()); ++b) m[a][b] = images[k1 + b].coords[k2 + a];
  return m;
}

// Integer solution of M z = rhs when M has full column rank; nullopt if none.
std::optional<std::vector<std::int64_t>> solve_injective(const IntMatrix& m, const std::vector<BigInt>& rhs,
                                                         std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = Rational(m[i][j]);
    a[i][cols] = Rational(rhs[i]);
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0) return std::nullopt;
  std::vector<std::int64_t> z(cols, 0);
  for (std::size_t i = 0; i < r; ++i) {
    const Rational v = a[i][cols] / a[i][pivot_col[i]];
    if (denominator(v) != 1) return std::nullopt;
    z[pivot_col[i]] = static_cast<std::int64_t>(numerator(v));
  }
  return z;
}

}  // namespace

bool Homomorphism::has_finite_kernel() const {
  const auto r1 = static_cast<std::size_t>(source_.free_rank());
  if (r1 == 0) return true;
  return integer_rank(free_block(source_, target_, images_)) == r1;
}

std::vector<GroupElement> Homomorphism::preimage(const GroupElement& y) const {
  target_.require(y);
  if (!has_finite_kernel()) throw Error(ErrorCode::InfiniteKernel, "preimage under a map with infinite kernel");
  const std::size_t k1 = source_.torsion_rank();
  const std::size_t k2 = target_.torsion_rank();
  const auto r1 = static_cast<std::size_t>(source_.free_rank());
  // Torsion elements map into the torsion of the target, so the free part of x is
  // pinned down by the free coordinates of y.
  std::vector<BigInt> rhs(static_cast<std::size_t>(target_.free_rank()));
  for (std::size_t a = 0; a < rhs.size(); ++a) rhs[a] = y.coords[k2 + a];
  auto z = solve_injective(free_block(source_, target_, images_), rhs, r1);
  if (!z) return {};
  std::vector<GroupElement> out;
  for (auto t : source_.torsion_elements()) {
    for (std::size_t b = 0; b < r1; ++b) t.coords[k1 + b] = (*z)[b];
    if ((*this)(t) == y) out.push_back(std::move(t));
  }
  return out;
}

IntFunction pushforward(const Homomorphism& psi, const IntFunction& mu) {
  if (!(mu.group() == psi.source())) throw Error(ErrorCode::GroupMismatch, "pushforward: mu is not on psi's source");
  IntFunction out(psi.target());
  for (const auto& [g, v] : mu.entries()) out.add(psi(g), v);
  return out;
}

IntFunction pullback(const Homomorphism& psi, const IntFunction& mu) {
  if (!(mu.group() == psi.target())) throw Error(ErrorCode::GroupMismatch, "pullback: mu is not on psi's target");
  if (!psi.has_finite_kernel()) throw Error(ErrorCode::InfiniteKernel, "pullback along a map with infinite kernel");
  IntFunction out(psi.source());
  for (const auto& [y, v] : mu.entries())
    for (const auto& x : psi.preimage(y)) out.add(x, v);
  return out;
}

}  // namespace fsrecon
