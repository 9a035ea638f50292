#include "fsrecon/radon.hpp"

#include <string>

#include "fsrecon/error.hpp"
#include "fsrecon/numtheory.hpp"

namespace fsrecon {

std::int64_t TorusShape::size() const {
  if (n < 1 || r < 1) throw Error(ErrorCode::InvalidInput, "torus needs n >= 1 and r >= 1");
  std::int64_t s = 1;
  for (int i = 0; i < r; ++i) s = checked_mul(s, n);
  return s;
}

std::vector<std::int64_t> TorusShape::coords(std::int64_t index) const {
  std::vector<std::int64_t> c(static_cast<std::size_t>(r));
  for (int i = r; i-- > 0;) {
    c[static_cast<std::size_t>(i)] = index % n;
    index /= n;
  }
  return c;
}

std::int64_t TorusShape::index(const std::vector<std::int64_t>& c) const {
  std::int64_t idx = 0;
  for (std::int64_t v : c) idx = idx * n + mod_reduce(v, n);
  return idx;
}

std::vector<std::vector<std::int64_t>> hom_enumerate(std::int64_t n, int r) {
  const TorusShape shape{n, r};
  std::vector<std::vector<std::int64_t>> out;
  const std::int64_t count = shape.size();
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(shape.coords(i));
  return out;
}

std::int64_t RadonData::at(std::int64_t psi_index, std::int64_t c) const {
  return values.at(static_cast<std::size_t>(psi_index * shape.n + mod_reduce(c, shape.n)));
}

bool RadonData::mass_conserved() const {
  const std::int64_t homs = shape.size();
  std::int64_t reference = 0;
  for (std::int64_t p = 0; p < homs; ++p) {
    std::int64_t mass = 0;
    for (std::int64_t c = 0; c < shape.n; ++c) mass = checked_add(mass, at(p, c));
    if (p == 0) reference = mass;
    else if (mass != reference) return false;
  }
  return true;
}

namespace {

std::int64_t evaluate(std::int64_t n, const std::vector<std::int64_t>& psi, const std::vector<std::int64_t>& x) {
  std::int64_t c = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) c = (c + mul_mod(psi[i], x[i], n)) % n;
  return c;
}

}  // namespace

RadonData radon_transform(std::int64_t n, int r, const std::vector<std::int64_t>& f) {
  const TorusShape shape{n, r};
  const std::int64_t count = shape.size();
  if (static_cast<std::int64_t>(f.size()) != count)
    throw Error(ErrorCode::InvalidInput, "function table must have n^r = " + std::to_string(count) + " entries");
  RadonData rf{shape, std::vector<std::int64_t>(static_cast<std::size_t>(count * n), 0)};
  std::vector<std::vector<std::int64_t>> points;
  points.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) points.push_back(shape.coords(i));
  for (std::int64_t p = 0; p < count; ++p) {
    const auto psi = shape.coords(p);
    for (std::int64_t i = 0; i < count; ++i) {
      auto& slot = rf.values[static_cast<std::size_t>(p * n + evaluate(n, psi, points[static_cast<std::size_t>(i)]))];
      slot = checked_add(slot, f[static_cast<std::size_t>(i)]);
    }
  }
  return rf;
}

std::vector<std::int64_t> determining_primes(std::int64_t n, const std::vector<std::int64_t>& psi) {
  std::vector<std::int64_t> out;
  for (std::int64_t p : prime_divisors(n)) {
    bool all = true;
    for (std::int64_t v : psi)
      if (mod_reduce(v, n) % p != 0) {
        all = false;
        break;
      }
    if (all) out.push_back(p);
  }
  return out;
}

RadonInversion radon_invert(const RadonData& rf) {
  const TorusShape& shape = rf.shape;
  const std::int64_t n = shape.n;
  const std::int64_t count = shape.size();
  if (static_cast<std::int64_t>(rf.values.size()) != count * n)
    throw Error(ErrorCode::InvalidInput, "Radon table has the wrong size");
  if (!rf.mass_conserved()) throw Error(ErrorCode::InconsistentRadonData, "fiber masses differ between homomorphisms");

  RadonInversion inv;
  inv.scale = euler_phi(n);
  for (int i = 0; i + 1 < shape.r; ++i) inv.scale = checked_mul(inv.scale, n);

  std::vector<std::int64_t> weight(static_cast<std::size_t>(count), 1);
  std::vector<std::vector<std::int64_t>> homs;
  homs.reserve(static_cast<std::size_t>(count));
  for (std::int64_t p = 0; p < count; ++p) {
    homs.push_back(shape.coords(p));
    for (std::int64_t prime : determining_primes(n, homs.back())) {
      std::int64_t pw = 1;
      for (int i = 0; i + 1 < shape.r; ++i) pw = checked_mul(pw, prime);
      weight[static_cast<std::size_t>(p)] = checked_mul(weight[static_cast<std::size_t>(p)], 1 - pw);
    }
  }

  inv.scaled.assign(static_cast<std::size_t>(count), 0);
  inv.f.assign(static_cast<std::size_t>(count), 0);
  for (std::int64_t i = 0; i < count; ++i) {
    const auto x = shape.coords(i);
    std::int64_t s = 0;
    for (std::int64_t p = 0; p < count; ++p) {
      const std::int64_t w = weight[static_cast<std::size_t>(p)];
      if (w == 0) continue;
      s = checked_add(s, checked_mul(w, rf.at(p, evaluate(n, homs[static_cast<std::size_t>(p)], x))));
    }
    inv.scaled[static_cast<std::size_t>(i)] = s;
    if (s % inv.scale != 0)
      throw Error(ErrorCode::NonIntegralInversion, "S(x) = " + std::to_string(s) + " at point " + std::to_string(i) +
                                                       " is not divisible by " + std::to_string(inv.scale));
    inv.f[static_cast<std::size_t>(i)] = s / inv.scale;
  }
  return inv;
}

}  // namespace fsrecon
