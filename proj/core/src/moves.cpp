#include "fsrecon/moves.hpp"

#include <map>
#include <numeric>
#include <string>

#include "fsrecon/numtheory.hpp"

namespace fsrecon {

namespace {

void validate_swap(const GroupSpec& group, const CosetSwap& s) {
  if (s.n < 3 || s.n % 2 == 0) throw Error(ErrorCode::BadModulus, "coset swap modulus must be odd and >= 3");
  if (s.iota.modulus != s.n || element_order(group, s.iota.target_of_one) != s.n)
    throw Error(ErrorCode::InvalidInput, "coset swap embedding does not have exact order n");
  if (std::gcd(mod_reduce(s.alpha, s.n), s.n) != 1 || std::gcd(mod_reduce(s.beta, s.n), s.n) != 1)
    throw Error(ErrorCode::InvalidInput, "coset swap alpha and beta must be units mod n");
}

}  // namespace

std::vector<GroupElement> coset_image(const GroupSpec& group, const CosetSwap& swap, std::int64_t c) {
  validate_swap(group, swap);
  std::vector<GroupElement> out;
  for (std::int64_t e : u_set(swap.n).elements) out.push_back(swap.iota.image(group, mul_mod(c, e, swap.n)));
  return out;
}

GroupElement move_shift(const GroupSpec& group, const Move& m) {
  if (const auto* f = std::get_if<SignFlip>(&m)) {
    group.require(f->g);
    return f->g;
  }
  const auto& s = std::get<CosetSwap>(m);
  validate_swap(group, s);
  if (u_set(s.n).sign == 1) return group.zero();
  return s.iota.image(group, s.beta - s.alpha);
}

MoveStep make_step(const GroupSpec& group, Move m) {
  GroupElement s = move_shift(group, m);
  return MoveStep{std::move(m), std::move(s)};
}

IntFunction apply_move(const IntFunction& e, const Move& m) {
  const GroupSpec& group = e.group();
  if (!e.is_multiset()) throw Error(ErrorCode::InvalidInput, "moves act on multisets");
  IntFunction out = e;
  if (const auto* f = std::get_if<SignFlip>(&m)) {
    group.require(f->g);
    if (e(f->g) < 1) throw MoveNotApplicableError(f->g, "sign flip: element not in multiset");
    out.add(f->g, -1);
    out.add(group.neg(f->g), 1);
    return out;
  }
  const auto& s = std::get<CosetSwap>(m);
  const auto from = coset_image(group, s, s.alpha);
  for (const auto& g : from)
    if (e(g) < 1) throw MoveNotApplicableError(g, "coset swap: element of iota(alpha U_n) not in multiset");
  for (const auto& g : from) out.add(g, -1);
  for (const auto& g : coset_image(group, s, s.beta)) out.add(g, 1);
  return out;
}

MoveCertificate synthesize_moves(const IntFunction& a, const IntFunction& b) {
  if (!(a.group() == b.group())) throw Error(ErrorCode::GroupMismatch, "A and B live on different groups");
  if (!a.is_multiset() || !b.is_multiset()) throw Error(ErrorCode::InvalidInput, "A and B must be multisets");
  const GroupSpec& group = a.group();
  const IntFunction mu = a - b;
  VMembershipReport rep = v_check(mu);
  if (!rep.member) throw NotInVError(std::move(rep));

  MoveCertificate cert;
  cert.total_shift = group.zero();
  IntFunction cur = a;
  auto emit = [&](Move m) {
    MoveStep step = make_step(group, std::move(m));
    cur = apply_move(cur, step.move);
    cert.total_shift = group.add(cert.total_shift, step.predicted_shift);
    cert.steps.push_back(std::move(step));
  };

  // Infinite-order support: mu(g) = -mu(-g), flip the surplus side.
  std::map<std::pair<std::int64_t, GroupElement>, bool> pieces;
  for (const auto& [g, v] : mu.entries()) {
    if (group.is_torsion(g)) {
      pieces.emplace(std::make_pair(*element_order(group, g), canonical_generator(group, g)), true);
      continue;
    }
    for (std::int64_t i = 0; i < v; ++i) emit(SignFlip{g});
  }

  for (const auto& [key, unused] : pieces) {
    const auto& [n, h] = key;
    if (n == 1) continue;  // mu(0) = 0 for members
    const UnitCosets cosets = unit_coset_partition(n);
    IntFunction target = b;  // B after the flips we apply on B's side
    std::vector<GroupElement> b_side_flips;
    auto cur_mu = [&](const GroupElement& g) { return cur(g) - target(g); };

    // Move all of mu(x) + mu(-x) onto the half r_i U_n of each coset.
    std::vector<std::int64_t> t(cosets.representatives.size(), 0);
    for (std::size_t i = 0; i < cosets.halves.size(); ++i) {
      for (std::int64_t x : cosets.halves[i]) {
        const GroupElement gx = group.scale(h, x);
        const GroupElement gneg = group.neg(gx);
        const std::int64_t surplus = cur_mu(gneg);
        for (std::int64_t j = 0; j < surplus; ++j) emit(SignFlip{gneg});
        for (std::int64_t j = 0; j < -surplus; ++j) {
          target = apply_move(target, SignFlip{gneg});
          b_side_flips.push_back(gx);
        }
      }
      t[i] = cur_mu(group.scale(h, cosets.halves[i].front()));
      for (std::int64_t x : cosets.halves[i])
        if (cur_mu(group.scale(h, x)) != t[i])
          throw Error(ErrorCode::InternalInconsistency, "mu not constant on a U_n coset after normalization");
    }

    // Each swap lowers the l1 norm by 2 |U_n|.
    const Embedding iota{h, n};
    for (;;) {
      std::size_t pos = t.size();
      std::size_t neg = t.size();
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] > 0 && pos == t.size()) pos = i;
        if (t[i] < 0 && neg == t.size()) neg = i;
      }
      if (pos == t.size() || neg == t.size()) break;
      emit(CosetSwap{n, iota, cosets.representatives[pos], cosets.representatives[neg]});
      --t[pos];
      ++t[neg];
    }
    for (std::int64_t ti : t)
      if (ti != 0) throw Error(ErrorCode::InternalInconsistency, "coset constants do not sum to zero");

    // Undo B's flips as flips on our side.
    for (auto it = b_side_flips.rbegin(); it != b_side_flips.rend(); ++it) emit(SignFlip{*it});
  }

  if (!(cur == b)) throw Error(ErrorCode::InternalInconsistency, "synthesized moves do not reach B");
  return cert;
}

CertificateReport verify_certificate(const IntFunction& a, const IntFunction& b, const MoveCertificate& cert,
                                     std::int64_t replay_cap) {
  if (!(a.group() == b.group())) throw Error(ErrorCode::GroupMismatch, "A and B live on different groups");
  const GroupSpec& group = a.group();

  // Structural replay first, so a tampered move surfaces as a divergence.
  std::vector<IntFunction> states{a};
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    try {
      states.push_back(apply_move(states.back(), cert.steps[i].move));
    } catch (const Error& e) {
      throw StepError(ErrorCode::ReplayDiverged, i, e.what());
    }
  }
  if (!(states.back() == b)) throw StepError(ErrorCode::ReplayDiverged, cert.steps.size(), "final state is not B");

  CertificateReport rep;
  rep.recomputed_total_shift = group.zero();
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    const MoveStep& step = cert.steps[i];
    group.require(step.predicted_shift);
    if (states[i].total() <= replay_cap) {
      const FSMultiset before = fs_multiset(states[i], replay_cap);
      const FSMultiset after = fs_multiset(states[i + 1], replay_cap);
      if (!(before == shift(after, step.predicted_shift)))
        throw StepError(ErrorCode::ShiftMismatch, i, "FS(before) != FS(after) + predicted shift");
      ++rep.fs_checked_steps;
    } else {
      rep.fs_replay_skipped = true;
      if (!(move_shift(group, step.move) == step.predicted_shift))
        throw StepError(ErrorCode::ShiftMismatch, i, "predicted shift disagrees with the move's shift");
    }
    rep.recomputed_total_shift = group.add(rep.recomputed_total_shift, step.predicted_shift);
  }
  if (!(rep.recomputed_total_shift == cert.total_shift))
    throw StepError(ErrorCode::ShiftMismatch, cert.steps.size(), "total_shift is not the sum of step shifts");
  rep.ok = true;
  return rep;
}

EquivalenceReport decide_equivalence(const IntFunction& a, const IntFunction& b, std::int64_t size_cap) {
  if (!(a.group() == b.group())) throw Error(ErrorCode::GroupMismatch, "A and B live on different groups");
  const GroupSpec& group = a.group();
  EquivalenceReport rep;
  const IntFunction mu = a - b;

  if (a.total() <= size_cap && b.total() <= size_cap)
    rep.cond_i = find_shifts(fs_multiset(a, size_cap), fs_multiset(b, size_cap));

  rep.cond_ii = v_check(mu);
  rep.weighted_difference = multiset_sum(mu);

  if (rep.cond_ii.member) {
    MoveCertificate cert = synthesize_moves(a, b);
    verify_certificate(a, b, cert);
    rep.cond_iii = std::move(cert);
  }

  const bool ii = rep.cond_ii.member;
  const bool iii = rep.cond_iii.has_value();
  if (ii != iii) throw Error(ErrorCode::InternalInconsistency, "V-membership and move synthesis disagree");
  if (rep.cond_i) {
    const bool i = !rep.cond_i->empty();
    if (i != ii) throw Error(ErrorCode::InternalInconsistency, "FS shift test and V-membership disagree");
    if (i && (rep.cond_i->size() != 1 || !(rep.cond_i->front() == rep.cond_iii->total_shift)))
      throw Error(ErrorCode::InternalInconsistency, "certificate shift is not the FS shift");
  }
  rep.shift_equivalent = ii;
  if (iii) {
    rep.shift = rep.cond_iii->total_shift;
    rep.no_shift_equal = group.is_zero(*rep.shift);
    if (rep.no_shift_equal != group.is_zero(rep.weighted_difference))
      throw Error(ErrorCode::InternalInconsistency, "s = 0 disagrees with sum(A) = sum(B)");
  }
  return rep;
}

}  // namespace fsrecon
