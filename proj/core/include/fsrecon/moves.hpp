#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fsrecon/error.hpp"
#include "fsrecon/fs.hpp"
#include "fsrecon/group.hpp"
#include "fsrecon/int_function.hpp"
#include "fsrecon/vmodule.hpp"

namespace fsrecon {

/// g ~> -g
struct SignFlip {
  GroupElement g;
  friend bool operator==(const SignFlip&, const SignFlip&) = default;
};

/// iota(alpha U_n) ~> iota(beta U_n)
struct CosetSwap {
  std::int64_t n = 3;
  Embedding iota;
  std::int64_t alpha = 1;
  std::int64_t beta = 1;
  friend bool operator==(const CosetSwap&, const CosetSwap&) = default;
};

using Move = std::variant<SignFlip, CosetSwap>;

/// A move with its predicted shift s, oriented so that FS(before) = FS(after) + s.
struct MoveStep {
  Move move;
  GroupElement predicted_shift;
  friend bool operator==(const MoveStep&, const MoveStep&) = default;
};

struct MoveCertificate {
  std::vector<MoveStep> steps;
  GroupElement total_shift;  // sum of predicted shifts; FS(A) = FS(B) + total_shift
  friend bool operator==(const MoveCertificate&, const MoveCertificate&) = default;
};

/// Raised by apply_move; names the element that is missing from the multiset.
class MoveNotApplicableError : public Error {
 public:
  MoveNotApplicableError(GroupElement missing, const std::string& what)
      : Error(ErrorCode::MoveNotApplicable, what), missing_(std::move(missing)) {}
  const GroupElement& missing() const noexcept { return missing_; }

 private:
  GroupElement missing_;
};

/// Raised by synthesize_moves when mu_A - mu_B is not in V(G).
class NotInVError : public Error {
 public:
  explicit NotInVError(VMembershipReport report)
      : Error(ErrorCode::NotInV, "mu_A - mu_B is not in V(G)"), report_(std::move(report)) {}
  const VMembershipReport& report() const noexcept { return report_; }

 private:
  VMembershipReport report_;
};

/// The element set iota(c U_n) for a unit c.
std::vector<GroupElement> coset_image(const GroupSpec& group, const CosetSwap& swap, std::int64_t c);

/// The s with FS(E) = FS(apply_move(E, m)) + s: g for a sign flip of g; for a coset
/// swap, 0 when 2^k = 1 (mod n) and iota(beta - alpha) when 2^k = -1 (mod n).
GroupElement move_shift(const GroupSpec& group, const Move& m);

MoveStep make_step(const GroupSpec& group, Move m);

/// Replaces g by -g, or iota(alpha U_n) by iota(beta U_n). Throws
/// MoveNotApplicableError when the source elements are not all present.
IntFunction apply_move(const IntFunction& e, const Move& m);

/// A certificate whose replay turns A into B. Throws NotInVError if mu_A - mu_B is not in V(G).
MoveCertificate synthesize_moves(const IntFunction& a, const IntFunction& b);

struct CertificateReport {
  bool ok = false;
  GroupElement recomputed_total_shift;
  std::size_t fs_checked_steps = 0;  // steps whose shift was confirmed by recomputing FS
  bool fs_replay_skipped = false;    // some step exceeded the replay cap
};

inline constexpr std::int64_t kDefaultReplayCap = 20;

/// Replays the certificate from A. Throws StepError with ReplayDiverged when a
/// move does not apply or the end state differs from B, and with ShiftMismatch
/// when a step's (or the total) shift is wrong.
CertificateReport verify_certificate(const IntFunction& a, const IntFunction& b, const MoveCertificate& cert,
                                     std::int64_t replay_cap = kDefaultReplayCap);

struct EquivalenceReport {
  std::optional<std::vector<GroupElement>> cond_i;  // shifts from FS; nullopt when over the size cap
  VMembershipReport cond_ii;
  GroupElement weighted_difference;  // sum_g mu(g) g
  std::optional<MoveCertificate> cond_iii;
  bool shift_equivalent = false;
  std::optional<GroupElement> shift;
  bool no_shift_equal = false;  // FS(A) = FS(B)
  bool consistent = true;
};

/// Evaluates the three characterizations independently and cross-checks them.
/// Throws InternalInconsistency if they disagree.
EquivalenceReport decide_equivalence(const IntFunction& a, const IntFunction& b,
                                     std::int64_t size_cap = kDefaultSizeCap);

}  // namespace fsrecon
