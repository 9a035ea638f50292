#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fsrecon {

enum class ErrorCode {
  EvenTorsion,
  GroupMismatch,
  InfiniteGroup,
  GroupTooLarge,
  BadModulus,
  BadHomomorphism,
  InfiniteKernel,
  SizeCapExceeded,
  SupportNotUnits,
  NotDivisible,
  NotInV,
  MoveNotApplicable,
  ReplayDiverged,
  ShiftMismatch,
  InternalInconsistency,
  ModulusMismatch,
  NonIntegralInversion,
  InconsistentRadonData,
  Overflow,
  InvalidInput,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Error raised while replaying a certificate; carries the offending step index.
class StepError : public Error {
 public:
  StepError(ErrorCode code, std::size_t step, const std::string& what)
      : Error(code, "step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace fsrecon
