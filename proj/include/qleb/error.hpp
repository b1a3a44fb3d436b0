#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qleb {

enum class ErrorCode {
  NonSquare,
  NotHermitianWithinTol,
  ConvergenceFailure,
  NotPositive,
  SingularInput,
  Overflow,
  ZeroRho,
  ZeroOperator,
  MutuallySingular,
  NotAbsolutelyContinuous,
  DimensionMismatch,
  DerivativeLeavesSupport,
  NumericalDerivativeUnstable,
  DimensionTooLarge,
  NotCentered,
  SupportViolation,
  InvalidRanks,
  NotUnit,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported as an Error carrying a code, so
// callers (the CLI in particular) can map failures to exit codes without
// parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qleb
