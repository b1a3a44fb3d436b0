#include "qleb/error.hpp"

namespace qleb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NotHermitianWithinTol: return "NotHermitianWithinTol";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::SingularInput: return "SingularInput";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ZeroRho: return "ZeroRho";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::MutuallySingular: return "MutuallySingular";
    case ErrorCode::NotAbsolutelyContinuous: return "NotAbsolutelyContinuous";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DerivativeLeavesSupport: return "DerivativeLeavesSupport";
    case ErrorCode::NumericalDerivativeUnstable: return "NumericalDerivativeUnstable";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NotCentered: return "NotCentered";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::InvalidRanks: return "InvalidRanks";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace qleb
