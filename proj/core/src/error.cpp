#include "gammalab/error.hpp"

namespace gammalab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::TriangularizationFailed: return "TriangularizationFailed";
    case ErrorCode::RootFindingFailed: return "RootFindingFailed";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
    case ErrorCode::NotContraction: return "NotContraction";
    case ErrorCode::DefectSolveIllConditioned: return "DefectSolveIllConditioned";
    case ErrorCode::NotReducing: return "NotReducing";
    case ErrorCode::TruncationTooShallow: return "TruncationTooShallow";
    case ErrorCode::SplitResidualLarge: return "SplitResidualLarge";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotCNU: return "NotCNU";
    case ErrorCode::CommutationViolated: return "CommutationViolated";
    case ErrorCode::QInverseIllConditioned: return "QInverseIllConditioned";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::NotInner: return "NotInner";
    case ErrorCode::NotToeplitz: return "NotToeplitz";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

LabError::LabError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace gammalab
