#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gammalab {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  NotPSD,
  NotCommuting,
  TriangularizationFailed,
  RootFindingFailed,
  GridTooLarge,
  NotContraction,
  DefectSolveIllConditioned,
  NotReducing,
  TruncationTooShallow,
  SplitResidualLarge,
  NoConvergence,
  NotCNU,
  CommutationViolated,
  QInverseIllConditioned,
  HypothesisViolated,
  NotInner,
  NotToeplitz,
  SchemaError,
};

std::string_view to_string(ErrorCode code) noexcept;

class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gammalab
