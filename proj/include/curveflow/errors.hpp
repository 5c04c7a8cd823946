#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curveflow {

enum class ErrorKind {
  TooFewPoints,
  DegenerateCurve,
  OrderTooHigh,
  NonMonotoneArcLength,
  NotArcLength,
  InvalidPreset,
  AmbiguousRotation,
  BadIndices,
  EmptyEnsemble,
  BadInitialData,
  StepSizeUnderflow,
  CurvatureBlowup,
  SelfIntersection,
  TooFewRecords,
  MissingSnapshots,
  NotConverged,
  NotSimple,
  InsufficientPositiveData,
  BadOrder,
  EmptyInput,
  PerturbationTooLarge,
  InvalidArgument,
  BadFile,
  MissingTrace,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` identifies the failure.
class CurveflowError : public std::runtime_error {
 public:
  CurveflowError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw CurveflowError(kind, what);
}

}  // namespace curveflow
