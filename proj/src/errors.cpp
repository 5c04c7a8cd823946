#include "curveflow/errors.hpp"

namespace curveflow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::DegenerateCurve: return "DegenerateCurve";
    case ErrorKind::OrderTooHigh: return "OrderTooHigh";
    case ErrorKind::NonMonotoneArcLength: return "NonMonotoneArcLength";
    case ErrorKind::NotArcLength: return "NotArcLength";
    case ErrorKind::InvalidPreset: return "InvalidPreset";
    case ErrorKind::AmbiguousRotation: return "AmbiguousRotation";
    case ErrorKind::BadIndices: return "BadIndices";
    case ErrorKind::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorKind::BadInitialData: return "BadInitialData";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::CurvatureBlowup: return "CurvatureBlowup";
    case ErrorKind::SelfIntersection: return "SelfIntersection";
    case ErrorKind::TooFewRecords: return "TooFewRecords";
    case ErrorKind::MissingSnapshots: return "MissingSnapshots";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::InsufficientPositiveData: return "InsufficientPositiveData";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::PerturbationTooLarge: return "PerturbationTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BadFile: return "BadFile";
    case ErrorKind::MissingTrace: return "MissingTrace";
  }
  return "Unknown";
}

}  // namespace curveflow
