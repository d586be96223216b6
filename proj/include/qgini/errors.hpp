#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgini {

enum class ErrorKind {
  EvenDimension,
  DimensionTooSmall,
  DimensionMismatch,
  DegenerateFiducial,
  NotNormalized,
  NotHermitian,
  TraceNotOne,
  NotPositive,
  NotSquare,
  NotUnitary,
  InvalidDistribution,
  WeightOutOfRange,
  BudgetTooSmall,
  BadStateFile,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EvenDimension: return "EvenDimension";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegenerateFiducial: return "DegenerateFiducial";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorKind::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorKind::BadStateFile: return "BadStateFile";
  }
  return "Unknown";
}

/// Every validation failure in the library is reported as this exception.
/// The message names the violated invariant and, where one exists, the
/// size of the violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qgini
