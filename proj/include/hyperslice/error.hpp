#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperslice {

enum class ErrorCode {
  AlgebraMismatch,
  DivisionByZero,
  NotUnitImaginary,
  ArityMismatch,
  AxisOutOfRange,
  NotInSliceCone,
  NotIntrinsic,
  DegenerateUnits,
  RealPoint,
  NonIntrinsicRestriction,
  PointTooCloseToBoundary,
  SliceMismatch,
  InvalidDomain,
  InvalidQuadrature,
  MissingDerivative,
  HartogsRequiresSeveralVariables,
  ParseError,
  InvalidConfig,
  Io,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AlgebraMismatch: return "algebra-mismatch";
    case ErrorCode::DivisionByZero: return "division-by-zero";
    case ErrorCode::NotUnitImaginary: return "not-unit-imaginary";
    case ErrorCode::ArityMismatch: return "arity-mismatch";
    case ErrorCode::AxisOutOfRange: return "axis-out-of-range";
    case ErrorCode::NotInSliceCone: return "not-in-slice-cone";
    case ErrorCode::NotIntrinsic: return "not-intrinsic";
    case ErrorCode::DegenerateUnits: return "degenerate-units";
    case ErrorCode::RealPoint: return "real-point";
    case ErrorCode::NonIntrinsicRestriction: return "non-intrinsic-restriction";
    case ErrorCode::PointTooCloseToBoundary: return "point-too-close-to-boundary";
    case ErrorCode::SliceMismatch: return "slice-mismatch";
    case ErrorCode::InvalidDomain: return "invalid-domain";
    case ErrorCode::InvalidQuadrature: return "invalid-quadrature";
    case ErrorCode::MissingDerivative: return "missing-derivative";
    case ErrorCode::HartogsRequiresSeveralVariables: return "hartogs-requires-several-variables";
    case ErrorCode::ParseError: return "parse-error";
    case ErrorCode::InvalidConfig: return "invalid-config";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperslice
