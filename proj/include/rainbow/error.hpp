#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rainbow {

/// Machine-readable failure categories. Every failure raised by the library
/// carries one of these so callers (and the CLI) can map it to an exit path.
enum class ErrorCode {
  InvalidArgument,
  ParseError,
  NotPrime,
  UnitIdeal,
  NotEquigenerated,
  NotSquarefree,
  NotHomogeneous,
  GradingViolation,
  NotMinimal,
  NotLinear,
  NotSupported,
  NotChainMap,
  NonCoordinateKernel,
  AmbiguousEdges,
  NonTotalOrder,
  DegenerateOrder,
  EmptyTable,
  SetupViolated,
  SizeCap,
  LabelCollision,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::UnitIdeal: return "UnitIdeal";
    case ErrorCode::NotEquigenerated: return "NotEquigenerated";
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::GradingViolation: return "GradingViolation";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::NotChainMap: return "NotChainMap";
    case ErrorCode::NonCoordinateKernel: return "NonCoordinateKernel";
    case ErrorCode::AmbiguousEdges: return "AmbiguousEdges";
    case ErrorCode::NonTotalOrder: return "NonTotalOrder";
    case ErrorCode::DegenerateOrder: return "DegenerateOrder";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::SetupViolated: return "SetupViolated";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::LabelCollision: return "LabelCollision";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rainbow
