#include "eqsig/error.hpp"

namespace eqsig {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::AllRowsDropped: return "AllRowsDropped";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::SectorConflict: return "SectorConflict";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::InvalidFraction: return "InvalidFraction";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::UnknownTicker: return "UnknownTicker";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyNode: return "EmptyNode";
    case ErrorCode::EmptyTraining: return "EmptyTraining";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::BadModel: return "BadModel";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::NoEvaluableHorizon: return "NoEvaluableHorizon";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroTotalVariance: return "ZeroTotalVariance";
    case ErrorCode::NegativeVariance: return "NegativeVariance";
    case ErrorCode::Misaligned: return "Misaligned";
    case ErrorCode::NonPositiveInitialPrice: return "NonPositiveInitialPrice";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::BadFlag: return "BadFlag";
    case ErrorCode::MissingRequired: return "MissingRequired";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownCommand:
    case ErrorCode::BadFlag:
    case ErrorCode::MissingRequired:
    case ErrorCode::InvalidConfig:
      return ErrorCategory::Usage;
    case ErrorCode::NoConvergence:
    case ErrorCode::NotSymmetric:
    case ErrorCode::ZeroTotalVariance:
    case ErrorCode::NegativeVariance:
      return ErrorCategory::Numeric;
    default:
      return ErrorCategory::Data;
  }
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code),
      detail_(detail) {}

}  // namespace eqsig
