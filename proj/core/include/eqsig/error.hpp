#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqsig {

// Every failure the library reports carries one of these codes. The CLI maps
// the category of a code onto its process exit status.
enum class ErrorCode {
  // ingest
  EmptyInput,
  SchemaError,
  MalformedRow,
  AllRowsDropped,
  DuplicateKey,
  SectorConflict,
  // transform
  WindowTooSmall,
  EmptySeries,
  InvalidFraction,
  EmptyDataset,
  UnknownTicker,
  TooFewRows,
  DimensionMismatch,
  InvalidConfig,
  // classifiers
  EmptyNode,
  EmptyTraining,
  KTooLarge,
  BadModel,
  // evaluation
  LengthMismatch,
  Empty,
  NoEvaluableHorizon,
  // pca
  NotSymmetric,
  NoConvergence,
  ZeroTotalVariance,
  NegativeVariance,
  // backtest
  Misaligned,
  NonPositiveInitialPrice,
  // cli / io
  UnknownCommand,
  BadFlag,
  MissingRequired,
  IoError,
};

enum class ErrorCategory { Usage, Data, Numeric };

std::string_view to_string(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  // The caller-supplied part of the message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace eqsig
