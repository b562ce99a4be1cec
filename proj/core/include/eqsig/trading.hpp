#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "eqsig/backtest.hpp"
#include "eqsig/ml/model.hpp"
#include "eqsig/transform.hpp"

namespace eqsig::backtest {

struct TickerBacktest {
  std::string ticker;
  std::vector<Bar> bars;
  std::vector<DatedSignal> signals;
  BacktestReport report;
};

// Number of trailing rows in a chronological window: n - floor(n * train_fraction).
std::size_t test_window_size(std::size_t n_rows, double train_fraction);

// For each ticker (in name order) replays the last share of its rows by date
// through `model` and the backtester. Closes come from the dataset's
// PX_OFFICIAL_CLOSE column; model inputs are looked up by name, so the
// dataset may carry more features than the model uses.
// Throws Error{SchemaError | InvalidFraction | ...}.
std::vector<TickerBacktest> backtest_dataset(const transform::Dataset& dataset,
                                             const ml::TrainedModel& model,
                                             const BacktestConfig& cfg, double train_fraction);

}  // namespace eqsig::backtest
