#include "eqsig/trading.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "eqsig/error.hpp"

namespace eqsig::backtest {

std::size_t test_window_size(std::size_t n_rows, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidFraction, "train fraction must be in (0, 1)");
  }
  return n_rows - static_cast<std::size_t>(std::floor(static_cast<double>(n_rows) * train_fraction));
}

std::vector<TickerBacktest> backtest_dataset(const transform::Dataset& dataset,
                                             const ml::TrainedModel& model,
                                             const BacktestConfig& cfg, double train_fraction) {
  cfg.validate();
  const auto close_col = dataset.feature_index(ingest::name_of(ingest::RawField::Close));
  if (!close_col) throw Error(ErrorCode::SchemaError, "PX_OFFICIAL_CLOSE");
  std::vector<std::size_t> model_cols;
  for (const auto& name : model.features) {
    auto idx = dataset.feature_index(name);
    if (!idx) throw Error(ErrorCode::SchemaError, name);
    model_cols.push_back(*idx);
  }

  std::map<std::string, std::vector<const transform::FeatureRow*>> by_ticker;
  for (const auto& row : dataset.rows) by_ticker[row.ticker].push_back(&row);

  std::vector<TickerBacktest> out;
  std::vector<double> inputs(model_cols.size());
  for (auto& [ticker, rows] : by_ticker) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto* a, const auto* b) { return a->date < b->date; });
    const std::size_t window = test_window_size(rows.size(), train_fraction);
    if (window == 0) continue;

    TickerBacktest tb;
    tb.ticker = ticker;
    for (std::size_t i = rows.size() - window; i < rows.size(); ++i) {
      const auto& row = *rows[i];
      for (std::size_t c = 0; c < model_cols.size(); ++c) inputs[c] = row.features[model_cols[c]];
      tb.bars.push_back({row.date, Money::from_dollars(row.features[*close_col])});
      tb.signals.push_back({row.date, model.predict(inputs)});
    }
    tb.report = run_backtest(tb.bars, tb.signals, cfg);
    out.push_back(std::move(tb));
  }
  return out;
}

}  // namespace eqsig::backtest
