#pragma once

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "eqsig/ingest.hpp"
#include "eqsig/label.hpp"
#include "eqsig/matrix.hpp"
#include "eqsig/rng.hpp"

namespace eqsig::testing {

inline Date day(int y, unsigned m, unsigned d) {
  return std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d};
}

// Consecutive calendar days from 2020-01-01.
inline Date nth_day(int n) {
  using namespace std::chrono;
  return year_month_day{sys_days{year{2020} / January / 1} + days{n}};
}

// A complete record with every field set to something valid.
inline ingest::DailyRecord record(const std::string& ticker, Date date, double close,
                                  const std::string& sector = "Tech") {
  ingest::DailyRecord rec;
  rec.date = date;
  rec.ticker = ticker;
  rec.sector = sector;
  for (std::size_t f = 0; f < ingest::kNumRawFields; ++f) rec.fields[f] = 1.0 + static_cast<double>(f);
  rec.fields[ingest::index_of(ingest::RawField::Close)] = close;
  rec.fields[ingest::index_of(ingest::RawField::TotAnalystRec)] = 10;
  rec.fields[ingest::index_of(ingest::RawField::TotBuyRec)] = 5;
  rec.fields[ingest::index_of(ingest::RawField::TotSellRec)] = 2;
  rec.fields[ingest::index_of(ingest::RawField::TotHoldRec)] = 3;
  return rec;
}

inline ingest::TickerSeries series_from_closes(const std::string& ticker,
                                               const std::vector<double>& closes,
                                               const std::string& sector = "Tech") {
  ingest::TickerSeries s{ticker, sector, {}};
  for (std::size_t i = 0; i < closes.size(); ++i)
    s.records.push_back(record(ticker, nth_day(static_cast<int>(i)), closes[i], sector));
  return s;
}

inline double normal(Rng& rng) {
  const double u = 1.0 - rng.uniform01();
  const double v = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

inline Label random_label(Rng& rng) { return static_cast<Label>(rng.uniform_index(3)); }

inline std::vector<double> random_walk(Rng& rng, std::size_t n, double start = 100.0) {
  std::vector<double> closes{start};
  while (closes.size() < n) closes.push_back(closes.back() * std::exp(0.015 * normal(rng)));
  return closes;
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = normal(rng);
  return m;
}

}  // namespace eqsig::testing
