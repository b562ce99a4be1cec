#include "eqsig/transform.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "eqsig/csv.hpp"
#include "eqsig/error.hpp"
#include "eqsig/rng.hpp"

namespace eqsig::transform {

using ingest::DailyRecord;
using ingest::RawField;
using ingest::TickerSeries;

const std::vector<std::string>& canonical_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (auto name : ingest::raw_field_names()) out.emplace_back(name);
    for (const char* derived :
         {"buy_percent", "hold_percent", "sell_percent", "std_5day", "std_10day"}) {
      out.emplace_back(derived);
    }
    return out;
  }();
  return names;
}

void LabelConfig::validate() const {
  if (!(down_threshold < 1.0 && 1.0 < up_threshold)) {
    throw Error(ErrorCode::InvalidConfig, "label thresholds must satisfy down < 1 < up");
  }
  if (horizons.empty()) throw Error(ErrorCode::InvalidConfig, "no label horizons");
  std::set<int> seen;
  for (int h : horizons) {
    if (h <= 0) throw Error(ErrorCode::InvalidConfig, "horizon must be positive");
    if (!seen.insert(h).second) throw Error(ErrorCode::InvalidConfig, "duplicate horizon");
  }
}

std::optional<std::size_t> Dataset::feature_index(std::string_view name) const {
  auto it = std::find(feature_names.begin(), feature_names.end(), name);
  if (it == feature_names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - feature_names.begin());
}

std::optional<std::size_t> Dataset::horizon_slot(int horizon) const {
  auto it = std::find(horizons.begin(), horizons.end(), horizon);
  if (it == horizons.end()) return std::nullopt;
  return static_cast<std::size_t>(it - horizons.begin());
}

Dataset Dataset::project(std::span<const std::string> names) const {
  std::vector<std::size_t> columns;
  columns.reserve(names.size());
  for (const auto& name : names) {
    auto idx = feature_index(name);
    if (!idx) throw Error(ErrorCode::InvalidConfig, "unknown feature '" + name + "'");
    columns.push_back(*idx);
  }
  Dataset out;
  out.feature_names.assign(names.begin(), names.end());
  out.horizons = horizons;
  out.sectors = sectors;
  out.rows.reserve(rows.size());
  for (const FeatureRow& row : rows) {
    FeatureRow projected{row.ticker, row.date, {}, row.labels};
    projected.features.reserve(columns.size());
    for (std::size_t c : columns) projected.features.push_back(row.features[c]);
    out.rows.push_back(std::move(projected));
  }
  return out;
}

std::optional<RecPercentages> derive_rec_percentages(const DailyRecord& record) {
  const double total = record[RawField::TotAnalystRec];
  if (total == 0.0) return std::nullopt;
  auto ratio = [&](RawField f) { return std::clamp(record[f] / total, 0.0, 1.0); };
  return RecPercentages{ratio(RawField::TotBuyRec), ratio(RawField::TotHoldRec),
                        ratio(RawField::TotSellRec)};
}

std::vector<std::optional<double>> rolling_std(std::span<const double> closes, std::size_t window) {
  if (window < 2) throw Error(ErrorCode::WindowTooSmall, "window " + std::to_string(window));
  std::vector<std::optional<double>> out(closes.size());
  for (std::size_t i = window - 1; i < closes.size(); ++i) {
    const auto slice = closes.subspan(i + 1 - window, window);
    const double mean = std::accumulate(slice.begin(), slice.end(), 0.0) / window;
    double ss = 0.0;
    for (double x : slice) ss += (x - mean) * (x - mean);
    out[i] = std::sqrt(ss / static_cast<double>(window - 1));
  }
  return out;
}

std::vector<std::vector<std::optional<Label>>> label_horizons(std::span<const double> closes,
                                                              const LabelConfig& cfg) {
  std::vector<std::vector<std::optional<Label>>> out(closes.size());
  for (std::size_t i = 0; i < closes.size(); ++i) {
    auto& slots = out[i];
    slots.resize(cfg.horizons.size());
    for (std::size_t s = 0; s < cfg.horizons.size(); ++s) {
      const std::size_t target = i + static_cast<std::size_t>(cfg.horizons[s]);
      if (target >= closes.size()) continue;
      const double now = closes[i];
      const double later = closes[target];
      if (later >= cfg.up_threshold * now) {
        slots[s] = Label::Buy;
      } else if (later <= cfg.down_threshold * now) {
        slots[s] = Label::Sell;
      } else {
        slots[s] = Label::Hold;
      }
    }
  }
  return out;
}

namespace {

std::vector<double> closes_of(const TickerSeries& series) {
  std::vector<double> closes;
  closes.reserve(series.records.size());
  for (const auto& rec : series.records) closes.push_back(rec.close());
  return closes;
}

}  // namespace

std::vector<std::vector<std::optional<Label>>> label_horizons(const TickerSeries& series,
                                                              const LabelConfig& cfg) {
  const auto closes = closes_of(series);
  return label_horizons(std::span<const double>(closes), cfg);
}

std::vector<FeatureRow> assemble_features(const TickerSeries& series, const LabelConfig& cfg) {
  if (series.records.empty()) throw Error(ErrorCode::EmptySeries, series.ticker);
  cfg.validate();

  const auto closes = closes_of(series);
  const auto std_short = rolling_std(closes, kShortStdWindow);
  const auto std_long = rolling_std(closes, kLongStdWindow);
  const auto labels = label_horizons(std::span<const double>(closes), cfg);

  std::vector<FeatureRow> rows;
  for (std::size_t i = 0; i < series.records.size(); ++i) {
    const DailyRecord& rec = series.records[i];
    if (!std_short[i] || !std_long[i]) continue;
    const auto pct = derive_rec_percentages(rec);
    if (!pct) continue;
    if (std::none_of(labels[i].begin(), labels[i].end(), [](const auto& l) { return l.has_value(); }))
      continue;

    FeatureRow row;
    row.ticker = rec.ticker;
    row.date = rec.date;
    row.features.reserve(kNumFeatures);
    row.features.assign(rec.fields.begin(), rec.fields.end());
    row.features.push_back(pct->buy);
    row.features.push_back(pct->hold);
    row.features.push_back(pct->sell);
    row.features.push_back(*std_short[i]);
    row.features.push_back(*std_long[i]);
    row.labels = labels[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

Dataset build_dataset(const std::map<std::string, TickerSeries>& series, const LabelConfig& cfg) {
  Dataset ds;
  ds.feature_names = canonical_feature_names();
  ds.horizons = cfg.horizons;
  for (const auto& [ticker, s] : series) {
    ds.sectors[ticker] = s.sector;
    auto rows = assemble_features(s, cfg);
    std::move(rows.begin(), rows.end(), std::back_inserter(ds.rows));
  }
  return ds;
}

SplitIndices shuffle_split(std::size_t n_rows, const SplitConfig& cfg) {
  if (!(cfg.train_fraction > 0.0 && cfg.train_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidFraction, csv::format_double(cfg.train_fraction));
  }
  if (n_rows == 0) throw Error(ErrorCode::EmptyDataset, "no rows to split");

  std::vector<std::size_t> perm(n_rows);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(cfg.seed);
  rng.shuffle(std::span<std::size_t>(perm));

  const auto n_train =
      static_cast<std::size_t>(std::floor(static_cast<double>(n_rows) * cfg.train_fraction));
  SplitIndices out;
  out.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  return out;
}

std::map<std::string, std::vector<FeatureRow>> group_by_sector(
    std::span<const FeatureRow> rows, const std::map<std::string, std::string>& sectors) {
  std::map<std::string, std::vector<FeatureRow>> groups;
  for (const FeatureRow& row : rows) {
    auto it = sectors.find(row.ticker);
    if (it == sectors.end()) throw Error(ErrorCode::UnknownTicker, row.ticker);
    groups[it->second].push_back(row);
  }
  return groups;
}

Scaler::Scaler(std::vector<double> mean, std::vector<double> stddev)
    : mean_(std::move(mean)), stddev_(std::move(stddev)) {
  if (mean_.size() != stddev_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "scaler mean/std sizes differ");
  }
}

Scaler Scaler::fit(const Matrix& rows) {
  if (rows.rows() < 2) throw Error(ErrorCode::TooFewRows, "scaler needs at least 2 rows");
  const std::size_t n = rows.rows(), d = rows.cols();
  std::vector<double> mean(d, 0.0), stddev(d, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) mean[c] += rows(r, c);
  for (double& m : mean) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const double dev = rows(r, c) - mean[c];
      stddev[c] += dev * dev;
    }
  for (std::size_t c = 0; c < d; ++c) {
    // Columns whose values are all identical are constant regardless of
    // rounding in the mean.
    bool constant = true;
    for (std::size_t r = 1; r < n && constant; ++r) constant = rows(r, c) == rows(0, c);
    stddev[c] = constant ? 0.0 : std::sqrt(stddev[c] / static_cast<double>(n - 1));
  }
  return Scaler(std::move(mean), std::move(stddev));
}

Scaler Scaler::fit(std::span<const FeatureRow> rows) { return fit(feature_matrix(rows)); }

std::vector<double> Scaler::apply(std::span<const double> row) const {
  if (row.size() != mean_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "row has " + std::to_string(row.size()) +
                                                  " features, scaler expects " +
                                                  std::to_string(mean_.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t c = 0; c < row.size(); ++c)
    out[c] = stddev_[c] == 0.0 ? 0.0 : (row[c] - mean_[c]) / stddev_[c];
  return out;
}

Matrix Scaler::apply(const Matrix& rows) const {
  Matrix out;
  for (std::size_t r = 0; r < rows.rows(); ++r) out.append_row(apply(rows.row(r)));
  if (rows.rows() == 0) out = Matrix(0, rows.cols());
  return out;
}

std::vector<FeatureRow> Scaler::apply(std::span<const FeatureRow> rows) const {
  std::vector<FeatureRow> out(rows.begin(), rows.end());
  for (FeatureRow& row : out) row.features = apply(row.features);
  return out;
}

Matrix feature_matrix(std::span<const FeatureRow> rows) {
  if (rows.empty()) return Matrix();
  Matrix m(rows.size(), rows.front().features.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].features.size() != m.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "rows have differing feature counts");
    }
    std::copy(rows[r].features.begin(), rows[r].features.end(), m.row(r).begin());
  }
  return m;
}

std::vector<FeatureRow> select_rows(std::span<const FeatureRow> rows,
                                    std::span<const std::size_t> indices) {
  std::vector<FeatureRow> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(rows[i]);
  return out;
}

void write_dataset_csv(const Dataset& dataset, std::ostream& out) {
  std::vector<std::string> cells{"date", "ticker", "sector"};
  cells.insert(cells.end(), dataset.feature_names.begin(), dataset.feature_names.end());
  for (int h : dataset.horizons) cells.push_back("label_day" + std::to_string(h));
  out << csv::join_line(cells) << '\n';

  for (const FeatureRow& row : dataset.rows) {
    cells.clear();
    cells.push_back(format_iso_date(row.date));
    cells.push_back(row.ticker);
    auto sector = dataset.sectors.find(row.ticker);
    cells.push_back(sector == dataset.sectors.end() ? std::string() : sector->second);
    for (double v : row.features) cells.push_back(csv::format_double(v));
    for (const auto& label : row.labels)
      cells.push_back(label ? std::to_string(index_of(*label)) : std::string());
    out << csv::join_line(cells) << '\n';
  }
}

namespace {

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "no header row");
  ++line_no;
  const auto header = csv::split_line(line);
  if (header.size() < 3 || header[0] != "date" || header[1] != "ticker" || header[2] != "sector") {
    throw Error(ErrorCode::SchemaError, "dataset header must start with date,ticker,sector");
  }

  Dataset ds;
  std::size_t col = 3;
  for (; col < header.size() && !header[col].starts_with("label_day"); ++col)
    ds.feature_names.push_back(header[col]);
  for (; col < header.size(); ++col) {
    const std::string_view suffix = std::string_view(header[col]).substr(9);
    int h = 0;
    auto [ptr, ec] = std::from_chars(suffix.data(), suffix.data() + suffix.size(), h);
    if (!header[col].starts_with("label_day") || ec != std::errc{} ||
        ptr != suffix.data() + suffix.size() || h <= 0) {
      throw Error(ErrorCode::SchemaError, header[col]);
    }
    ds.horizons.push_back(h);
  }
  if (ds.feature_names.empty()) throw Error(ErrorCode::SchemaError, "no feature columns");
  if (ds.horizons.empty()) throw Error(ErrorCode::SchemaError, "label_day1");

  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty() || line == "\r") continue;
    const auto cells = csv::split_line(line);
    if (cells.size() != header.size()) malformed(line_no, "wrong column count");
    FeatureRow row;
    auto date = parse_iso_date(cells[0]);
    if (!date) malformed(line_no, "bad date '" + cells[0] + "'");
    row.date = *date;
    row.ticker = cells[1];
    auto [it, inserted] = ds.sectors.try_emplace(row.ticker, cells[2]);
    if (!inserted && it->second != cells[2]) {
      throw Error(ErrorCode::SectorConflict, row.ticker);
    }
    row.features.reserve(ds.feature_names.size());
    for (std::size_t f = 0; f < ds.feature_names.size(); ++f) {
      auto v = csv::parse_double(cells[3 + f]);
      if (!v) malformed(line_no, "bad value in " + ds.feature_names[f]);
      row.features.push_back(*v);
    }
    for (std::size_t s = 0; s < ds.horizons.size(); ++s) {
      const std::string& cell = cells[3 + ds.feature_names.size() + s];
      if (cell.empty()) {
        row.labels.emplace_back();
        continue;
      }
      std::optional<Label> label;
      if (cell.size() == 1) label = label_from_int(cell[0] - '0');
      if (!label) malformed(line_no, "bad label '" + cell + "'");
      row.labels.push_back(label);
    }
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

}  // namespace eqsig::transform
