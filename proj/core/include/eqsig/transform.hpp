#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eqsig/date.hpp"
#include "eqsig/ingest.hpp"
#include "eqsig/label.hpp"
#include "eqsig/matrix.hpp"

// Derived indicators, horizon labels, standardization, splitting and grouping.
namespace eqsig::transform {

inline constexpr std::size_t kNumDerivedFeatures = 5;
inline constexpr std::size_t kNumFeatures = ingest::kNumRawFields + kNumDerivedFeatures;
inline constexpr std::size_t kShortStdWindow = 5;
inline constexpr std::size_t kLongStdWindow = 10;

// 23 raw column symbols followed by buy_percent, hold_percent, sell_percent,
// std_5day, std_10day.
const std::vector<std::string>& canonical_feature_names();

struct LabelConfig {
  std::vector<int> horizons{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double up_threshold = 1.01;
  double down_threshold = 0.99;

  // Throws Error{InvalidConfig}.
  void validate() const;
};

struct SplitConfig {
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
};

struct FeatureRow {
  std::string ticker;
  Date date;
  std::vector<double> features;
  // One slot per configured horizon, in LabelConfig order.
  std::vector<std::optional<Label>> labels;

  friend bool operator==(const FeatureRow&, const FeatureRow&) = default;
};

// A labelled feature table plus the metadata needed to interpret it.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<int> horizons;
  std::vector<FeatureRow> rows;
  std::map<std::string, std::string> sectors;  // ticker -> sector

  std::optional<std::size_t> feature_index(std::string_view name) const;
  std::optional<std::size_t> horizon_slot(int horizon) const;

  // Column projection onto `names` (in the given order). Values are copied
  // unchanged. Throws Error{InvalidConfig} for an unknown name.
  Dataset project(std::span<const std::string> names) const;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

struct RecPercentages {
  double buy = 0.0;
  double hold = 0.0;
  double sell = 0.0;
};

// nullopt when the analyst total is zero.
std::optional<RecPercentages> derive_rec_percentages(const ingest::DailyRecord& record);

// Sample standard deviation over the trailing window ending at each day
// (inclusive). Days before the first full window are nullopt.
// Throws Error{WindowTooSmall} for window < 2.
std::vector<std::optional<double>> rolling_std(std::span<const double> closes, std::size_t window);

// labels[i][slot] for day i and the horizon in cfg.horizons[slot]; horizons
// count rows, not calendar days.
std::vector<std::vector<std::optional<Label>>> label_horizons(std::span<const double> closes,
                                                              const LabelConfig& cfg);
std::vector<std::vector<std::optional<Label>>> label_horizons(const ingest::TickerSeries& series,
                                                              const LabelConfig& cfg);

// Throws Error{EmptySeries}.
std::vector<FeatureRow> assemble_features(const ingest::TickerSeries& series,
                                          const LabelConfig& cfg);

// Runs assemble_features over every ticker (map order) and collects sectors.
Dataset build_dataset(const std::map<std::string, ingest::TickerSeries>& series,
                      const LabelConfig& cfg);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded Fisher-Yates permutation of [0, n); the first floor(n * fraction)
// indices train. Throws Error{InvalidFraction | EmptyDataset}.
SplitIndices shuffle_split(std::size_t n_rows, const SplitConfig& cfg);

// Throws Error{UnknownTicker}.
std::map<std::string, std::vector<FeatureRow>> group_by_sector(
    std::span<const FeatureRow> rows, const std::map<std::string, std::string>& sectors);

// Per-feature z-scoring with sample (n-1) standard deviation.
class Scaler {
 public:
  Scaler() = default;
  Scaler(std::vector<double> mean, std::vector<double> stddev);

  // Throws Error{TooFewRows} for fewer than two rows.
  static Scaler fit(const Matrix& rows);
  static Scaler fit(std::span<const FeatureRow> rows);

  std::size_t dimension() const { return mean_.size(); }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& stddev() const { return stddev_; }

  // Zero-std features map to 0. Throws Error{DimensionMismatch}.
  std::vector<double> apply(std::span<const double> row) const;
  Matrix apply(const Matrix& rows) const;
  std::vector<FeatureRow> apply(std::span<const FeatureRow> rows) const;

  friend bool operator==(const Scaler&, const Scaler&) = default;

 private:
  std::vector<double> mean_;
  std::vector<double> stddev_;
};

Matrix feature_matrix(std::span<const FeatureRow> rows);
std::vector<FeatureRow> select_rows(std::span<const FeatureRow> rows,
                                    std::span<const std::size_t> indices);

// Dataset CSV: date, ticker, sector, feature columns, label_day<h> columns
// (0/1/2, empty = missing).
void write_dataset_csv(const Dataset& dataset, std::ostream& out);
// Throws Error{EmptyInput | SchemaError | MalformedRow}.
Dataset read_dataset_csv(std::istream& in);

}  // namespace eqsig::transform
