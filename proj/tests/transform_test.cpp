#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "eqsig/error.hpp"
#include "eqsig/transform.hpp"
#include "support.hpp"

namespace eqsig::transform {
namespace {

using ingest::RawField;
using testing::record;
using testing::series_from_closes;

TEST(FeatureNames, TwentyEightInCanonicalOrder) {
  const auto& names = canonical_feature_names();
  ASSERT_EQ(names.size(), 28u);
  EXPECT_EQ(names.front(), "PX_OFFICIAL_CLOSE");
  EXPECT_EQ(names[22], "BEST_TARGET_PRICE");
  EXPECT_EQ(std::vector<std::string>(names.begin() + 23, names.end()),
            (std::vector<std::string>{"buy_percent", "hold_percent", "sell_percent", "std_5day",
                                      "std_10day"}));
}

ingest::DailyRecord with_recs(double total, double buy, double hold, double sell) {
  auto rec = record("A", testing::nth_day(0), 10);
  rec.fields[ingest::index_of(RawField::TotAnalystRec)] = total;
  rec.fields[ingest::index_of(RawField::TotBuyRec)] = buy;
  rec.fields[ingest::index_of(RawField::TotHoldRec)] = hold;
  rec.fields[ingest::index_of(RawField::TotSellRec)] = sell;
  return rec;
}

TEST(RecPercentages, Ratios) {
  const auto p = derive_rec_percentages(with_recs(10, 5, 3, 2));
  ASSERT_TRUE(p);
  EXPECT_DOUBLE_EQ(p->buy, 0.5);
  EXPECT_DOUBLE_EQ(p->hold, 0.3);
  EXPECT_DOUBLE_EQ(p->sell, 0.2);
  EXPECT_NEAR(p->buy + p->hold + p->sell, 1.0, 1e-9);
}

TEST(RecPercentages, ZeroTotalIsMissing) {
  EXPECT_FALSE(derive_rec_percentages(with_recs(0, 0, 0, 0)));
}

TEST(RecPercentages, AllBuy) {
  const auto p = derive_rec_percentages(with_recs(4, 4, 0, 0));
  EXPECT_EQ(p->buy, 1.0);
  EXPECT_EQ(p->hold, 0.0);
  EXPECT_EQ(p->sell, 0.0);
}

TEST(RecPercentages, StayInUnitIntervalWhenCountsExceedTotal) {
  const auto p = derive_rec_percentages(with_recs(3, 5, 1, 0));
  EXPECT_EQ(p->buy, 1.0);
}

TEST(RollingStd, HandValues) {
  const std::vector<double> closes{1, 2, 3, 4, 5};
  const auto s = rolling_std(closes, 5);
  for (int i = 0; i < 4; ++i) EXPECT_FALSE(s[i]);
  EXPECT_NEAR(*s[4], std::sqrt(2.5), 1e-12);
  EXPECT_EQ(*rolling_std(std::vector<double>{7, 7, 7, 7, 7}, 5)[4], 0.0);
  for (const auto& v : rolling_std(std::vector<double>{1, 2, 3, 4}, 5)) EXPECT_FALSE(v);
}

TEST(RollingStd, WindowTooSmall) {
  EXPECT_THROW(rolling_std(std::vector<double>{1, 2}, 1), Error);
}

// Sample variance as mean squared pairwise difference / 2, with no
// reference to the window mean.
double pairwise_std(std::span<const double> xs) {
  double sum = 0.0;
  for (std::size_t a = 0; a < xs.size(); ++a)
    for (std::size_t b = a + 1; b < xs.size(); ++b) sum += (xs[a] - xs[b]) * (xs[a] - xs[b]);
  const double n = static_cast<double>(xs.size());
  return std::sqrt(sum / (n * (n - 1.0)));
}

TEST(RollingStd, MatchesPairwiseOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto closes = testing::random_walk(rng, 5 + rng.uniform_index(40));
    for (std::size_t window : {2u, 5u, 10u}) {
      const auto got = rolling_std(closes, window);
      for (std::size_t i = 0; i < closes.size(); ++i) {
        if (i + 1 < window) {
          EXPECT_FALSE(got[i]);
          continue;
        }
        const auto slice = std::span<const double>(closes).subspan(i + 1 - window, window);
        EXPECT_NEAR(*got[i], pairwise_std(slice), 1e-10);
      }
    }
  }
}

TEST(LabelHorizons, BoundariesInclusive) {
  std::vector<double> closes(12, 100.0);
  closes[3] = 101.0;
  closes[5] = 99.0;
  closes[7] = 100.5;
  const auto labels = label_horizons(std::span<const double>(closes), LabelConfig{});
  EXPECT_EQ(labels[0][2], Label::Buy);
  EXPECT_EQ(labels[0][4], Label::Sell);
  EXPECT_EQ(labels[0][6], Label::Hold);
  for (const auto& l : labels.back()) EXPECT_FALSE(l);
  EXPECT_TRUE(labels[1][9]);
  EXPECT_FALSE(labels[2][9]);
}

TEST(LabelHorizons, MonotoneAndScaleInvariant) {
  Rng rng(4);
  const LabelConfig cfg;
  for (int trial = 0; trial < 100; ++trial) {
    auto closes = testing::random_walk(rng, 30);
    const auto base = label_horizons(std::span<const double>(closes), cfg);
    auto scaled = closes;
    const double c = 0.01 + rng.uniform01() * 50.0;
    for (double& x : scaled) x *= c;
    const auto after = label_horizons(std::span<const double>(scaled), cfg);
    for (std::size_t i = 0; i < closes.size(); ++i)
      for (std::size_t s = 0; s < cfg.horizons.size(); ++s) {
        // Scaling by c can move a product across a rounding boundary only
        // when the ratio sits within an ulp of a threshold.
        const std::size_t j = i + cfg.horizons[s];
        if (j < closes.size()) {
          const double ratio = closes[j] / closes[i];
          if (std::abs(ratio - 1.01) < 1e-12 || std::abs(ratio - 0.99) < 1e-12) continue;
        }
        EXPECT_EQ(after[i][s], base[i][s]);
      }
  }
  // Monotonicity in the later close.
  Label prev = Label::Sell;
  for (double later = 95.0; later <= 105.0; later += 0.01) {
    const std::vector<double> c{100.0, later};
    const Label l = *label_horizons(std::span<const double>(c), LabelConfig{{1}, 1.01, 0.99})[0][0];
    EXPECT_GE(index_of(l), index_of(prev));
    prev = l;
  }
}

TEST(LabelConfig, Validation) {
  EXPECT_THROW((LabelConfig{{1, 1}, 1.01, 0.99}.validate()), Error);
  EXPECT_THROW((LabelConfig{{0}, 1.01, 0.99}.validate()), Error);
  EXPECT_THROW((LabelConfig{{1}, 0.99, 0.98}.validate()), Error);
  EXPECT_NO_THROW(LabelConfig{}.validate());
}

TEST(AssembleFeatures, DropsWarmUpAndUnlabelledRows) {
  std::vector<double> closes;
  for (int i = 0; i < 15; ++i) closes.push_back(100.0 + i);
  const auto rows = assemble_features(series_from_closes("A", closes), LabelConfig{});
  // Days 1-9 lack std_10day; the last day has no future close.
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows.front().date, testing::nth_day(9));
  for (const auto& r : rows) EXPECT_EQ(r.features.size(), 28u);
}

TEST(AssembleFeatures, ZeroAnalystDayDropped) {
  auto s = series_from_closes("A", std::vector<double>(20, 50.0));
  s.records[12].fields[ingest::index_of(RawField::TotAnalystRec)] = 0;
  const auto rows = assemble_features(s, LabelConfig{});
  // Days 10-19 survive the warm-up and the final unlabelled day.
  EXPECT_EQ(rows.size(), 9u);
  for (const auto& r : rows) EXPECT_NE(r.date, s.records[12].date);
}

TEST(AssembleFeatures, DerivedColumnsAndRowCountBound) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto closes = testing::random_walk(rng, 1 + rng.uniform_index(40));
    const auto s = series_from_closes("A", closes);
    const auto rows = assemble_features(s, LabelConfig{});
    const std::size_t expected = closes.size() >= 11 ? closes.size() - 10 : 0;
    EXPECT_EQ(rows.size(), expected);
    for (const auto& r : rows) {
      EXPECT_DOUBLE_EQ(r.features[23], 0.5);
      EXPECT_DOUBLE_EQ(r.features[24], 0.3);
      EXPECT_DOUBLE_EQ(r.features[25], 0.2);
      EXPECT_GE(r.features[26], 0.0);
      EXPECT_GE(r.features[27], 0.0);
    }
  }
  EXPECT_THROW(assemble_features(ingest::TickerSeries{"E", "S", {}}, LabelConfig{}), Error);
}

TEST(ShuffleSplit, SizesAndPartition) {
  const auto s = shuffle_split(10, SplitConfig{0.7, 42});
  EXPECT_EQ(s.train.size(), 7u);
  EXPECT_EQ(s.test.size(), 3u);
  std::set<std::size_t> all(s.train.begin(), s.train.end());
  all.insert(s.test.begin(), s.test.end());
  EXPECT_EQ(all.size(), 10u);
  EXPECT_EQ(*all.rbegin(), 9u);
}

TEST(ShuffleSplit, Deterministic) {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const auto a = shuffle_split(1000, SplitConfig{0.7, seed});
    const auto b = shuffle_split(1000, SplitConfig{0.7, seed});
    EXPECT_EQ(a.train, b.train);
    EXPECT_EQ(a.test, b.test);
  }
  EXPECT_NE(shuffle_split(1000, SplitConfig{0.7, 1}).train,
            shuffle_split(1000, SplitConfig{0.7, 2}).train);
}

TEST(ShuffleSplit, Errors) {
  EXPECT_THROW(shuffle_split(10, SplitConfig{1.0, 0}), Error);
  EXPECT_THROW(shuffle_split(10, SplitConfig{0.0, 0}), Error);
  EXPECT_THROW(shuffle_split(0, SplitConfig{0.7, 0}), Error);
}

FeatureRow row_for(const std::string& ticker, double v) {
  return FeatureRow{ticker, testing::nth_day(0), {v}, {Label::Hold}};
}

TEST(GroupBySector, Partitions) {
  const std::vector<FeatureRow> rows{row_for("AAPL", 1), row_for("XOM", 2), row_for("AAPL", 3)};
  const std::map<std::string, std::string> sectors{{"AAPL", "Tech"}, {"XOM", "Energy"}};
  const auto groups = group_by_sector(rows, sectors);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups.at("Tech").size(), 2u);
  EXPECT_EQ(groups.at("Energy").front().features[0], 2.0);

  const auto one = group_by_sector(rows, {{"AAPL", "X"}, {"XOM", "X"}});
  EXPECT_EQ(one.at("X"), rows);
  EXPECT_THROW(group_by_sector(rows, {{"AAPL", "Tech"}}), Error);
}

TEST(Scaler, FitValues) {
  Matrix m(3, 2);
  for (int i = 0; i < 3; ++i) {
    m(i, 0) = i + 1;
    m(i, 1) = 5;
  }
  const Scaler s = Scaler::fit(m);
  EXPECT_DOUBLE_EQ(s.mean()[0], 2.0);
  EXPECT_DOUBLE_EQ(s.stddev()[0], 1.0);
  EXPECT_DOUBLE_EQ(s.mean()[1], 5.0);
  EXPECT_EQ(s.stddev()[1], 0.0);
  const Matrix z = s.apply(m);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(z(i, 1), 0.0);
  EXPECT_THROW(Scaler::fit(Matrix(1, 2)), Error);
  EXPECT_THROW(s.apply(std::vector<double>{1.0}), Error);
}

TEST(Scaler, StandardizesFitSet) {
  Rng rng(2);
  Matrix m = testing::random_matrix(rng, 50, 6);
  for (std::size_t r = 0; r < 50; ++r) m(r, 3) = m(r, 3) * 1e4 + 7e5;
  const Matrix z = Scaler::fit(m).apply(m);
  for (std::size_t c = 0; c < 6; ++c) {
    double mean = 0, ss = 0;
    for (std::size_t r = 0; r < 50; ++r) mean += z(r, c);
    mean /= 50;
    for (std::size_t r = 0; r < 50; ++r) ss += (z(r, c) - mean) * (z(r, c) - mean);
    EXPECT_NEAR(mean, 0.0, 1e-9);
    EXPECT_NEAR(std::sqrt(ss / 49), 1.0, 1e-9);
  }
}

TEST(Dataset, CsvRoundTripAndProjection) {
  std::map<std::string, ingest::TickerSeries> series;
  Rng rng(6);
  series["A"] = series_from_closes("A", testing::random_walk(rng, 30), "Tech");
  series["B,C"] = series_from_closes("B,C", testing::random_walk(rng, 25), "Energy");
  const Dataset ds = build_dataset(series, LabelConfig{});
  ASSERT_EQ(ds.rows.size(), 20u + 15u);

  std::stringstream buf;
  write_dataset_csv(ds, buf);
  EXPECT_EQ(read_dataset_csv(buf), ds);

  const std::vector<std::string> pick{"std_5day", "PX_OFFICIAL_CLOSE"};
  const Dataset p = ds.project(pick);
  EXPECT_EQ(p.feature_names, pick);
  EXPECT_EQ(p.rows[3].features[1], ds.rows[3].features[0]);
  EXPECT_EQ(p.rows[3].features[0], ds.rows[3].features[26]);
  EXPECT_THROW(ds.project(std::vector<std::string>{"nope"}), Error);
  EXPECT_EQ(ds.horizon_slot(10), 9u);
  EXPECT_FALSE(ds.horizon_slot(11));
}

}  // namespace
}  // namespace eqsig::transform
