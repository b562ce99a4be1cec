#include <gtest/gtest.h>

#include <sstream>

#include "eqsig/csv.hpp"
#include "eqsig/error.hpp"
#include "eqsig/ingest.hpp"
#include "support.hpp"

namespace eqsig::ingest {
namespace {

using testing::day;
using testing::record;

std::string header() { return csv::join_line(market_csv_columns()); }

std::string row_text(const std::string& date, const std::string& ticker,
                     const std::string& sector, double close) {
  std::vector<std::string> cells{date, ticker, sector};
  for (std::size_t f = 0; f < kNumRawFields; ++f)
    cells.push_back(f == 0 ? csv::format_double(close) : std::to_string(f + 1));
  return csv::join_line(cells);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::IoError;
}

TEST(ParseMarketCsv, ReadsWellFormedRows) {
  const std::string text = header() + "\n" + row_text("2020-01-02", "AAA", "Tech", 10.5) + "\n" +
                            row_text("2020-01-03", "AAA", "Tech", 11) + "\n";
  const RawTable table = parse_market_csv(text);
  EXPECT_EQ(table.column_count(), 26u);
  ASSERT_EQ(table.rows.size(), 2u);
  EXPECT_EQ(table.rows[0].date, day(2020, 1, 2));
  EXPECT_EQ(table.rows[1].fields[0], 11.0);
  EXPECT_EQ(table.rows[1].line, 3u);
}

TEST(ParseMarketCsv, MissingColumnIsNamed) {
  auto cols = market_csv_columns();
  cols.erase(std::find(cols.begin(), cols.end(), "PX_OFFICIAL_CLOSE"));
  try {
    parse_market_csv(csv::join_line(cols) + "\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_EQ(e.detail(), "PX_OFFICIAL_CLOSE");
  }
}

TEST(ParseMarketCsv, EmptyStream) {
  EXPECT_EQ(code_of([] { parse_market_csv(""); }), ErrorCode::EmptyInput);
}

TEST(ParseMarketCsv, WrongColumnCountNamesLine) {
  const std::string text = header() + "\n" + row_text("2020-01-02", "AAA", "Tech", 1) + "\n1,2\n";
  try {
    parse_market_csv(text);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedRow);
    EXPECT_NE(e.detail().find("line 3"), std::string::npos);
  }
}

TEST(ParseMarketCsv, NonIsoDateIsMalformed) {
  const std::string text = header() + "\n" + row_text("02/01/2020", "AAA", "Tech", 1) + "\n";
  EXPECT_EQ(code_of([&] { parse_market_csv(text); }), ErrorCode::MalformedRow);
}

TEST(ParseMarketCsv, UnparseableCellBecomesMissing) {
  std::string line = row_text("2020-01-02", "AAA", "Tech", 1);
  line.replace(line.rfind(',') + 1, std::string::npos, "n/a");
  const RawTable table = parse_market_csv(header() + "\n" + line + "\n");
  EXPECT_EQ(table.unparseable_cells, 1u);
  EXPECT_FALSE(table.rows[0].fields[index_of(RawField::BestTargetPrice)].has_value());
}

TEST(ParseMarketCsv, ColumnOrderIsFree) {
  auto cols = market_csv_columns();
  std::reverse(cols.begin(), cols.end());
  std::vector<std::string> cells;
  for (const auto& c : cols) {
    if (c == "date") cells.push_back("2021-05-04");
    else if (c == "ticker") cells.push_back("ZZ");
    else if (c == "sector") cells.push_back("Energy");
    else if (c == "PX_OFFICIAL_CLOSE") cells.push_back("42.5");
    else cells.push_back("1");
  }
  const RawTable table = parse_market_csv(csv::join_line(cols) + "\n" + csv::join_line(cells));
  EXPECT_EQ(table.rows[0].fields[index_of(RawField::Close)], 42.5);
  EXPECT_EQ(table.rows[0].ticker, "ZZ");
}

RawTable raw_of(std::vector<DailyRecord> rows) {
  CleanTable t;
  t.rows = std::move(rows);
  return to_raw_table(t);
}

TEST(ValidateAndClean, DropsRowWithMissingField) {
  RawTable raw = raw_of({record("A", day(2020, 1, 1), 1), record("A", day(2020, 1, 2), 2),
                         record("A", day(2020, 1, 3), 3)});
  raw.rows[1].fields[index_of(RawField::PeRatio)].reset();
  const CleanTable clean = validate_and_clean(raw);
  EXPECT_EQ(clean.rows.size(), 2u);
  EXPECT_EQ(clean.drop_report, (std::map<std::string, std::size_t>{{"PE_RATIO", 1}}));
}

TEST(ValidateAndClean, CompleteRowsPassUnchanged) {
  const std::vector<DailyRecord> rows{record("A", day(2020, 1, 1), 1), record("B", day(2020, 1, 1), 2)};
  const CleanTable clean = validate_and_clean(raw_of(rows));
  EXPECT_EQ(clean.rows, rows);
  EXPECT_TRUE(clean.drop_report.empty());
}

TEST(ValidateAndClean, AllDropped) {
  RawTable raw = raw_of({record("A", day(2020, 1, 1), 1)});
  raw.rows[0].date.reset();
  EXPECT_EQ(code_of([&] { validate_and_clean(raw); }), ErrorCode::AllRowsDropped);
}

TEST(ValidateAndClean, NonPositiveCloseAndNegativeCountsDropped) {
  RawTable raw = raw_of({record("A", day(2020, 1, 1), 0.0), record("A", day(2020, 1, 2), 5),
                         record("A", day(2020, 1, 3), 5)});
  raw.rows[1].fields[index_of(RawField::TotSellRec)] = -1.0;
  const CleanTable clean = validate_and_clean(raw);
  EXPECT_EQ(clean.rows.size(), 1u);
  EXPECT_EQ(clean.drop_report.at("PX_OFFICIAL_CLOSE"), 1u);
  EXPECT_EQ(clean.drop_report.at("TOT_SELL_REC"), 1u);
}

TEST(ValidateAndClean, InconsistentRecCountsWarnOnly) {
  auto rec = record("A", day(2020, 1, 1), 5);
  rec.fields[index_of(RawField::TotBuyRec)] = 20;
  const CleanTable clean = validate_and_clean(raw_of({rec}));
  EXPECT_EQ(clean.rows.size(), 1u);
  EXPECT_EQ(clean.rec_count_warnings, 1u);
}

TEST(ValidateAndClean, Idempotent) {
  Rng rng(3);
  std::vector<DailyRecord> rows;
  for (int i = 0; i < 50; ++i) rows.push_back(record("A", testing::nth_day(i), 1.0 + i));
  RawTable raw = raw_of(rows);
  for (auto& r : raw.rows)
    if (rng.uniform_index(4) == 0) r.fields[rng.uniform_index(kNumRawFields)].reset();
  const CleanTable once = validate_and_clean(raw);
  const CleanTable twice = validate_and_clean(to_raw_table(once));
  EXPECT_EQ(twice.rows, once.rows);
  EXPECT_TRUE(twice.drop_report.empty());
}

TEST(PartitionByTicker, GroupsAndSorts) {
  CleanTable t;
  t.rows = {record("A", day(2020, 1, 3), 3), record("B", day(2020, 1, 1), 9),
            record("A", day(2020, 1, 1), 1), record("A", day(2020, 1, 2), 2)};
  const auto series = partition_by_ticker(t);
  ASSERT_EQ(series.size(), 2u);
  const auto& a = series.at("A").records;
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0].date, day(2020, 1, 1));
  EXPECT_EQ(a[2].date, day(2020, 1, 3));
  EXPECT_EQ(series.at("B").records.size(), 1u);
  EXPECT_EQ(series.at("A").sector, "Tech");
}

TEST(PartitionByTicker, DuplicateKey) {
  CleanTable t;
  t.rows = {record("A", day(2020, 1, 1), 1), record("A", day(2020, 1, 1), 2)};
  EXPECT_EQ(code_of([&] { partition_by_ticker(t); }), ErrorCode::DuplicateKey);
}

TEST(PartitionByTicker, SectorConflict) {
  CleanTable t;
  t.rows = {record("A", day(2020, 1, 1), 1, "Tech"), record("A", day(2020, 1, 2), 2, "Energy")};
  EXPECT_EQ(code_of([&] { partition_by_ticker(t); }), ErrorCode::SectorConflict);
}

TEST(PartitionByTicker, PreservesRowCount) {
  Rng rng(11);
  CleanTable t;
  for (int i = 0; i < 200; ++i) {
    const std::string ticker(1, static_cast<char>('A' + rng.uniform_index(5)));
    t.rows.push_back(record(ticker, testing::nth_day(i), 10.0));
  }
  std::size_t total = 0;
  for (const auto& [ticker, s] : partition_by_ticker(t)) total += s.records.size();
  EXPECT_EQ(total, t.rows.size());
}

TEST(MarketCsv, RoundTripIsExact) {
  Rng rng(5);
  CleanTable t;
  for (int i = 0; i < 40; ++i) {
    auto rec = record(i % 2 ? "X,Y" : "Q", testing::nth_day(i), 0.1 + rng.uniform01() * 1000.0);
    for (std::size_t f = 1; f < kNumRawFields; ++f) rec.fields[f] = rng.uniform01() * 1e6;
    t.rows.push_back(rec);
  }
  std::ostringstream out;
  write_market_csv(t, out);
  const CleanTable back = validate_and_clean(parse_market_csv(out.str()));
  EXPECT_EQ(back.rows, t.rows);
}

}  // namespace
}  // namespace eqsig::ingest
