#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqsig/date.hpp"

// Market CSV ingestion: parsing, null policy and per-ticker partitioning.
namespace eqsig::ingest {

inline constexpr std::size_t kNumRawFields = 23;

// Raw per-day inputs, in canonical column order.
enum class RawField : std::uint8_t {
  Close,
  Volume,
  CurMktCap,
  HistoricalMktCap,
  ShortInt,
  ShortIntRatio,
  PeRatio,
  PbRatio,
  ReturnOnAsset,
  BestEps,
  BestEpsLo,
  BestEpsHi,
  BestCapex,
  BestCapexLo,
  BestCapexHi,
  TotAnalystRec,
  TotBuyRec,
  TotSellRec,
  TotHoldRec,
  EqyRecCons,
  BestAnalystRating,
  BestEstLongTermGrowth,
  BestTargetPrice,
};

constexpr std::size_t index_of(RawField f) { return static_cast<std::size_t>(f); }

// Bloomberg column symbols, indexed by RawField.
const std::array<std::string_view, kNumRawFields>& raw_field_names();
std::string_view name_of(RawField f);
std::optional<RawField> raw_field_from_name(std::string_view name);

// The 26 header columns a market CSV must contain.
std::vector<std::string> market_csv_columns();

struct RawRow {
  std::size_t line = 0;  // 1-based physical line in the source
  std::optional<Date> date;
  std::string ticker;  // empty means missing
  std::string sector;  // empty means missing
  std::array<std::optional<double>, kNumRawFields> fields{};
};

struct RawTable {
  std::vector<std::string> header;
  std::vector<RawRow> rows;
  // Non-empty numeric cells that failed to parse and were read as missing.
  std::size_t unparseable_cells = 0;

  std::size_t column_count() const { return header.size(); }
};

struct DailyRecord {
  Date date;
  std::string ticker;
  std::string sector;
  std::array<double, kNumRawFields> fields{};

  double operator[](RawField f) const { return fields[index_of(f)]; }
  double close() const { return (*this)[RawField::Close]; }

  friend bool operator==(const DailyRecord&, const DailyRecord&) = default;
};

struct CleanTable {
  std::vector<DailyRecord> rows;
  // Column name -> number of dropped rows in which that column was missing
  // or invalid.
  std::map<std::string, std::size_t> drop_report;
  // Rows where buy + sell + hold exceeded the analyst total (kept).
  std::size_t rec_count_warnings = 0;
};

struct TickerSeries {
  std::string ticker;
  std::string sector;
  std::vector<DailyRecord> records;  // strictly ascending by date
};

// Throws Error{EmptyInput | SchemaError | MalformedRow}.
RawTable parse_market_csv(std::istream& source);
RawTable parse_market_csv(std::string_view text);

// Row-wise null policy. Throws Error{AllRowsDropped}.
CleanTable validate_and_clean(const RawTable& table);

// Throws Error{DuplicateKey | SectorConflict}.
std::map<std::string, TickerSeries> partition_by_ticker(const CleanTable& table);

void write_market_csv(const CleanTable& table, std::ostream& out);
RawTable to_raw_table(const CleanTable& table);

}  // namespace eqsig::ingest
