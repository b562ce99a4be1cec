#include "eqsig/ingest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "eqsig/csv.hpp"
#include "eqsig/error.hpp"

namespace eqsig::ingest {

namespace {

constexpr std::array<std::string_view, kNumRawFields> kRawFieldNames{
    "PX_OFFICIAL_CLOSE", "PX_VOLUME",          "CUR_MKT_CAP",
    "HISTORICAL_MARKET_CAP", "SHORT_INT",      "SHORT_INT_RATIO",
    "PE_RATIO",          "PX_TO_BOOK_RATIO",   "RETURN_ON_ASSET",
    "BEST_EPS",          "BEST_EPS_LO",        "BEST_EPS_HI",
    "BEST_CAPEX",        "BEST_CAPEX_LO",      "BEST_CAPEX_HI",
    "TOT_ANALYST_REC",   "TOT_BUY_REC",        "TOT_SELL_REC",
    "TOT_HOLD_REC",      "EQY_REC_CONS",       "BEST_ANALYST_RATING",
    "BEST_EST_LONG_TERM_GROWTH", "BEST_TARGET_PRICE"};

constexpr std::array<RawField, 4> kCountFields{RawField::TotAnalystRec, RawField::TotBuyRec,
                                               RawField::TotSellRec, RawField::TotHoldRec};

struct ColumnMap {
  std::size_t date = 0, ticker = 0, sector = 0;
  std::array<std::size_t, kNumRawFields> fields{};
};

ColumnMap resolve_columns(const std::vector<std::string>& header) {
  auto find = [&](std::string_view name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(ErrorCode::SchemaError, std::string(name));
    return static_cast<std::size_t>(it - header.begin());
  };
  ColumnMap map;
  map.date = find("date");
  map.ticker = find("ticker");
  map.sector = find("sector");
  for (std::size_t f = 0; f < kNumRawFields; ++f) map.fields[f] = find(kRawFieldNames[f]);
  return map;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

const std::array<std::string_view, kNumRawFields>& raw_field_names() { return kRawFieldNames; }

std::string_view name_of(RawField f) { return kRawFieldNames[index_of(f)]; }

std::optional<RawField> raw_field_from_name(std::string_view name) {
  for (std::size_t f = 0; f < kNumRawFields; ++f)
    if (kRawFieldNames[f] == name) return static_cast<RawField>(f);
  return std::nullopt;
}

std::vector<std::string> market_csv_columns() {
  std::vector<std::string> cols{"date", "ticker", "sector"};
  for (auto name : kRawFieldNames) cols.emplace_back(name);
  return cols;
}

RawTable parse_market_csv(std::istream& source) {
  RawTable table;
  std::string line;
  std::size_t line_no = 0;

  bool have_header = false;
  while (std::getline(source, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (is_blank(line)) continue;
    table.header = csv::split_line(line);
    for (auto& h : table.header) h = std::string(csv::trim(h));
    have_header = true;
    break;
  }
  if (!have_header) throw Error(ErrorCode::EmptyInput, "no header row");

  const ColumnMap cols = resolve_columns(table.header);

  while (std::getline(source, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto cells = csv::split_line(line);
    if (cells.size() != table.header.size()) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected " << table.header.size() << " columns, got "
          << cells.size();
      throw Error(ErrorCode::MalformedRow, msg.str());
    }
    RawRow row;
    row.line = line_no;
    const auto date_text = csv::trim(cells[cols.date]);
    if (!date_text.empty()) {
      row.date = parse_iso_date(date_text);
      if (!row.date) {
        std::ostringstream msg;
        msg << "line " << line_no << ": date '" << date_text << "' is not YYYY-MM-DD";
        throw Error(ErrorCode::MalformedRow, msg.str());
      }
    }
    row.ticker = std::string(csv::trim(cells[cols.ticker]));
    row.sector = std::string(csv::trim(cells[cols.sector]));
    for (std::size_t f = 0; f < kNumRawFields; ++f) {
      const auto text = csv::trim(cells[cols.fields[f]]);
      if (text.empty()) continue;
      row.fields[f] = csv::parse_double(text);
      if (!row.fields[f]) ++table.unparseable_cells;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

RawTable parse_market_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_market_csv(in);
}

CleanTable validate_and_clean(const RawTable& table) {
  CleanTable clean;
  for (const RawRow& row : table.rows) {
    std::vector<std::string_view> bad;
    if (!row.date) bad.emplace_back("date");
    if (row.ticker.empty()) bad.emplace_back("ticker");
    if (row.sector.empty()) bad.emplace_back("sector");
    for (std::size_t f = 0; f < kNumRawFields; ++f) {
      if (!row.fields[f]) bad.push_back(kRawFieldNames[f]);
    }
    const auto& close = row.fields[index_of(RawField::Close)];
    if (close && *close <= 0.0) bad.push_back(name_of(RawField::Close));
    for (RawField f : kCountFields) {
      const auto& v = row.fields[index_of(f)];
      if (v && *v < 0.0) bad.push_back(name_of(f));
    }

    if (!bad.empty()) {
      for (auto name : bad) ++clean.drop_report[std::string(name)];
      continue;
    }

    DailyRecord rec;
    rec.date = *row.date;
    rec.ticker = row.ticker;
    rec.sector = row.sector;
    for (std::size_t f = 0; f < kNumRawFields; ++f) rec.fields[f] = *row.fields[f];
    if (rec[RawField::TotBuyRec] + rec[RawField::TotSellRec] + rec[RawField::TotHoldRec] >
        rec[RawField::TotAnalystRec]) {
      ++clean.rec_count_warnings;
    }
    clean.rows.push_back(std::move(rec));
  }
  if (clean.rows.empty()) {
    throw Error(ErrorCode::AllRowsDropped,
                std::to_string(table.rows.size()) + " rows read, none complete");
  }
  return clean;
}

std::map<std::string, TickerSeries> partition_by_ticker(const CleanTable& table) {
  std::map<std::string, TickerSeries> out;
  for (const DailyRecord& rec : table.rows) {
    auto [it, inserted] = out.try_emplace(rec.ticker);
    TickerSeries& series = it->second;
    if (inserted) {
      series.ticker = rec.ticker;
      series.sector = rec.sector;
    } else if (series.sector != rec.sector) {
      throw Error(ErrorCode::SectorConflict,
                  rec.ticker + " is in both '" + series.sector + "' and '" + rec.sector + "'");
    }
    series.records.push_back(rec);
  }
  for (auto& [ticker, series] : out) {
    auto& recs = series.records;
    std::stable_sort(recs.begin(), recs.end(),
                     [](const DailyRecord& a, const DailyRecord& b) { return a.date < b.date; });
    auto dup = std::adjacent_find(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
      return a.date == b.date;
    });
    if (dup != recs.end()) {
      throw Error(ErrorCode::DuplicateKey, ticker + " on " + format_iso_date(dup->date));
    }
  }
  return out;
}

void write_market_csv(const CleanTable& table, std::ostream& out) {
  out << csv::join_line(market_csv_columns()) << '\n';
  std::vector<std::string> cells;
  for (const DailyRecord& rec : table.rows) {
    cells.clear();
    cells.push_back(format_iso_date(rec.date));
    cells.push_back(rec.ticker);
    cells.push_back(rec.sector);
    for (double v : rec.fields) cells.push_back(csv::format_double(v));
    out << csv::join_line(cells) << '\n';
  }
}

RawTable to_raw_table(const CleanTable& table) {
  RawTable raw;
  raw.header = market_csv_columns();
  raw.rows.reserve(table.rows.size());
  std::size_t line = 1;
  for (const DailyRecord& rec : table.rows) {
    RawRow row;
    row.line = ++line;
    row.date = rec.date;
    row.ticker = rec.ticker;
    row.sector = rec.sector;
    for (std::size_t f = 0; f < kNumRawFields; ++f) row.fields[f] = rec.fields[f];
    raw.rows.push_back(std::move(row));
  }
  return raw;
}

}  // namespace eqsig::ingest
