#include "eqsig/backtest.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "eqsig/csv.hpp"
#include "eqsig/error.hpp"

namespace eqsig::backtest {

namespace {

constexpr std::int64_t kPpm = 1'000'000;

std::int64_t to_ppm(double fraction) { return static_cast<std::int64_t>(std::llround(fraction * kPpm)); }

// Products of ticks and (1e6 + ppm) stay inside int64 for prices below this.
constexpr std::int64_t kMaxTicks = std::numeric_limits<std::int64_t>::max() / (4 * kPpm);

void check_range(Money price) {
  if (price.ticks() > kMaxTicks) throw Error(ErrorCode::InvalidConfig, "price out of range");
}

// close / entry compared against (1 + ppm / 1e6) exactly.
bool at_or_above(Money close, Money entry, std::int64_t ppm_offset) {
  check_range(close);
  check_range(entry);
  return close.ticks() * kPpm >= entry.ticks() * (kPpm + ppm_offset);
}

bool at_or_below(Money close, Money entry, std::int64_t ppm_offset) {
  check_range(close);
  check_range(entry);
  return close.ticks() * kPpm <= entry.ticks() * (kPpm + ppm_offset);
}

Position open_position(Label signal, const Bar& bar) {
  if (signal == Label::Buy) return LongPosition{bar.close, bar.date};
  if (signal == Label::Sell) return ShortPosition{bar.close, bar.date};
  return Flat{};
}

}  // namespace

void BacktestConfig::validate() const {
  if (fee_per_transaction < Money{}) throw Error(ErrorCode::InvalidConfig, "fee must be >= 0");
  if (!(take_profit_fraction > 0.0) || !(stop_loss_fraction > 0.0))
    throw Error(ErrorCode::InvalidConfig, "take-profit and stop-loss fractions must be > 0");
  if (stop_loss_fraction >= 1.0 || take_profit_fraction >= 1.0)
    throw Error(ErrorCode::InvalidConfig, "take-profit and stop-loss fractions must be < 1");
  if (signal_horizon < 1) throw Error(ErrorCode::InvalidConfig, "signal horizon must be >= 1");
}

std::string_view to_string(Side side) { return side == Side::Long ? "long" : "short"; }

std::string_view to_string(ExitReason reason) {
  switch (reason) {
    case ExitReason::TakeProfit: return "take_profit";
    case ExitReason::StopLoss: return "stop_loss";
    case ExitReason::SignalReversal: return "signal_reversal";
    case ExitReason::EndOfData: return "end_of_data";
  }
  return "?";
}

std::optional<StopExit> check_stops(const Position& position, Money close,
                                    const BacktestConfig& cfg) {
  const std::int64_t tp = to_ppm(cfg.take_profit_fraction);
  const std::int64_t sl = to_ppm(cfg.stop_loss_fraction);
  if (const auto* l = std::get_if<LongPosition>(&position)) {
    if (at_or_above(close, l->entry_price, tp)) return StopExit{close, ExitReason::TakeProfit};
    if (at_or_below(close, l->entry_price, -sl)) return StopExit{close, ExitReason::StopLoss};
  } else if (const auto* s = std::get_if<ShortPosition>(&position)) {
    if (at_or_below(close, s->entry_price, -tp)) return StopExit{close, ExitReason::TakeProfit};
    if (at_or_above(close, s->entry_price, sl)) return StopExit{close, ExitReason::StopLoss};
  }
  return std::nullopt;
}

Trade close_position(const Position& position, Money price, Date date, ExitReason reason,
                     const BacktestConfig& cfg) {
  const Money fees = cfg.fee_per_transaction * 2;
  if (const auto* l = std::get_if<LongPosition>(&position)) {
    return {l->entry_date, date, Side::Long, l->entry_price, price, reason,
            price - l->entry_price - fees};
  }
  if (const auto* s = std::get_if<ShortPosition>(&position)) {
    return {s->entry_date, date, Side::Short, s->entry_price, price, reason,
            s->entry_price - price - fees};
  }
  throw Error(ErrorCode::InvalidConfig, "cannot close a flat position");
}

SignalOutcome apply_signal(const Position& position, Label signal, const Bar& bar,
                           const BacktestConfig& cfg) {
  if (signal == Label::Hold) return {position, {}};
  if (std::holds_alternative<Flat>(position)) return {open_position(signal, bar), {}};

  const bool is_long = std::holds_alternative<LongPosition>(position);
  if ((is_long && signal == Label::Buy) || (!is_long && signal == Label::Sell)) {
    return {position, {}};
  }
  Trade closed = close_position(position, bar.close, bar.date, ExitReason::SignalReversal, cfg);
  return {open_position(signal, bar), {closed}};
}

BacktestReport run_backtest(std::span<const Bar> bars, std::span<const DatedSignal> signals,
                            const BacktestConfig& cfg) {
  cfg.validate();
  if (bars.empty()) throw Error(ErrorCode::Empty, "no bars to backtest");
  if (bars.size() != signals.size()) {
    throw Error(ErrorCode::Misaligned, std::to_string(bars.size()) + " bars vs " +
                                           std::to_string(signals.size()) + " signals");
  }

  BacktestReport report;
  Position position = Flat{};
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const Bar& bar = bars[i];
    if (bar.date != signals[i].date) {
      throw Error(ErrorCode::Misaligned, "bar " + format_iso_date(bar.date) + " vs signal " +
                                             format_iso_date(signals[i].date));
    }
    if (i && !(bars[i - 1].date < bar.date)) {
      throw Error(ErrorCode::Misaligned, "bar dates must be strictly ascending");
    }
    if (bar.close <= Money{}) {
      throw Error(ErrorCode::MalformedRow, "non-positive close on " + format_iso_date(bar.date));
    }

    if (auto exit = check_stops(position, bar.close, cfg)) {
      report.trades.push_back(close_position(position, exit->price, bar.date, exit->reason, cfg));
      position = Flat{};
    }
    auto outcome = apply_signal(position, signals[i].signal, bar, cfg);
    position = outcome.position;
    report.trades.insert(report.trades.end(), outcome.trades.begin(), outcome.trades.end());
  }
  if (cfg.liquidate_at_end && !std::holds_alternative<Flat>(position)) {
    const Bar& last = bars.back();
    report.trades.push_back(close_position(position, last.close, last.date, ExitReason::EndOfData, cfg));
    position = Flat{};
  }

  for (const Trade& t : report.trades) report.total_profit += t.pnl;
  report.initial_price = bars.front().close;
  report.return_percentage = return_percentage(report.total_profit, report.initial_price);
  report.final_position = position;
  return report;
}

double return_percentage(Money total_profit, Money initial_price) {
  if (initial_price <= Money{}) {
    throw Error(ErrorCode::NonPositiveInitialPrice, initial_price.to_string());
  }
  return 100.0 * static_cast<double>(total_profit.ticks()) /
         static_cast<double>(initial_price.ticks());
}

double return_percentage(double total_profit, double initial_price) {
  if (!(initial_price > 0.0)) {
    throw Error(ErrorCode::NonPositiveInitialPrice, csv::format_double(initial_price));
  }
  return 100.0 * total_profit / initial_price;
}

void write_trade_log_csv(std::span<const Trade> trades, std::ostream& out) {
  out << "open_date,close_date,side,entry_price,exit_price,exit_reason,pnl\n";
  for (const Trade& t : trades) {
    out << format_iso_date(t.open_date) << ',' << format_iso_date(t.close_date) << ','
        << to_string(t.side) << ',' << t.entry_price.to_string() << ','
        << t.exit_price.to_string() << ',' << to_string(t.exit_reason) << ','
        << t.pnl.to_string() << '\n';
  }
}

std::vector<Trade> read_trade_log_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "no header row");
  std::vector<Trade> trades;
  std::size_t line_no = 1;
  auto money = [&](const std::string& cell) {
    auto v = csv::parse_double(cell);
    if (!v) throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no));
    return Money::from_dollars(*v);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = csv::split_line(line);
    if (cells.size() != 7) throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no));
    auto open = parse_iso_date(cells[0]);
    auto close = parse_iso_date(cells[1]);
    if (!open || !close) throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no));
    Trade t;
    t.open_date = *open;
    t.close_date = *close;
    if (cells[2] == "long") t.side = Side::Long;
    else if (cells[2] == "short") t.side = Side::Short;
    else throw Error(ErrorCode::MalformedRow, "side '" + cells[2] + "'");
    t.entry_price = money(cells[3]);
    t.exit_price = money(cells[4]);
    bool known = false;
    for (auto r : {ExitReason::TakeProfit, ExitReason::StopLoss, ExitReason::SignalReversal,
                   ExitReason::EndOfData}) {
      if (cells[5] == to_string(r)) {
        t.exit_reason = r;
        known = true;
      }
    }
    if (!known) throw Error(ErrorCode::MalformedRow, "exit reason '" + cells[5] + "'");
    t.pnl = money(cells[6]);
    trades.push_back(t);
  }
  return trades;
}

nlohmann::json to_json(const BacktestReport& report) {
  std::size_t wins = 0;
  for (const Trade& t : report.trades)
    if (t.pnl > Money{}) ++wins;
  return {{"profit", report.total_profit.to_string()},
          {"initial_price", report.initial_price.to_string()},
          {"return_percentage", report.return_percentage},
          {"n_trades", report.trades.size()},
          {"winning_trades", wins}};
}

}  // namespace eqsig::backtest
