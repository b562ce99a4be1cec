#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "eqsig/date.hpp"
#include "eqsig/label.hpp"
#include "eqsig/money.hpp"

// Daily-bar single-share long/short backtester.
namespace eqsig::backtest {

struct BacktestConfig {
  Money fee_per_transaction = Money::from_ticks(100);  // $0.01
  double take_profit_fraction = 0.01;
  double stop_loss_fraction = 0.01;
  int signal_horizon = 10;
  bool liquidate_at_end = true;

  // Throws Error{InvalidConfig}.
  void validate() const;
};

enum class Side { Long, Short };
enum class ExitReason { TakeProfit, StopLoss, SignalReversal, EndOfData };

std::string_view to_string(Side side);
std::string_view to_string(ExitReason reason);

struct Flat {
  friend bool operator==(const Flat&, const Flat&) = default;
};
struct LongPosition {
  Money entry_price;
  Date entry_date;
  friend bool operator==(const LongPosition&, const LongPosition&) = default;
};
struct ShortPosition {
  Money entry_price;
  Date entry_date;
  friend bool operator==(const ShortPosition&, const ShortPosition&) = default;
};

// At most one share is ever held.
using Position = std::variant<Flat, LongPosition, ShortPosition>;

struct Trade {
  Date open_date;
  Date close_date;
  Side side = Side::Long;
  Money entry_price;
  Money exit_price;
  ExitReason exit_reason = ExitReason::EndOfData;
  Money pnl;  // net of the opening and closing fee

  friend bool operator==(const Trade&, const Trade&) = default;
};

struct Bar {
  Date date;
  Money close;
};

struct DatedSignal {
  Date date;
  Label signal = Label::Hold;
};

struct StopExit {
  Money price;
  ExitReason reason = ExitReason::StopLoss;
  friend bool operator==(const StopExit&, const StopExit&) = default;
};

// Take-profit / stop-loss test at the bar close; boundaries inclusive.
std::optional<StopExit> check_stops(const Position& position, Money close,
                                    const BacktestConfig& cfg);

// Closes `position` at `price` on `date` and returns the trade.
Trade close_position(const Position& position, Money price, Date date, ExitReason reason,
                     const BacktestConfig& cfg);

struct SignalOutcome {
  Position position;
  std::vector<Trade> trades;
};

// Position transition for one signal at the bar close. Hold never changes
// the position; an opposite signal closes and reverses.
SignalOutcome apply_signal(const Position& position, Label signal, const Bar& bar,
                           const BacktestConfig& cfg);

struct BacktestReport {
  std::vector<Trade> trades;
  Money total_profit;
  Money initial_price;
  double return_percentage = 0.0;
  Position final_position;  // Flat whenever liquidate_at_end is set
};

// Per bar: stops first, then the bar's signal at the same close.
// Throws Error{Empty | Misaligned | InvalidConfig}.
BacktestReport run_backtest(std::span<const Bar> bars, std::span<const DatedSignal> signals,
                            const BacktestConfig& cfg);

// 100 * profit / initial price. Throws Error{NonPositiveInitialPrice}.
double return_percentage(Money total_profit, Money initial_price);
double return_percentage(double total_profit, double initial_price);

// open_date,close_date,side,entry_price,exit_price,exit_reason,pnl
void write_trade_log_csv(std::span<const Trade> trades, std::ostream& out);
std::vector<Trade> read_trade_log_csv(std::istream& in);
nlohmann::json to_json(const BacktestReport& report);

}  // namespace eqsig::backtest
