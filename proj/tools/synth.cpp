#include "synth.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eqsig/rng.hpp"

namespace eqsig::synth {

namespace {

double normal(Rng& rng) {
  // Box-Muller; 1 - u keeps the log argument away from zero.
  const double u = 1.0 - rng.uniform01();
  const double v = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

// Dividing by 100 yields the double nearest the two-decimal value.
double cents(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

MarketSpec default_market(std::size_t days, std::uint64_t seed) {
  MarketSpec spec;
  spec.days = days;
  spec.seed = seed;
  spec.tickers = {{"AAA", "Technology", 85.0},   {"BBB", "Technology", 480.0},
                  {"CCC", "Healthcare", 118.0},  {"DDD", "Healthcare", 87.0},
                  {"EEE", "Financials", 466.0},  {"FFF", "Financials", 42.0}};
  return spec;
}

ingest::CleanTable generate_market(const MarketSpec& spec) {
  using namespace std::chrono;
  using ingest::RawField;
  ingest::CleanTable table;

  for (std::size_t t = 0; t < spec.tickers.size(); ++t) {
    const TickerSpec& ts = spec.tickers[t];
    Rng rng = Rng::derive(spec.seed, t);
    double close = ts.start_price;
    const double shares = 1e8 * (1.0 + static_cast<double>(rng.uniform_index(50)));
    const double eps = ts.start_price / (12.0 + 10.0 * rng.uniform01());
    int analysts = 10 + static_cast<int>(rng.uniform_index(30));
    int buy = analysts / 2;
    int sell = analysts / 6;
    sys_days day = sys_days{year{2015} / January / 2};

    for (std::size_t i = 0; i < spec.days; ++i) {
      while (weekday{day} == Saturday || weekday{day} == Sunday) day += days{1};

      if (i > 0) close *= std::exp(spec.volatility * normal(rng));
      close = std::max(cents(close), 0.01);

      // Occasional analyst revisions.
      if (rng.uniform_index(20) == 0) {
        analysts = std::max(3, analysts + static_cast<int>(rng.uniform_index(3)) - 1);
        buy = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(analysts) + 1));
        sell = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(analysts - buy) + 1));
      }
      const int hold = analysts - buy - sell;

      ingest::DailyRecord rec;
      rec.date = year_month_day{day};
      rec.ticker = ts.ticker;
      rec.sector = ts.sector;
      auto set = [&](RawField f, double v) { rec.fields[ingest::index_of(f)] = v; };
      const double cap = close * shares / 1e6;
      set(RawField::Close, close);
      set(RawField::Volume, std::round(1e6 * (1.0 + 4.0 * rng.uniform01())));
      set(RawField::CurMktCap, cents(cap));
      set(RawField::HistoricalMktCap, cents(cap * (0.98 + 0.04 * rng.uniform01())));
      set(RawField::ShortInt, std::round(1e5 * (1.0 + rng.uniform01())));
      set(RawField::ShortIntRatio, cents(1.0 + 3.0 * rng.uniform01()));
      set(RawField::PeRatio, cents(close / eps));
      set(RawField::PbRatio, cents(2.0 + close / ts.start_price));
      set(RawField::ReturnOnAsset, cents(5.0 + 2.0 * normal(rng)));
      set(RawField::BestEps, cents(eps));
      set(RawField::BestEpsLo, cents(eps * 0.9));
      set(RawField::BestEpsHi, cents(eps * 1.1));
      set(RawField::BestCapex, cents(cap / 50.0));
      set(RawField::BestCapexLo, cents(cap / 60.0));
      set(RawField::BestCapexHi, cents(cap / 40.0));
      set(RawField::TotAnalystRec, analysts);
      set(RawField::TotBuyRec, buy);
      set(RawField::TotSellRec, sell);
      set(RawField::TotHoldRec, hold);
      set(RawField::EqyRecCons, cents(1.0 + 4.0 * buy / analysts));
      set(RawField::BestAnalystRating, cents(1.0 + 4.0 * (buy + 0.5 * hold) / analysts));
      set(RawField::BestEstLongTermGrowth, cents(8.0 + normal(rng)));
      set(RawField::BestTargetPrice, cents(close * (1.05 + 0.1 * rng.uniform01())));
      table.rows.push_back(std::move(rec));
      day += days{1};
    }
  }
  return table;
}

std::string market_csv(const MarketSpec& spec) {
  std::ostringstream out;
  ingest::write_market_csv(generate_market(spec), out);
  return out.str();
}

}  // namespace eqsig::synth
