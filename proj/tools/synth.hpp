#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eqsig/ingest.hpp"

namespace eqsig::synth {

struct TickerSpec {
  std::string ticker;
  std::string sector;
  double start_price = 100.0;
};

struct MarketSpec {
  std::vector<TickerSpec> tickers;
  std::size_t days = 250;
  std::uint64_t seed = 1;
  // Daily log-return volatility.
  double volatility = 0.015;
};

// A small default universe: six tickers across three sectors.
MarketSpec default_market(std::size_t days, std::uint64_t seed);

// Random-walk closes on weekdays from 2015-01-02 with plausible values for
// every other market column. Same spec, same table.
ingest::CleanTable generate_market(const MarketSpec& spec);

std::string market_csv(const MarketSpec& spec);

}  // namespace eqsig::synth
