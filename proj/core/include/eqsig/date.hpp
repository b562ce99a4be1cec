#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace eqsig {

using Date = std::chrono::year_month_day;

// Strict YYYY-MM-DD; anything else (including impossible calendar dates)
// yields nullopt.
std::optional<Date> parse_iso_date(std::string_view text);
std::string format_iso_date(const Date& date);

}  // namespace eqsig
