#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eqsig::csv {

// Splits one CSV record. Double-quoted fields may contain commas and doubled
// quotes; a trailing '\r' is stripped.
std::vector<std::string> split_line(std::string_view line);

// Quotes a field only when it needs it.
std::string escape_field(std::string_view field);

std::string join_line(const std::vector<std::string>& fields);

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

// Accepts finite decimal numbers with optional surrounding blanks; anything
// else (including nan/inf) is nullopt.
std::optional<double> parse_double(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace eqsig::csv
