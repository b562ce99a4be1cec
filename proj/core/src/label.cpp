#include "eqsig/label.hpp"

#include <algorithm>

namespace eqsig {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::Sell: return "Sell";
    case Label::Hold: return "Hold";
    case Label::Buy: return "Buy";
  }
  return "?";
}

std::optional<Label> label_from_int(int value) {
  if (value < 0 || value > 2) return std::nullopt;
  return static_cast<Label>(value);
}

Label majority_label(const ClassCounts& counts) {
  const std::size_t top = *std::max_element(counts.begin(), counts.end());
  const auto winners = std::count(counts.begin(), counts.end(), top);
  if (winners > 1) return Label::Hold;
  return static_cast<Label>(std::find(counts.begin(), counts.end(), top) - counts.begin());
}

}  // namespace eqsig
