#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace eqsig {

// Numerical equivalents double as array indices throughout.
enum class Label : std::uint8_t { Sell = 0, Hold = 1, Buy = 2 };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kAllLabels{Label::Sell, Label::Hold, Label::Buy};

constexpr std::size_t index_of(Label label) { return static_cast<std::size_t>(label); }

std::string_view to_string(Label label);
std::optional<Label> label_from_int(int value);

using ClassCounts = std::array<std::size_t, kNumLabels>;

// Argmax over the three counts; any tie for the maximum resolves to Hold.
Label majority_label(const ClassCounts& counts);

}  // namespace eqsig
