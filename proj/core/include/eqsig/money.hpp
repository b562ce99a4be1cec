#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace eqsig {

// Fixed-point USD amount in units of $0.0001.
class Money {
 public:
  static constexpr std::int64_t kTicksPerDollar = 10'000;

  constexpr Money() = default;
  static constexpr Money from_ticks(std::int64_t ticks) { return Money(ticks); }
  // Rounds to the nearest tick.
  static Money from_dollars(double dollars) {
    return Money(static_cast<std::int64_t>(std::llround(dollars * kTicksPerDollar)));
  }

  constexpr std::int64_t ticks() const { return ticks_; }
  constexpr double dollars() const { return static_cast<double>(ticks_) / kTicksPerDollar; }

  // Plain decimal with four fractional digits, e.g. "-0.0200".
  std::string to_string() const;

  constexpr Money operator+(Money o) const { return Money(ticks_ + o.ticks_); }
  constexpr Money operator-(Money o) const { return Money(ticks_ - o.ticks_); }
  constexpr Money operator-() const { return Money(-ticks_); }
  constexpr Money operator*(std::int64_t k) const { return Money(ticks_ * k); }
  constexpr Money& operator+=(Money o) {
    ticks_ += o.ticks_;
    return *this;
  }

  friend constexpr auto operator<=>(Money, Money) = default;

 private:
  constexpr explicit Money(std::int64_t ticks) : ticks_(ticks) {}
  std::int64_t ticks_ = 0;
};

}  // namespace eqsig
