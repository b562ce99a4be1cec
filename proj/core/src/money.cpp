#include "eqsig/money.hpp"

#include <cstdio>
#include <cstdlib>

namespace eqsig {

std::string Money::to_string() const {
  const std::int64_t magnitude = std::llabs(ticks_);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s%lld.%04lld", ticks_ < 0 ? "-" : "",
                static_cast<long long>(magnitude / kTicksPerDollar),
                static_cast<long long>(magnitude % kTicksPerDollar));
  return buf;
}

}  // namespace eqsig
