#ifndef BLOCKSIGHT_COMMON_SIM_TIME_HPP
#define BLOCKSIGHT_COMMON_SIM_TIME_HPP

#include <cstdint>
#include <string>

namespace blocksight {

// Simulated time is carried as integer nanoseconds everywhere. The delay
// grids used by the experiments are powers of two seconds down to 2^-9,
// and 10^9 is divisible by 2^9, so every grid value is exact in ns and
// event ordering never depends on floating-point rounding.
using SimNs = std::int64_t;

inline constexpr SimNs kNsPerSecond = 1'000'000'000;

inline constexpr double ns_to_seconds(SimNs ns) {
    return static_cast<double>(ns) / 1e9;
}

// Parses a non-negative decimal seconds literal ("0.1", "8", "0.001953125")
// into nanoseconds with pure integer arithmetic. Returns false on malformed
// input or more than 9 fractional digits.
bool parse_seconds(const std::string& text, SimNs& out_ns);

// Canonical decimal rendering, shortest form ("0.1", "8", "0.001953125").
std::string format_seconds(SimNs ns);

}  // namespace blocksight

#endif
