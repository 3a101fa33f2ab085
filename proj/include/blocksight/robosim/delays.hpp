#ifndef BLOCKSIGHT_ROBOSIM_DELAYS_HPP
#define BLOCKSIGHT_ROBOSIM_DELAYS_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "blocksight/common/sim_time.hpp"
#include "blocksight/vm/program.hpp"

namespace blocksight::robosim {

// Delay one topic's messages by a constant via interception. Grid values are
// 0 or powers of two from 2^-8 s up to 1 s.
struct TopicInterceptDelay {
    std::string topic;
    SimNs delay_ns = 0;
};

// Insert SLEEP before block terminators with a seeded weighted coin flip.
// Weight in [0.1, 1.0]; delays are powers of two from 2^-9 s up to 8 s.
struct SleepInsertionDelay {
    double weight = 1.0;
    SimNs delay_ns = 0;
    std::uint64_t seed = 0;
};

using DelayConfig = std::variant<TopicInterceptDelay, SleepInsertionDelay>;

bool valid_topic_delay(SimNs delay_ns);
bool valid_sleep_delay(SimNs delay_ns);

// Throws std::invalid_argument if the config violates its grid or weight
// bounds.
void check_delay_config(const DelayConfig& config);

// The experiment grids, smallest to largest.
std::vector<SimNs> topic_delay_grid();   // 2^-8 .. 2^0 seconds
std::vector<SimNs> sleep_delay_grid();   // 2^-9 .. 2^3 seconds

// For every block-terminating Br/Jmp/Halt, flips a seeded weighted coin and
// on heads inserts a SLEEP immediately before the terminator. The result is
// relaid out and still validates.
vm::Program insert_sleeps(const vm::Program& program, double weight, SimNs delay_ns,
                          std::uint64_t seed);

// Terminator count, for sizing expectations about insert_sleeps.
int count_terminators(const vm::Program& program);

}  // namespace blocksight::robosim

#endif
