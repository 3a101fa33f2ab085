#include "blocksight/robosim/delays.hpp"

#include <stdexcept>

#include "blocksight/common/rng.hpp"

namespace blocksight::robosim {

namespace {

std::vector<SimNs> power_of_two_grid(int k_min, int k_max) {
    std::vector<SimNs> grid;
    for (int k = k_min; k <= k_max; ++k) {
        SimNs ns = k >= 0 ? kNsPerSecond << k : kNsPerSecond >> (-k);
        grid.push_back(ns);
    }
    return grid;
}

bool in_grid(SimNs v, const std::vector<SimNs>& grid) {
    for (SimNs g : grid)
        if (g == v) return true;
    return false;
}

}  // namespace

std::vector<SimNs> topic_delay_grid() { return power_of_two_grid(-8, 0); }
std::vector<SimNs> sleep_delay_grid() { return power_of_two_grid(-9, 3); }

bool valid_topic_delay(SimNs delay_ns) {
    return delay_ns == 0 || in_grid(delay_ns, topic_delay_grid());
}

bool valid_sleep_delay(SimNs delay_ns) { return in_grid(delay_ns, sleep_delay_grid()); }

void check_delay_config(const DelayConfig& config) {
    if (const auto* t = std::get_if<TopicInterceptDelay>(&config)) {
        if (!valid_topic_delay(t->delay_ns))
            throw std::invalid_argument("topic delay outside {0} U {2^-8..2^0} s");
    } else {
        const auto& s = std::get<SleepInsertionDelay>(config);
        if (!valid_sleep_delay(s.delay_ns))
            throw std::invalid_argument("sleep delay outside {2^-9..2^3} s");
        if (s.weight < 0.1 || s.weight > 1.0)
            throw std::invalid_argument("sleep insertion weight outside [0.1, 1.0]");
    }
}

int count_terminators(const vm::Program& program) {
    int n = 0;
    for (const auto& block : program.blocks)
        if (!block.instructions.empty() && vm::is_terminator(block.instructions.back().op)) ++n;
    return n;
}

vm::Program insert_sleeps(const vm::Program& program, double weight, SimNs delay_ns,
                          std::uint64_t seed) {
    Rng rng(seed);
    vm::Program out = program;
    for (auto& block : out.blocks) {
        if (block.instructions.empty()) continue;
        if (!vm::is_terminator(block.instructions.back().op)) continue;
        if (!bernoulli(rng, weight)) continue;
        vm::Instruction sleep;
        sleep.op = vm::Opcode::Sleep;
        sleep.sleep_ns = delay_ns;
        block.instructions.insert(block.instructions.end() - 1, sleep);
    }
    vm::relayout(out);
    return out;
}

}  // namespace blocksight::robosim
