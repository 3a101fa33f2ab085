#ifndef BLOCKSIGHT_ROBOSIM_MISSION_RUNNER_HPP
#define BLOCKSIGHT_ROBOSIM_MISSION_RUNNER_HPP

#include <optional>
#include <string>

#include "blocksight/instrument/collector.hpp"
#include "blocksight/robosim/delays.hpp"
#include "blocksight/robosim/mission.hpp"
#include "blocksight/vm/machine.hpp"

namespace blocksight::robosim {

// Controller port map. All values are integers: millimeters, milliradians
// per second, milli-units for the heading vector.
namespace ports {
inline constexpr int kMissionDone = 0;  // in: 1 once the goal sequence is exhausted
inline constexpr int kGoalX = 1;        // in: current goal x, mm
inline constexpr int kGoalY = 2;        // in: current goal y, mm
inline constexpr int kGoalSeq = 3;      // in: 1-based goal number, 0 = none yet
inline constexpr int kOdomX = 4;        // in: latest odometry x, mm
inline constexpr int kOdomY = 5;        // in: latest odometry y, mm
inline constexpr int kHeadingX = 6;     // in: heading unit vector x * 1000
inline constexpr int kHeadingY = 7;     // in: heading unit vector y * 1000
inline constexpr int kCmdLinear = 8;    // out: latch linear velocity, mm/s
inline constexpr int kCmdAngular = 9;   // out: publish (latched v, w mrad/s)
inline constexpr int kGoalNext = 10;    // out: advance to the next waypoint
inline constexpr int kTelemetry = 11;   // out: ignored sink
}  // namespace ports

namespace topics {
inline const char* const kGoal = "/goal";
inline const char* const kOdom = "/odom";
inline const char* const kCmdVel = "/cmd_vel";
inline const char* const kGoalNext = "/goal_next";
}  // namespace topics

struct MissionRunConfig {
    std::uint64_t seed = 0;
    instrument::Mode mode = instrument::Mode::Optimized;
    std::int64_t interval_size = 10'000;
    double noise_sigma_m = 0.05;       // odometry position noise per sample
    SimNs control_period_ns = 100'000'000;  // odometry publication period, 10 Hz
    vm::RunLimits limits;              // max_sim_ns doubles as the mission time limit
    std::optional<DelayConfig> delay;
};

struct MissionResult {
    Trajectory trajectory;
    std::optional<instrument::SummaryStream> stream;  // absent in Mode::None
    vm::ExitKind exit = vm::ExitKind::Halted;
    vm::ExecutionState final_state;
    instrument::OverheadMeter meter;
    std::string topology;  // bus wiring after any interception
};

// Wires the controller program to the simulated world over the bus, runs the
// discrete-event clock until the controller exits, the goal sequence plus
// controller finish, or the simulated time limit, and records the
// ground-truth trajectory. Deterministic for a given (program, mission,
// config).
MissionResult run_mission(const vm::Program& program, const Mission& mission,
                          const MissionRunConfig& config);

struct RunOutcome {
    Trajectory trajectory;
    vm::ExitKind exit = vm::ExitKind::Halted;
};

// Fraction of runs that crashed, timed out, or never came within tolerance
// of the final waypoint (the crash proxy).
double crash_rate(const std::vector<RunOutcome>& runs, const Mission& mission);

}  // namespace blocksight::robosim

#endif
