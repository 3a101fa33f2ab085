#ifndef BLOCKSIGHT_ROBOSIM_MISSION_HPP
#define BLOCKSIGHT_ROBOSIM_MISSION_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blocksight::robosim {

// Waypoint plan in meters. The final waypoint is the return to the first
// one; mission files list each point once and the loader appends the home
// return.
struct Mission {
    std::string id;
    std::vector<std::pair<double, double>> waypoints;
    double tolerance_m = 1.0;
};

// Throws std::invalid_argument when invariants fail (< 2 waypoints,
// non-positive tolerance).
void check_mission(const Mission& mission);

// Plain text, one "x y" pair per line, '#' comments allowed.
Mission load_mission(const std::string& path, double tolerance_m = 1.0);
Mission parse_mission(const std::string& text, const std::string& id, double tolerance_m = 1.0);

// Ground-truth robot path sampled at the odometry rate.
struct Trajectory {
    struct Sample {
        double t = 0.0;  // seconds, strictly increasing
        double x = 0.0;
        double y = 0.0;
    };
    std::vector<Sample> samples;
    std::optional<double> completion_s;  // goal sequence exhausted at this time
    std::vector<bool> reached;           // per waypoint, within tolerance
};

std::string trajectory_to_csv(const Trajectory& trajectory);

struct TrajectoryMetrics {
    std::vector<double> min_dist;  // closest approach per waypoint
    double sum = 0.0;
    double mean = 0.0;
    double final_dist = 0.0;  // last sample to final waypoint
    bool reached_all = false;
    std::optional<double> completion_s;
};

TrajectoryMetrics compute_metrics(const Trajectory& trajectory, const Mission& mission);

// Fills trajectory.reached from the mission tolerance.
void mark_reached(Trajectory& trajectory, const Mission& mission);

}  // namespace blocksight::robosim

#endif
