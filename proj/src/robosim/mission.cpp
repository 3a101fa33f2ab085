#include "blocksight/robosim/mission.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace blocksight::robosim {

void check_mission(const Mission& mission) {
    if (mission.waypoints.size() < 2)
        throw std::invalid_argument("mission needs at least 2 waypoints: " + mission.id);
    if (!(mission.tolerance_m > 0.0))
        throw std::invalid_argument("mission tolerance must be positive: " + mission.id);
}

Mission parse_mission(const std::string& text, const std::string& id, double tolerance_m) {
    Mission m;
    m.id = id;
    m.tolerance_m = tolerance_m;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;  // blank
        ls.clear();
        ls.str(line);
        double x, y;
        std::string extra;
        if (!(ls >> x >> y) || (ls >> extra))
            throw std::invalid_argument(id + " line " + std::to_string(line_no) +
                                        ": expected 'x y'");
        m.waypoints.emplace_back(x, y);
    }
    if (m.waypoints.empty()) throw std::invalid_argument(id + ": no waypoints");
    // The final destination is the return to the first one.
    m.waypoints.push_back(m.waypoints.front());
    check_mission(m);
    return m;
}

Mission load_mission(const std::string& path, double tolerance_m) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open mission file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    std::string id = path;
    if (auto slash = id.find_last_of('/'); slash != std::string::npos) id.erase(0, slash + 1);
    if (auto dot = id.find_last_of('.'); dot != std::string::npos) id.erase(dot);
    return parse_mission(os.str(), id, tolerance_m);
}

std::string trajectory_to_csv(const Trajectory& trajectory) {
    std::string out = "t,x,y\n";
    char buf[96];
    for (const auto& s : trajectory.samples) {
        std::snprintf(buf, sizeof buf, "%.3f,%.6f,%.6f\n", s.t, s.x, s.y);
        out += buf;
    }
    return out;
}

namespace {

double dist(double ax, double ay, double bx, double by) {
    return std::hypot(ax - bx, ay - by);
}

}  // namespace

TrajectoryMetrics compute_metrics(const Trajectory& trajectory, const Mission& mission) {
    if (trajectory.samples.empty()) throw std::invalid_argument("empty trajectory");
    TrajectoryMetrics m;
    m.reached_all = true;
    for (const auto& [wx, wy] : mission.waypoints) {
        double best = dist(trajectory.samples[0].x, trajectory.samples[0].y, wx, wy);
        for (const auto& s : trajectory.samples) best = std::min(best, dist(s.x, s.y, wx, wy));
        m.min_dist.push_back(best);
        m.sum += best;
        if (best > mission.tolerance_m) m.reached_all = false;
    }
    m.mean = m.sum / static_cast<double>(m.min_dist.size());
    const auto& last = trajectory.samples.back();
    m.final_dist = dist(last.x, last.y, mission.waypoints.back().first,
                        mission.waypoints.back().second);
    if (m.reached_all) m.completion_s = trajectory.completion_s;
    return m;
}

void mark_reached(Trajectory& trajectory, const Mission& mission) {
    TrajectoryMetrics m = compute_metrics(trajectory, mission);
    trajectory.reached.clear();
    for (double d : m.min_dist) trajectory.reached.push_back(d <= mission.tolerance_m);
}

}  // namespace blocksight::robosim
