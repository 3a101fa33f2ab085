#include "blocksight/robosim/world.hpp"

#include <cmath>

namespace blocksight::robosim {

Pose integrate_unicycle(const Pose& pose, double v_mps, double omega_radps, double dt_s) {
    Pose out = pose;
    if (dt_s <= 0.0) return out;
    if (std::abs(omega_radps) < 1e-9) {
        out.x += v_mps * std::cos(pose.theta) * dt_s;
        out.y += v_mps * std::sin(pose.theta) * dt_s;
    } else {
        const double r = v_mps / omega_radps;
        const double theta2 = pose.theta + omega_radps * dt_s;
        out.x += r * (std::sin(theta2) - std::sin(pose.theta));
        out.y -= r * (std::cos(theta2) - std::cos(pose.theta));
        out.theta = theta2;
    }
    return out;
}

}  // namespace blocksight::robosim
