#ifndef BLOCKSIGHT_ROBOSIM_WORLD_HPP
#define BLOCKSIGHT_ROBOSIM_WORLD_HPP

namespace blocksight::robosim {

struct Pose {
    double x = 0.0;      // meters
    double y = 0.0;
    double theta = 0.0;  // radians
};

// Exact unicycle integration over dt with constant (v, omega).
Pose integrate_unicycle(const Pose& pose, double v_mps, double omega_radps, double dt_s);

}  // namespace blocksight::robosim

#endif
