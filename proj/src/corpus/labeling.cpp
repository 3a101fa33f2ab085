#include "blocksight/corpus/labeling.hpp"

namespace blocksight::corpus {

int label_run(const robosim::Trajectory& trajectory, const robosim::Mission& mission,
              vm::ExitKind exit) {
    if (exit != vm::ExitKind::Halted) return kFail;
    if (trajectory.samples.empty()) return kFail;
    return robosim::compute_metrics(trajectory, mission).reached_all ? kPass : kFail;
}

}  // namespace blocksight::corpus
