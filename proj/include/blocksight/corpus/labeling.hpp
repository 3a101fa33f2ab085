#ifndef BLOCKSIGHT_CORPUS_LABELING_HPP
#define BLOCKSIGHT_CORPUS_LABELING_HPP

#include "blocksight/corpus/dataset.hpp"
#include "blocksight/robosim/mission.hpp"
#include "blocksight/vm/machine.hpp"

namespace blocksight::corpus {

// Physical-location oracle: pass only when the controller halted on its own
// and every waypoint was approached within tolerance. Pure function of its
// arguments.
int label_run(const robosim::Trajectory& trajectory, const robosim::Mission& mission,
              vm::ExitKind exit);

}  // namespace blocksight::corpus

#endif
