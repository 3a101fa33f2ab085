#ifndef BLOCKSIGHT_VM_VALIDATE_HPP
#define BLOCKSIGHT_VM_VALIDATE_HPP

#include <string>
#include <vector>

#include "blocksight/vm/program.hpp"

namespace blocksight::vm {

// A structural violation found by validate(). Defects are data, not errors:
// mutation produces invalid programs on purpose and the corpus builder
// filters on them.
struct Defect {
    int block = -1;    // -1 for program-level defects
    int offset = -1;   // -1 for block-level defects
    std::string message;
};

struct ValidationReport {
    std::vector<Defect> defects;

    bool ok() const { return defects.empty(); }
    std::string to_string() const;
};

ValidationReport validate(const Program& program);

}  // namespace blocksight::vm

#endif
