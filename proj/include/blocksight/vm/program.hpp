#ifndef BLOCKSIGHT_VM_PROGRAM_HPP
#define BLOCKSIGHT_VM_PROGRAM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "blocksight/vm/instruction.hpp"

namespace blocksight::vm {

inline constexpr std::int64_t kDefaultCodeBase = 0x1000;

// Single-entry straight-line region. Control leaves through the final
// instruction (Br/Jmp/Halt) or by falling through to block id+1.
struct BasicBlock {
    int id = 0;
    std::vector<Instruction> instructions;
    std::int64_t start_addr = 0;  // flat code address of the first instruction

    bool operator==(const BasicBlock&) const = default;
};

struct ProgramMeta {
    std::string name;
    std::string version;

    bool operator==(const ProgramMeta&) const = default;
};

struct Program {
    std::vector<BasicBlock> blocks;
    std::int64_t memory_size = 0;
    int entry_block = 0;
    std::int64_t code_base = kDefaultCodeBase;
    ProgramMeta meta;

    bool operator==(const Program&) const = default;

    std::int64_t total_instructions() const {
        std::int64_t n = 0;
        for (const auto& b : blocks) n += static_cast<std::int64_t>(b.instructions.size());
        return n;
    }
};

// Renumbers block ids by position and lays out flat code addresses
// contiguously from code_base, one address unit per instruction. Call after
// any structural edit (mutation, sleep insertion).
void relayout(Program& program);

}  // namespace blocksight::vm

#endif
