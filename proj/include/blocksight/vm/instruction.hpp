#ifndef BLOCKSIGHT_VM_INSTRUCTION_HPP
#define BLOCKSIGHT_VM_INSTRUCTION_HPP

#include <cstdint>
#include <string>

#include "blocksight/common/sim_time.hpp"

namespace blocksight::vm {

inline constexpr int kNumRegisters = 16;

enum class Opcode : std::uint8_t {
    LoadI,  // rd <- imm
    Load,   // rd <- memory[addr]
    Store,  // memory[addr] <- ra
    Mov,    // rd <- ra
    Add,    // rd <- ra + rb
    Sub,    // rd <- ra - rb
    Mul,    // rd <- ra * rb
    Div,    // rd <- ra / rb (truncating; rb == 0 crashes)
    Cmp,    // flags <- compare(ra, rb)
    Br,     // conditional branch on flags to a block
    Jmp,    // unconditional branch to a block
    In,     // rd <- io.read(port)
    Out,    // io.write(port, ra)
    Sleep,  // advance simulated clock
    Nop,
    Halt,
};

enum class Cond : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

// Memory operand of Load/Store. Absolute addresses are statically checkable;
// register mode resolves base+disp at run time and is what forces a block
// down to per-instruction instrumentation.
struct MemRef {
    bool reg_mode = false;
    int base = 0;            // register index, reg_mode only
    std::int64_t disp = 0;   // absolute address, or displacement in reg_mode

    bool operator==(const MemRef&) const = default;
};

struct Instruction {
    Opcode op = Opcode::Nop;
    int rd = -1;
    int ra = -1;
    int rb = -1;
    std::int64_t imm = 0;   // LoadI
    MemRef mem{};           // Load/Store
    Cond cond = Cond::Eq;   // Br
    int target = -1;        // Br/Jmp block index
    int port = -1;          // In/Out
    SimNs sleep_ns = 0;     // Sleep

    bool operator==(const Instruction&) const = default;
};

// Br/Jmp/Halt may only appear as a block's final instruction.
inline constexpr bool is_terminator(Opcode op) {
    return op == Opcode::Br || op == Opcode::Jmp || op == Opcode::Halt;
}

inline constexpr bool is_alu(Opcode op) {
    return op == Opcode::Add || op == Opcode::Sub || op == Opcode::Mul || op == Opcode::Div;
}

// Opcodes whose primary effect is writing a general-purpose register.
inline constexpr bool writes_register(Opcode op) {
    switch (op) {
        case Opcode::LoadI:
        case Opcode::Load:
        case Opcode::Mov:
        case Opcode::Add:
        case Opcode::Sub:
        case Opcode::Mul:
        case Opcode::Div:
        case Opcode::In:
            return true;
        default:
            return false;
    }
}

const char* mnemonic(Opcode op);
const char* cond_name(Cond c);
Cond invert(Cond c);

// Wrapping two's complement arithmetic so overflow stays defined and
// platform-independent.
inline std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(b));
}
inline std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) - static_cast<std::uint64_t>(b));
}
inline std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b));
}

}  // namespace blocksight::vm

#endif
