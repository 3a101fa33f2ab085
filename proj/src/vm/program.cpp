#include "blocksight/vm/program.hpp"

namespace blocksight::vm {

const char* mnemonic(Opcode op) {
    switch (op) {
        case Opcode::LoadI: return "LOADI";
        case Opcode::Load: return "LOAD";
        case Opcode::Store: return "STORE";
        case Opcode::Mov: return "MOV";
        case Opcode::Add: return "ADD";
        case Opcode::Sub: return "SUB";
        case Opcode::Mul: return "MUL";
        case Opcode::Div: return "DIV";
        case Opcode::Cmp: return "CMP";
        case Opcode::Br: return "BR";
        case Opcode::Jmp: return "JMP";
        case Opcode::In: return "IN";
        case Opcode::Out: return "OUT";
        case Opcode::Sleep: return "SLEEP";
        case Opcode::Nop: return "NOP";
        case Opcode::Halt: return "HALT";
    }
    return "?";
}

const char* cond_name(Cond c) {
    switch (c) {
        case Cond::Eq: return "EQ";
        case Cond::Ne: return "NE";
        case Cond::Lt: return "LT";
        case Cond::Le: return "LE";
        case Cond::Gt: return "GT";
        case Cond::Ge: return "GE";
    }
    return "?";
}

Cond invert(Cond c) {
    switch (c) {
        case Cond::Eq: return Cond::Ne;
        case Cond::Ne: return Cond::Eq;
        case Cond::Lt: return Cond::Ge;
        case Cond::Le: return Cond::Gt;
        case Cond::Gt: return Cond::Le;
        case Cond::Ge: return Cond::Lt;
    }
    return c;
}

void relayout(Program& program) {
    std::int64_t addr = program.code_base;
    int id = 0;
    for (auto& block : program.blocks) {
        block.id = id++;
        block.start_addr = addr;
        addr += static_cast<std::int64_t>(block.instructions.size());
    }
}

}  // namespace blocksight::vm
