#include "blocksight/vm/validate.hpp"

#include <sstream>

namespace blocksight::vm {

namespace {

void check_register(std::vector<Defect>& out, int block, int offset, int reg, const char* role) {
    if (reg < 0 || reg >= kNumRegisters) {
        std::ostringstream os;
        os << role << " register index " << reg << " out of range";
        out.push_back({block, offset, os.str()});
    }
}

}  // namespace

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& d : defects) {
        os << "block " << d.block;
        if (d.offset >= 0) os << " ins " << d.offset;
        os << ": " << d.message << "\n";
    }
    return os.str();
}

ValidationReport validate(const Program& program) {
    ValidationReport report;
    auto& out = report.defects;

    if (program.blocks.empty()) {
        out.push_back({-1, -1, "program has no blocks"});
        return report;
    }
    if (program.memory_size < 0) out.push_back({-1, -1, "negative memory size"});
    if (program.entry_block < 0 || program.entry_block >= static_cast<int>(program.blocks.size()))
        out.push_back({-1, -1, "entry block out of range"});

    const int n_blocks = static_cast<int>(program.blocks.size());
    std::int64_t expect_addr = program.code_base;
    for (int b = 0; b < n_blocks; ++b) {
        const BasicBlock& block = program.blocks[b];
        if (block.id != b) out.push_back({b, -1, "block id does not match position"});
        if (block.start_addr != expect_addr)
            out.push_back({b, -1, "flat code addresses not contiguous"});
        expect_addr += static_cast<std::int64_t>(block.instructions.size());

        if (block.instructions.empty()) {
            out.push_back({b, -1, "empty block"});
            continue;
        }
        const int last = static_cast<int>(block.instructions.size()) - 1;
        for (int i = 0; i <= last; ++i) {
            const Instruction& ins = block.instructions[i];
            if (is_terminator(ins.op) && i != last)
                out.push_back({b, i, "control transfer inside block"});

            switch (ins.op) {
                case Opcode::LoadI:
                    check_register(out, b, i, ins.rd, "destination");
                    break;
                case Opcode::Load:
                case Opcode::Store: {
                    if (ins.op == Opcode::Load) check_register(out, b, i, ins.rd, "destination");
                    else check_register(out, b, i, ins.ra, "source");
                    if (ins.mem.reg_mode) {
                        check_register(out, b, i, ins.mem.base, "base");
                    } else if (ins.mem.disp < 0 || ins.mem.disp >= program.memory_size) {
                        std::ostringstream os;
                        os << "address " << ins.mem.disp << " out of range [0,"
                           << program.memory_size << ")";
                        out.push_back({b, i, os.str()});
                    }
                    break;
                }
                case Opcode::Mov:
                    check_register(out, b, i, ins.rd, "destination");
                    check_register(out, b, i, ins.ra, "source");
                    break;
                case Opcode::Add:
                case Opcode::Sub:
                case Opcode::Mul:
                case Opcode::Div:
                    check_register(out, b, i, ins.rd, "destination");
                    check_register(out, b, i, ins.ra, "operand");
                    check_register(out, b, i, ins.rb, "operand");
                    break;
                case Opcode::Cmp:
                    check_register(out, b, i, ins.ra, "operand");
                    check_register(out, b, i, ins.rb, "operand");
                    break;
                case Opcode::Br:
                case Opcode::Jmp:
                    if (ins.target < 0 || ins.target >= n_blocks)
                        out.push_back({b, i, "branch target out of range"});
                    break;
                case Opcode::In:
                    check_register(out, b, i, ins.rd, "destination");
                    if (ins.port < 0) out.push_back({b, i, "negative port id"});
                    break;
                case Opcode::Out:
                    check_register(out, b, i, ins.ra, "source");
                    if (ins.port < 0) out.push_back({b, i, "negative port id"});
                    break;
                case Opcode::Sleep:
                    if (ins.sleep_ns < 0) out.push_back({b, i, "negative sleep duration"});
                    break;
                case Opcode::Nop:
                case Opcode::Halt:
                    break;
            }
        }

        // Fallthrough (plain final instruction, or a not-taken Br) needs a
        // next block to land in.
        const Instruction& fin = block.instructions[last];
        const bool falls_through = !is_terminator(fin.op) || fin.op == Opcode::Br;
        if (falls_through && b + 1 >= n_blocks)
            out.push_back({b, last, "fallthrough past last block"});
    }
    return report;
}

}  // namespace blocksight::vm
