#include "program_gen.hpp"

#include "blocksight/common/rng.hpp"

namespace blocksight::test {

namespace {

vm::Instruction random_body_instruction(Rng& rng, std::int64_t memory_size) {
    vm::Instruction ins;
    auto reg = [&] { return static_cast<int>(uniform_below(rng, vm::kNumRegisters)); };
    switch (uniform_below(rng, 12)) {
        case 0:
            ins.op = vm::Opcode::LoadI;
            ins.rd = reg();
            ins.imm = static_cast<std::int64_t>(uniform_below(rng, 2000)) - 1000;
            break;
        case 1:
        case 2: {
            ins.op = uniform_below(rng, 2) ? vm::Opcode::Load : vm::Opcode::Store;
            if (ins.op == vm::Opcode::Load) ins.rd = reg();
            else ins.ra = reg();
            if (uniform_below(rng, 100) < 35) {
                ins.mem.reg_mode = true;
                ins.mem.base = reg();
                ins.mem.disp = static_cast<std::int64_t>(uniform_below(rng, 8)) - 2;
            } else {
                ins.mem.reg_mode = false;
                ins.mem.disp = static_cast<std::int64_t>(uniform_below(
                    rng, static_cast<std::uint64_t>(memory_size)));
            }
            break;
        }
        case 3:
            ins.op = vm::Opcode::Mov;
            ins.rd = reg();
            ins.ra = reg();
            break;
        case 4:
        case 5: {
            static const vm::Opcode alu[] = {vm::Opcode::Add, vm::Opcode::Sub, vm::Opcode::Mul,
                                             vm::Opcode::Div};
            ins.op = alu[uniform_below(rng, 4)];
            ins.rd = reg();
            ins.ra = reg();
            // Divisors come from the low registers the preamble seeds, so
            // not every division faults immediately.
            ins.rb = ins.op == vm::Opcode::Div ? static_cast<int>(uniform_below(rng, 4)) : reg();
            break;
        }
        case 6:
            ins.op = vm::Opcode::Cmp;
            ins.ra = reg();
            ins.rb = reg();
            break;
        case 7:
            ins.op = vm::Opcode::In;
            ins.rd = reg();
            ins.port = static_cast<int>(uniform_below(rng, 4));
            break;
        case 8:
            ins.op = vm::Opcode::Out;
            ins.ra = reg();
            ins.port = static_cast<int>(uniform_below(rng, 4));
            break;
        case 9:
            ins.op = vm::Opcode::Sleep;
            ins.sleep_ns = static_cast<SimNs>(uniform_below(rng, 5)) * 1'000'000;
            break;
        default:
            ins.op = vm::Opcode::Nop;
            break;
    }
    return ins;
}

}  // namespace

vm::Program random_program(std::uint64_t seed) {
    Rng rng(seed);
    vm::Program p;
    p.memory_size = 8 + static_cast<std::int64_t>(uniform_below(rng, 57));
    p.meta.name = "gen" + std::to_string(seed);
    p.meta.version = "v1";

    const int n_blocks = 1 + static_cast<int>(uniform_below(rng, 8));
    for (int b = 0; b < n_blocks; ++b) {
        vm::BasicBlock block;
        if (b == 0) {
            for (int r = 0; r < 4; ++r) {
                vm::Instruction seed_reg;
                seed_reg.op = vm::Opcode::LoadI;
                seed_reg.rd = r;
                seed_reg.imm = 1 + static_cast<std::int64_t>(uniform_below(rng, 9));
                block.instructions.push_back(seed_reg);
            }
        }
        const int body = static_cast<int>(uniform_below(rng, 7));
        for (int i = 0; i < body; ++i)
            block.instructions.push_back(random_body_instruction(rng, p.memory_size));

        const bool last = b + 1 == n_blocks;
        vm::Instruction term;
        const std::uint64_t pick = uniform_below(rng, last ? 2 : 5);
        if (last || pick == 0) {
            term.op = uniform_below(rng, 4) == 0 || last ? vm::Opcode::Halt : vm::Opcode::Jmp;
            if (term.op == vm::Opcode::Jmp)
                term.target = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_blocks)));
            block.instructions.push_back(term);
        } else if (pick == 1 || pick == 2) {
            term.op = vm::Opcode::Br;
            static const vm::Cond conds[] = {vm::Cond::Eq, vm::Cond::Ne, vm::Cond::Lt,
                                             vm::Cond::Le, vm::Cond::Gt, vm::Cond::Ge};
            term.cond = conds[uniform_below(rng, 6)];
            term.target = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_blocks)));
            block.instructions.push_back(term);
        } else if (pick == 3) {
            term.op = vm::Opcode::Jmp;
            term.target = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_blocks)));
            block.instructions.push_back(term);
        } else if (block.instructions.empty()) {
            block.instructions.push_back(vm::Instruction{});  // NOP then fallthrough
        }
        p.blocks.push_back(std::move(block));
    }
    vm::relayout(p);
    return p;
}

}  // namespace blocksight::test
