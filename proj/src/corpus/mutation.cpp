#include "blocksight/corpus/mutation.hpp"

#include <algorithm>
#include <stdexcept>

namespace blocksight::corpus {

const char* mutation_kind_name(MutationKind k) {
    switch (k) {
        case MutationKind::ArithSwap: return "arith_swap";
        case MutationKind::ConstPerturb: return "const_perturb";
        case MutationKind::BranchFlip: return "branch_flip";
        case MutationKind::InstrDelete: return "instr_delete";
        case MutationKind::AddrPerturb: return "addr_perturb";
    }
    return "?";
}

std::string operator_name(MutationKind kind, int variant) {
    std::string name = mutation_kind_name(kind);
    if (kind == MutationKind::ConstPerturb) {
        static const char* suffix[] = {"plus1", "minus1", "double", "zero"};
        name += std::string(":") + suffix[variant];
    } else if (kind == MutationKind::AddrPerturb) {
        name += variant == 0 ? ":plus1" : ":minus1";
    }
    return name;
}

namespace {

vm::Opcode arith_swap(vm::Opcode op) {
    switch (op) {
        case vm::Opcode::Add: return vm::Opcode::Sub;
        case vm::Opcode::Sub: return vm::Opcode::Add;
        case vm::Opcode::Mul: return vm::Opcode::Div;
        case vm::Opcode::Div: return vm::Opcode::Mul;
        default: return op;
    }
}

void apply(vm::Instruction& ins, MutationKind kind, int variant) {
    switch (kind) {
        case MutationKind::ArithSwap:
            ins.op = arith_swap(ins.op);
            break;
        case MutationKind::ConstPerturb:
            switch (variant) {
                case 0: ins.imm = vm::wrap_add(ins.imm, 1); break;
                case 1: ins.imm = vm::wrap_sub(ins.imm, 1); break;
                case 2: ins.imm = vm::wrap_mul(ins.imm, 2); break;
                default: ins.imm = 0; break;
            }
            break;
        case MutationKind::BranchFlip:
            ins.cond = vm::invert(ins.cond);
            break;
        case MutationKind::InstrDelete:
            ins = vm::Instruction{};  // NOP
            break;
        case MutationKind::AddrPerturb:
            ins.mem.disp = variant == 0 ? ins.mem.disp + 1 : ins.mem.disp - 1;
            break;
    }
}

struct Application {
    MutationKind kind;
    int variant;
};

std::vector<Application> applications_for(const vm::Instruction& ins) {
    std::vector<Application> out;
    if (vm::is_alu(ins.op)) out.push_back({MutationKind::ArithSwap, 0});
    if (ins.op == vm::Opcode::LoadI)
        for (int v = 0; v < 4; ++v) out.push_back({MutationKind::ConstPerturb, v});
    if (ins.op == vm::Opcode::Br) out.push_back({MutationKind::BranchFlip, 0});
    out.push_back({MutationKind::InstrDelete, 0});
    if (ins.op == vm::Opcode::Load || ins.op == vm::Opcode::Store)
        for (int v = 0; v < 2; ++v) out.push_back({MutationKind::AddrPerturb, v});
    return out;
}

}  // namespace

int applicable_operator_count(const vm::Instruction& ins) {
    return static_cast<int>(applications_for(ins).size());
}

MutantSet enumerate_mutants(const vm::Program& base, const std::vector<int>& core_blocks) {
    if (!vm::validate(base).ok())
        throw std::invalid_argument("base program must pass validation");

    MutantSet set;
    int counter = 0;
    auto in_core = [&](int block) {
        return core_blocks.empty() ||
               std::find(core_blocks.begin(), core_blocks.end(), block) != core_blocks.end();
    };

    for (const auto& block : base.blocks) {
        if (!in_core(block.id)) continue;
        for (int offset = 0; offset < static_cast<int>(block.instructions.size()); ++offset) {
            const vm::Instruction& ins = block.instructions[static_cast<std::size_t>(offset)];
            for (const Application& app : applications_for(ins)) {
                std::string id = "m" + std::to_string(counter / 1000) +
                                 std::to_string(counter / 100 % 10) +
                                 std::to_string(counter / 10 % 10) + std::to_string(counter % 10);
                ++counter;

                vm::Program mutated = base;
                apply(mutated.blocks[static_cast<std::size_t>(block.id)]
                          .instructions[static_cast<std::size_t>(offset)],
                      app.kind, app.variant);
                vm::ValidationReport report = vm::validate(mutated);
                if (report.ok()) {
                    set.valid.push_back({id, app.kind, app.variant,
                                         {block.id, offset}, std::move(mutated)});
                } else {
                    set.excluded.push_back({id, operator_name(app.kind, app.variant),
                                            {block.id, offset}, report.to_string()});
                }
            }
        }
    }
    return set;
}

}  // namespace blocksight::corpus
