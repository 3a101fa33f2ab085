#include "blocksight/vm/machine.hpp"

#include <cassert>
#include <limits>
#include <stdexcept>

namespace blocksight::vm {

const char* exit_kind_name(ExitKind k) {
    switch (k) {
        case ExitKind::Halted: return "halted";
        case ExitKind::Crashed: return "crashed";
        case ExitKind::TimedOut: return "timed_out";
    }
    return "?";
}

const char* crash_reason_name(CrashReason r) {
    switch (r) {
        case CrashReason::None: return "none";
        case CrashReason::DivideByZero: return "divide-by-zero";
        case CrashReason::MemoryFault: return "memory-fault";
    }
    return "?";
}

Machine::Machine(const Program& program) : program_(&program) {
    state_.memory.assign(static_cast<std::size_t>(program.memory_size), 0);
    state_.pc = {program.entry_block, 0};
}

ExitKind Machine::exit_kind() const {
    assert(finished());
    return exit_kind_;
}

void Machine::sync_clock(SimNs now) {
    if (now > state_.clock_ns) state_.clock_ns = now;
}

InsEffects Machine::resolve_effects(const Instruction& ins) const {
    InsEffects fx;
    switch (ins.op) {
        case Opcode::Load:
        case Opcode::Store:
            fx.data_addr = ins.mem.reg_mode ? wrap_add(state_.regs[ins.mem.base], ins.mem.disp)
                                            : ins.mem.disp;
            break;
        case Opcode::Br: {
            bool taken = false;
            switch (ins.cond) {
                case Cond::Eq: taken = state_.flags == Flag::Eq; break;
                case Cond::Ne: taken = state_.flags != Flag::Eq; break;
                case Cond::Lt: taken = state_.flags == Flag::Lt; break;
                case Cond::Le: taken = state_.flags != Flag::Gt; break;
                case Cond::Gt: taken = state_.flags == Flag::Gt; break;
                case Cond::Ge: taken = state_.flags != Flag::Lt; break;
            }
            fx.branch_taken = taken;
            break;
        }
        default:
            break;
    }
    return fx;
}

bool Machine::execute(const Instruction& ins, const InsEffects& fx, PortHandler& io) {
    auto& regs = state_.regs;
    switch (ins.op) {
        case Opcode::LoadI:
            regs[ins.rd] = ins.imm;
            break;
        case Opcode::Load: {
            std::int64_t addr = *fx.data_addr;
            if (addr < 0 || addr >= program_->memory_size) {
                state_.crash_reason = CrashReason::MemoryFault;
                return false;
            }
            regs[ins.rd] = state_.memory[static_cast<std::size_t>(addr)];
            break;
        }
        case Opcode::Store: {
            std::int64_t addr = *fx.data_addr;
            if (addr < 0 || addr >= program_->memory_size) {
                state_.crash_reason = CrashReason::MemoryFault;
                return false;
            }
            state_.memory[static_cast<std::size_t>(addr)] = regs[ins.ra];
            break;
        }
        case Opcode::Mov:
            regs[ins.rd] = regs[ins.ra];
            break;
        case Opcode::Add:
            regs[ins.rd] = wrap_add(regs[ins.ra], regs[ins.rb]);
            break;
        case Opcode::Sub:
            regs[ins.rd] = wrap_sub(regs[ins.ra], regs[ins.rb]);
            break;
        case Opcode::Mul:
            regs[ins.rd] = wrap_mul(regs[ins.ra], regs[ins.rb]);
            break;
        case Opcode::Div: {
            if (regs[ins.rb] == 0) {
                state_.crash_reason = CrashReason::DivideByZero;
                return false;
            }
            // INT64_MIN / -1 overflows; define it to wrap to INT64_MIN.
            if (regs[ins.ra] == std::numeric_limits<std::int64_t>::min() && regs[ins.rb] == -1)
                regs[ins.rd] = regs[ins.ra];
            else
                regs[ins.rd] = regs[ins.ra] / regs[ins.rb];
            break;
        }
        case Opcode::Cmp:
            state_.flags = regs[ins.ra] < regs[ins.rb]   ? Flag::Lt
                           : regs[ins.ra] == regs[ins.rb] ? Flag::Eq
                                                          : Flag::Gt;
            break;
        case Opcode::In:
            regs[ins.rd] = io.read(ins.port);
            break;
        case Opcode::Out:
            io.write(ins.port, regs[ins.ra]);
            break;
        case Opcode::Sleep:
            state_.clock_ns += ins.sleep_ns;
            break;
        case Opcode::Br:
        case Opcode::Jmp:
        case Opcode::Nop:
        case Opcode::Halt:
            break;
    }
    return true;
}

void Machine::finish(Status status, ExitKind kind, ExecutionHooks* hooks) {
    state_.status = status;
    exit_kind_ = kind;
    if (hooks && !run_end_delivered_) {
        run_end_delivered_ = true;
        hooks->on_run_end(state_, kind);
    }
}

void Machine::abort_timed_out(ExecutionHooks* hooks) {
    if (!finished()) finish(Status::TimedOut, ExitKind::TimedOut, hooks);
}

Machine::StepOutcome Machine::step_internal(PortHandler& io, ExecutionHooks* hooks,
                                            const RunLimits& limits) {
    const BasicBlock& block = program_->blocks[static_cast<std::size_t>(state_.pc.block)];
    if (!block_entered_) {
        plan_ = hooks ? hooks->on_block_enter(block) : BlockPlan::BlockLevel;
        block_entered_ = true;
    }
    const int offset = state_.pc.offset;
    const Instruction& ins = block.instructions[static_cast<std::size_t>(offset)];
    const InsEffects fx = resolve_effects(ins);
    if (hooks && plan_ == BlockPlan::PerInstruction)
        hooks->on_instruction(block, offset, ins, fx);

    if (!execute(ins, fx, io)) {
        // pc keeps pointing at the faulting instruction; it was observed
        // and counts as executed.
        state_.instructions_retired += 1;
        finish(Status::Crashed, ExitKind::Crashed, hooks);
        return StepOutcome::Finished;
    }
    state_.instructions_retired += 1;

    const bool is_last = offset + 1 == static_cast<int>(block.instructions.size());
    if (is_last) {
        if (hooks) hooks->on_block_exit(block, fx);
        block_entered_ = false;
        switch (ins.op) {
            case Opcode::Jmp:
                state_.pc = {ins.target, 0};
                break;
            case Opcode::Br:
                state_.pc = *fx.branch_taken ? Pc{ins.target, 0} : Pc{block.id + 1, 0};
                break;
            case Opcode::Halt:
                state_.pc = {block.id, offset};
                break;
            default:
                state_.pc = {block.id + 1, 0};
                break;
        }
    } else {
        state_.pc.offset += 1;
    }

    if (ins.op == Opcode::Halt) {
        finish(Status::Halted, ExitKind::Halted, hooks);
        return StepOutcome::Finished;
    }
    if (ins.op == Opcode::Sleep) {
        if (state_.clock_ns > limits.max_sim_ns) {
            finish(Status::TimedOut, ExitKind::TimedOut, hooks);
            return StepOutcome::Finished;
        }
        return StepOutcome::Slept;
    }
    return StepOutcome::Continue;
}

Yield Machine::resume(PortHandler& io, ExecutionHooks* hooks, const RunLimits& limits) {
    while (state_.status == Status::Running) {
        if (state_.instructions_retired >= limits.max_instructions) {
            finish(Status::TimedOut, ExitKind::TimedOut, hooks);
            return Yield::Finished;
        }
        switch (step_internal(io, hooks, limits)) {
            case StepOutcome::Continue: break;
            case StepOutcome::Slept: return Yield::Slept;
            case StepOutcome::Finished: return Yield::Finished;
        }
    }
    return Yield::Finished;
}

void Machine::step(PortHandler& io, ExecutionHooks* hooks) {
    if (finished()) throw std::logic_error("step on a finished machine");
    RunLimits unbounded;
    unbounded.max_instructions = std::numeric_limits<std::int64_t>::max();
    unbounded.max_sim_ns = std::numeric_limits<SimNs>::max();
    step_internal(io, hooks, unbounded);
}

RunResult run(const Program& program, PortHandler& io, const RunLimits& limits,
              ExecutionHooks* hooks) {
    Machine m(program);
    while (m.resume(io, hooks, limits) == Yield::Slept) {
    }
    return {m.state(), m.exit_kind()};
}

}  // namespace blocksight::vm
