#include "blocksight/instrument/collector.hpp"

#include <cassert>
#include <chrono>
#include <limits>
#include <stdexcept>

namespace blocksight::instrument {

namespace {

void track_extreme(std::int64_t addr, std::int64_t& min_v, std::int64_t& max_v) {
    if (min_v == kNoAddr || addr < min_v) min_v = addr;
    if (max_v == kNoAddr || addr > max_v) max_v = addr;
}

void fill_diffs(SignalSummary& s) {
    s.ins_addr_diff = s.min_ins_addr == kNoAddr ? kNoAddr : s.max_ins_addr - s.min_ins_addr;
    s.load_addr_diff = s.min_load_addr == kNoAddr ? kNoAddr : s.max_load_addr - s.min_load_addr;
    s.store_addr_diff =
        s.min_store_addr == kNoAddr ? kNoAddr : s.max_store_addr - s.min_store_addr;
}

}  // namespace

Collector::Collector(const vm::Program& program, Mode mode, std::int64_t interval_size)
    : program_(&program), mode_(mode), interval_size_(interval_size),
      next_boundary_(interval_size) {
    if (mode == Mode::None) throw std::invalid_argument("collector requires an active mode");
    if (interval_size < 1) throw std::invalid_argument("interval_size must be >= 1");
    stream_.interval_size = interval_size;

    profiles_.reserve(program.blocks.size());
    for (const auto& block : program.blocks) {
        BlockProfile p;
        p.length = static_cast<std::int64_t>(block.instructions.size());
        std::int64_t addr = block.start_addr;
        for (const auto& ins : block.instructions) {
            auto& d = p.delta;
            d.ins_count += 1;
            track_extreme(addr, d.min_ins_addr, d.max_ins_addr);
            switch (ins.op) {
                case vm::Opcode::Load:
                    d.load_count += 1;
                    d.wrtmp_count += 1;
                    if (ins.mem.reg_mode) p.dynamic_addressing = true;
                    else track_extreme(ins.mem.disp, d.min_load_addr, d.max_load_addr);
                    break;
                case vm::Opcode::Store:
                    d.store_count += 1;
                    if (ins.mem.reg_mode) p.dynamic_addressing = true;
                    else track_extreme(ins.mem.disp, d.min_store_addr, d.max_store_addr);
                    break;
                case vm::Opcode::LoadI:
                    d.imm_count += 1;
                    d.wrtmp_count += 1;
                    break;
                case vm::Opcode::Mov:
                    d.mov_count += 1;
                    d.wrtmp_count += 1;
                    break;
                case vm::Opcode::Add:
                case vm::Opcode::Sub:
                case vm::Opcode::Mul:
                case vm::Opcode::Div:
                    d.alu_count += 1;
                    d.wrtmp_count += 1;
                    break;
                case vm::Opcode::Cmp:
                    d.cmp_count += 1;
                    break;
                case vm::Opcode::Br:
                    d.exit_count += 1;
                    p.ends_with_br = true;
                    break;
                case vm::Opcode::Jmp:
                    d.jump_count += 1;
                    break;
                case vm::Opcode::In:
                    d.in_port_count += 1;
                    d.wrtmp_count += 1;
                    break;
                case vm::Opcode::Out:
                    d.out_port_count += 1;
                    break;
                case vm::Opcode::Sleep:
                case vm::Opcode::Nop:
                    d.nop_count += 1;
                    break;
                case vm::Opcode::Halt:
                    d.halt_seen = 1;
                    break;
            }
            ++addr;
        }
        profiles_.push_back(std::move(p));
    }
}

SignalSummary Collector::snapshot() const {
    SignalSummary s = acc_;
    fill_diffs(s);
    return s;
}

void Collector::emit_if_due() {
    if (acc_.ins_count == next_boundary_) {
        stream_.entries.push_back({next_boundary_, snapshot()});
        next_boundary_ += interval_size_;
    }
    assert(acc_.ins_count < next_boundary_);
}

void Collector::account(const vm::Instruction& ins, std::int64_t flat_addr,
                        const std::optional<std::int64_t>& data_addr,
                        const std::optional<bool>& taken) {
    acc_.ins_count += 1;
    track_extreme(flat_addr, acc_.min_ins_addr, acc_.max_ins_addr);
    switch (ins.op) {
        case vm::Opcode::Load:
            acc_.load_count += 1;
            acc_.wrtmp_count += 1;
            if (data_addr) track_extreme(*data_addr, acc_.min_load_addr, acc_.max_load_addr);
            break;
        case vm::Opcode::Store:
            acc_.store_count += 1;
            if (data_addr) track_extreme(*data_addr, acc_.min_store_addr, acc_.max_store_addr);
            break;
        case vm::Opcode::LoadI:
            acc_.imm_count += 1;
            acc_.wrtmp_count += 1;
            break;
        case vm::Opcode::Mov:
            acc_.mov_count += 1;
            acc_.wrtmp_count += 1;
            break;
        case vm::Opcode::Add:
        case vm::Opcode::Sub:
        case vm::Opcode::Mul:
        case vm::Opcode::Div:
            acc_.alu_count += 1;
            acc_.wrtmp_count += 1;
            break;
        case vm::Opcode::Cmp:
            acc_.cmp_count += 1;
            break;
        case vm::Opcode::Br:
            acc_.exit_count += 1;
            if (taken && *taken) acc_.branch_taken_count += 1;
            break;
        case vm::Opcode::Jmp:
            acc_.jump_count += 1;
            break;
        case vm::Opcode::In:
            acc_.in_port_count += 1;
            acc_.wrtmp_count += 1;
            break;
        case vm::Opcode::Out:
            acc_.out_port_count += 1;
            break;
        case vm::Opcode::Sleep:
        case vm::Opcode::Nop:
            acc_.nop_count += 1;
            break;
        case vm::Opcode::Halt:
            acc_.halt_seen = 1;
            break;
    }
    emit_if_due();
}

void Collector::merge_delta(const BlockProfile& p) {
    const SignalSummary& d = p.delta;
    acc_.ins_count += d.ins_count;
    acc_.load_count += d.load_count;
    acc_.store_count += d.store_count;
    acc_.wrtmp_count += d.wrtmp_count;
    acc_.exit_count += d.exit_count;
    acc_.jump_count += d.jump_count;
    acc_.alu_count += d.alu_count;
    acc_.imm_count += d.imm_count;
    acc_.cmp_count += d.cmp_count;
    acc_.mov_count += d.mov_count;
    acc_.in_port_count += d.in_port_count;
    acc_.out_port_count += d.out_port_count;
    acc_.nop_count += d.nop_count;
    if (d.halt_seen) acc_.halt_seen = 1;
    if (d.min_ins_addr != kNoAddr) {
        track_extreme(d.min_ins_addr, acc_.min_ins_addr, acc_.max_ins_addr);
        track_extreme(d.max_ins_addr, acc_.min_ins_addr, acc_.max_ins_addr);
    }
    if (d.min_load_addr != kNoAddr) {
        track_extreme(d.min_load_addr, acc_.min_load_addr, acc_.max_load_addr);
        track_extreme(d.max_load_addr, acc_.min_load_addr, acc_.max_load_addr);
    }
    if (d.min_store_addr != kNoAddr) {
        track_extreme(d.min_store_addr, acc_.min_store_addr, acc_.max_store_addr);
        track_extreme(d.max_store_addr, acc_.min_store_addr, acc_.max_store_addr);
    }
}

vm::BlockPlan Collector::on_block_enter(const vm::BasicBlock& block) {
    hook_invocations_ += 1;
    acc_.sb_enter += 1;
    if (mode_ == Mode::NaivePerInstruction) return vm::BlockPlan::PerInstruction;

    const BlockProfile& p = profiles_[static_cast<std::size_t>(block.id)];
    const bool boundary_inside = next_boundary_ < acc_.ins_count + p.length;
    if (p.dynamic_addressing || boundary_inside) return vm::BlockPlan::PerInstruction;
    pending_block_ = block.id;
    return vm::BlockPlan::BlockLevel;
}

void Collector::on_instruction(const vm::BasicBlock& block, int offset,
                               const vm::Instruction& ins, const vm::InsEffects& fx) {
    hook_invocations_ += 1;
    account(ins, block.start_addr + offset, fx.data_addr, fx.branch_taken);
}

void Collector::on_block_exit(const vm::BasicBlock& block, const vm::InsEffects& last_fx) {
    hook_invocations_ += 1;
    if (pending_block_ == block.id) {
        const BlockProfile& p = profiles_[static_cast<std::size_t>(block.id)];
        merge_delta(p);
        if (p.ends_with_br && last_fx.branch_taken && *last_fx.branch_taken)
            acc_.branch_taken_count += 1;
        pending_block_ = -1;
        emit_if_due();
    }
    acc_.sb_exit += 1;
}

void Collector::on_run_end(const vm::ExecutionState& state, vm::ExitKind exit) {
    if (finalized_) return;
    finalized_ = true;
    if (pending_block_ >= 0) {
        // A BlockLevel block was cut short; account its executed prefix from
        // static facts (the plan guarantees no runtime-computed addresses and
        // no interval boundary in range).
        const vm::BasicBlock& block = program_->blocks[static_cast<std::size_t>(pending_block_)];
        int end = state.pc.offset;               // retired instructions are [0, end)
        if (exit == vm::ExitKind::Crashed) end += 1;  // the faulting one was observed
        for (int i = 0; i < end; ++i) {
            const vm::Instruction& ins = block.instructions[static_cast<std::size_t>(i)];
            std::optional<std::int64_t> addr;
            if (ins.op == vm::Opcode::Load || ins.op == vm::Opcode::Store)
                addr = ins.mem.disp;
            account(ins, block.start_addr + i, addr, std::nullopt);
        }
        pending_block_ = -1;
    }
    stream_.final_summary = snapshot();
}

CollectResult collect(const vm::Program& program, vm::PortHandler& io,
                      const vm::RunLimits& limits, Mode mode, std::int64_t interval_size) {
    Collector collector(program, mode, interval_size);
    const auto t0 = std::chrono::steady_clock::now();
    vm::RunResult r = vm::run(program, io, limits, &collector);
    const auto t1 = std::chrono::steady_clock::now();
    CollectResult out;
    out.stream = collector.stream();
    out.exit = r.exit;
    out.meter.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    out.meter.hook_invocations = collector.hook_invocations();
    out.final_state = std::move(r.state);
    return out;
}

OverheadReport measure_overhead(const vm::Program& program, const IoFactory& make_io,
                                const vm::RunLimits& limits) {
    OverheadReport report;

    auto io_none = make_io();
    const auto t0 = std::chrono::steady_clock::now();
    vm::RunResult none = vm::run(program, *io_none, limits, nullptr);
    const auto t1 = std::chrono::steady_clock::now();
    report.none_s = std::chrono::duration<double>(t1 - t0).count();

    auto io_naive = make_io();
    CollectResult naive = collect(program, *io_naive, limits, Mode::NaivePerInstruction,
                                  std::numeric_limits<std::int64_t>::max() / 2);
    report.naive_s = naive.meter.wall_seconds;
    report.naive_hooks = naive.meter.hook_invocations;

    auto io_opt = make_io();
    CollectResult opt = collect(program, *io_opt, limits, Mode::Optimized,
                                std::numeric_limits<std::int64_t>::max() / 2);
    report.optimized_s = opt.meter.wall_seconds;
    report.optimized_hooks = opt.meter.hook_invocations;

    if (!(none.state == naive.final_state) || !(none.state == opt.final_state))
        throw std::runtime_error("instrumentation modes diverged; hooks must be transparent");
    if (!(naive.stream.final_summary == opt.stream.final_summary))
        throw std::runtime_error("naive and optimized summaries diverged");
    return report;
}

vm::BlockPlan TraceRecorder::on_block_enter(const vm::BasicBlock& block) {
    TraceEvent e;
    e.kind = TraceEvent::Kind::BlockEnter;
    e.block = block.id;
    events_.push_back(e);
    return vm::BlockPlan::PerInstruction;
}

void TraceRecorder::on_instruction(const vm::BasicBlock& block, int offset,
                                   const vm::Instruction& ins, const vm::InsEffects& fx) {
    TraceEvent e;
    e.kind = TraceEvent::Kind::Instruction;
    e.block = block.id;
    e.flat_addr = block.start_addr + offset;
    e.op = ins.op;
    e.data_addr = fx.data_addr;
    e.taken = fx.branch_taken;
    events_.push_back(e);
}

void TraceRecorder::on_block_exit(const vm::BasicBlock& block, const vm::InsEffects&) {
    TraceEvent e;
    e.kind = TraceEvent::Kind::BlockExit;
    e.block = block.id;
    events_.push_back(e);
}

void TraceRecorder::on_run_end(const vm::ExecutionState&, vm::ExitKind) {}

}  // namespace blocksight::instrument
