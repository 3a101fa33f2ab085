#include "trace_oracle.hpp"

namespace blocksight::test {

namespace {

void bump_extreme(std::int64_t addr, std::int64_t& min_v, std::int64_t& max_v,
                  std::int64_t& diff) {
    if (min_v == instrument::kNoAddr) {
        min_v = max_v = addr;
    } else {
        if (addr < min_v) min_v = addr;
        if (addr > max_v) max_v = addr;
    }
    diff = max_v - min_v;
}

}  // namespace

instrument::SummaryStream replay_signals(const std::vector<instrument::TraceEvent>& events,
                                         std::int64_t interval_size) {
    instrument::SummaryStream stream;
    stream.interval_size = interval_size;
    instrument::SignalSummary s;

    for (const auto& e : events) {
        switch (e.kind) {
            case instrument::TraceEvent::Kind::BlockEnter:
                s.sb_enter += 1;
                continue;
            case instrument::TraceEvent::Kind::BlockExit:
                s.sb_exit += 1;
                continue;
            case instrument::TraceEvent::Kind::Instruction:
                break;
        }

        s.ins_count += 1;
        bump_extreme(e.flat_addr, s.min_ins_addr, s.max_ins_addr, s.ins_addr_diff);
        switch (e.op) {
            case vm::Opcode::LoadI:
                s.imm_count += 1;
                s.wrtmp_count += 1;
                break;
            case vm::Opcode::Load:
                s.load_count += 1;
                s.wrtmp_count += 1;
                if (e.data_addr)
                    bump_extreme(*e.data_addr, s.min_load_addr, s.max_load_addr,
                                 s.load_addr_diff);
                break;
            case vm::Opcode::Store:
                s.store_count += 1;
                if (e.data_addr)
                    bump_extreme(*e.data_addr, s.min_store_addr, s.max_store_addr,
                                 s.store_addr_diff);
                break;
            case vm::Opcode::Mov:
                s.mov_count += 1;
                s.wrtmp_count += 1;
                break;
            case vm::Opcode::Add:
            case vm::Opcode::Sub:
            case vm::Opcode::Mul:
            case vm::Opcode::Div:
                s.alu_count += 1;
                s.wrtmp_count += 1;
                break;
            case vm::Opcode::Cmp:
                s.cmp_count += 1;
                break;
            case vm::Opcode::Br:
                s.exit_count += 1;
                if (e.taken && *e.taken) s.branch_taken_count += 1;
                break;
            case vm::Opcode::Jmp:
                s.jump_count += 1;
                break;
            case vm::Opcode::In:
                s.in_port_count += 1;
                s.wrtmp_count += 1;
                break;
            case vm::Opcode::Out:
                s.out_port_count += 1;
                break;
            case vm::Opcode::Sleep:
            case vm::Opcode::Nop:
                s.nop_count += 1;
                break;
            case vm::Opcode::Halt:
                s.halt_seen = 1;
                break;
        }
        if (s.ins_count % interval_size == 0) stream.entries.push_back({s.ins_count, s});
    }
    stream.final_summary = s;
    return stream;
}

}  // namespace blocksight::test
