#include "blocksight/instrument/signals.hpp"

#include <stdexcept>

namespace blocksight::instrument {

std::array<std::int64_t, kNumSignals> SignalSummary::to_array() const {
    return {ins_count,      load_count,    store_count,    wrtmp_count,   exit_count,
            branch_taken_count, jump_count, sb_enter,      sb_exit,       alu_count,
            imm_count,      cmp_count,     mov_count,      in_port_count, out_port_count,
            nop_count,      halt_seen,     min_ins_addr,   max_ins_addr,  ins_addr_diff,
            min_load_addr,  max_load_addr, load_addr_diff, min_store_addr, max_store_addr,
            store_addr_diff};
}

SignalSummary SignalSummary::from_array(const std::array<std::int64_t, kNumSignals>& a) {
    SignalSummary s;
    s.ins_count = a[0];
    s.load_count = a[1];
    s.store_count = a[2];
    s.wrtmp_count = a[3];
    s.exit_count = a[4];
    s.branch_taken_count = a[5];
    s.jump_count = a[6];
    s.sb_enter = a[7];
    s.sb_exit = a[8];
    s.alu_count = a[9];
    s.imm_count = a[10];
    s.cmp_count = a[11];
    s.mov_count = a[12];
    s.in_port_count = a[13];
    s.out_port_count = a[14];
    s.nop_count = a[15];
    s.halt_seen = a[16];
    s.min_ins_addr = a[17];
    s.max_ins_addr = a[18];
    s.ins_addr_diff = a[19];
    s.min_load_addr = a[20];
    s.max_load_addr = a[21];
    s.load_addr_diff = a[22];
    s.min_store_addr = a[23];
    s.max_store_addr = a[24];
    s.store_addr_diff = a[25];
    return s;
}

const std::array<std::string, kNumSignals>& signal_names() {
    static const std::array<std::string, kNumSignals> names = {
        "InsCount",      "LoadCount",    "StoreCount",    "WrTmpCount",   "ExitCount",
        "BranchTakenCount", "JumpCount", "SBEnter",       "SBExit",       "ALUCount",
        "ImmCount",      "CmpCount",     "MovCount",      "InPortCount",  "OutPortCount",
        "NopCount",      "HaltSeen",     "MinInsAddr",    "MaxInsAddr",   "InsAddrDiff",
        "MinLoadAddr",   "MaxLoadAddr",  "LoadAddrDiff",  "MinStoreAddr", "MaxStoreAddr",
        "StoreAddrDiff"};
    return names;
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::None: return "none";
        case Mode::NaivePerInstruction: return "naive";
        case Mode::Optimized: return "optimized";
    }
    return "?";
}

Mode mode_from_name(const std::string& name) {
    if (name == "none") return Mode::None;
    if (name == "naive") return Mode::NaivePerInstruction;
    if (name == "optimized") return Mode::Optimized;
    throw std::invalid_argument("unknown instrumentation mode: " + name);
}

}  // namespace blocksight::instrument
