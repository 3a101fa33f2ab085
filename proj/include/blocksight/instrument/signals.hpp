#ifndef BLOCKSIGHT_INSTRUMENT_SIGNALS_HPP
#define BLOCKSIGHT_INSTRUMENT_SIGNALS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "blocksight/common/sim_time.hpp"

namespace blocksight::instrument {

inline constexpr int kNumSignals = 26;

// Undefined address extremes carry this sentinel until the first event of
// their kind occurs; Min/Max/Diff switch to real values together.
inline constexpr std::int64_t kNoAddr = -1;

// The 26-signal cumulative summary of one execution. Every field counts from
// execution start. The instruction-category counts partition InsCount:
// WrTmp + Store + Exit + Jump + Cmp + OutPort + Nop + HaltSeen == InsCount.
struct SignalSummary {
    // counts
    std::int64_t ins_count = 0;           // InsCount
    std::int64_t load_count = 0;          // LoadCount
    std::int64_t store_count = 0;         // StoreCount
    std::int64_t wrtmp_count = 0;         // WrTmpCount: register-writing instructions
    std::int64_t exit_count = 0;          // ExitCount: conditional branches executed
    std::int64_t branch_taken_count = 0;  // BranchTakenCount
    std::int64_t jump_count = 0;          // JumpCount
    std::int64_t sb_enter = 0;            // SBEnter: blocks entered
    std::int64_t sb_exit = 0;             // SBExit: blocks completed
    std::int64_t alu_count = 0;           // ALUCount: Add/Sub/Mul/Div
    std::int64_t imm_count = 0;           // ImmCount: LoadI
    std::int64_t cmp_count = 0;           // CmpCount
    std::int64_t mov_count = 0;           // MovCount
    std::int64_t in_port_count = 0;       // InPortCount
    std::int64_t out_port_count = 0;      // OutPortCount
    std::int64_t nop_count = 0;           // NopCount: Nop and Sleep bookkeeping events
    std::int64_t halt_seen = 0;           // HaltSeen: 0/1
    // address extremes
    std::int64_t min_ins_addr = kNoAddr;
    std::int64_t max_ins_addr = kNoAddr;
    std::int64_t ins_addr_diff = kNoAddr;
    std::int64_t min_load_addr = kNoAddr;
    std::int64_t max_load_addr = kNoAddr;
    std::int64_t load_addr_diff = kNoAddr;
    std::int64_t min_store_addr = kNoAddr;
    std::int64_t max_store_addr = kNoAddr;
    std::int64_t store_addr_diff = kNoAddr;

    bool operator==(const SignalSummary&) const = default;

    std::array<std::int64_t, kNumSignals> to_array() const;
    static SignalSummary from_array(const std::array<std::int64_t, kNumSignals>& a);
};

// Canonical signal order; CSV columns and feature indices follow it.
const std::array<std::string, kNumSignals>& signal_names();

// Cumulative summaries emitted every interval_size instructions, plus the
// summary at execution end regardless of alignment.
struct SummaryStream {
    std::int64_t interval_size = 10'000;

    struct Entry {
        std::int64_t instructions_executed = 0;
        SignalSummary summary;

        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> entries;
    SignalSummary final_summary;

    bool operator==(const SummaryStream&) const = default;
};

enum class Mode : std::uint8_t { None, NaivePerInstruction, Optimized };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& name);

}  // namespace blocksight::instrument

#endif
