#ifndef BLOCKSIGHT_INSTRUMENT_COLLECTOR_HPP
#define BLOCKSIGHT_INSTRUMENT_COLLECTOR_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "blocksight/instrument/signals.hpp"
#include "blocksight/vm/machine.hpp"

namespace blocksight::instrument {

// Accumulates the 26-signal summary during a run. Hooks update a fixed
// 26-slot accumulator in place; there are no per-event logs here.
//
// Under Optimized mode a block executes with a single entry/exit hook pair
// and a precomputed signal delta, provided every fact about it is static:
// no register-addressed Load/Store, and no interval boundary falling inside
// the block (such a block is demoted to per-instruction for that execution
// so entries stay exact). Runs that end mid-block (crash, limit, simulation
// cutoff) are reconciled from the statically-known prefix at run end.
class Collector : public vm::ExecutionHooks {
public:
    Collector(const vm::Program& program, Mode mode, std::int64_t interval_size);

    vm::BlockPlan on_block_enter(const vm::BasicBlock& block) override;
    void on_instruction(const vm::BasicBlock& block, int offset, const vm::Instruction& ins,
                        const vm::InsEffects& fx) override;
    void on_block_exit(const vm::BasicBlock& block, const vm::InsEffects& last_fx) override;
    void on_run_end(const vm::ExecutionState& state, vm::ExitKind exit) override;

    const SummaryStream& stream() const { return stream_; }
    std::int64_t hook_invocations() const { return hook_invocations_; }
    SignalSummary snapshot() const;

private:
    struct BlockProfile {
        SignalSummary delta;  // static per-execution delta; no SBEnter/SBExit/BranchTaken
        std::int64_t length = 0;
        bool dynamic_addressing = false;
        bool ends_with_br = false;
    };

    void account(const vm::Instruction& ins, std::int64_t flat_addr,
                 const std::optional<std::int64_t>& data_addr,
                 const std::optional<bool>& taken);
    void merge_delta(const BlockProfile& profile);
    void emit_if_due();

    const vm::Program* program_;
    Mode mode_;
    std::int64_t interval_size_;
    std::vector<BlockProfile> profiles_;

    SignalSummary acc_;  // diffs filled only on snapshot
    SummaryStream stream_;
    std::int64_t next_boundary_;
    std::int64_t hook_invocations_ = 0;

    // Block currently executing under a BlockLevel plan, for end-of-run
    // reconciliation.
    int pending_block_ = -1;
    bool finalized_ = false;
};

struct OverheadMeter {
    double wall_seconds = 0.0;
    std::int64_t hook_invocations = 0;
};

struct CollectResult {
    SummaryStream stream;
    vm::ExitKind exit = vm::ExitKind::Halted;
    OverheadMeter meter;
    vm::ExecutionState final_state;
};

// Runs the program to completion under the given mode and returns the
// interval stream plus the final summary. Summaries up to a crash point are
// still returned. mode must not be None.
CollectResult collect(const vm::Program& program, vm::PortHandler& io,
                      const vm::RunLimits& limits, Mode mode, std::int64_t interval_size = 10'000);

// Fresh port handler per run; repeated timing needs identical io behavior.
using IoFactory = std::function<std::unique_ptr<vm::PortHandler>()>;

struct OverheadReport {
    double none_s = 0.0;
    double naive_s = 0.0;
    double optimized_s = 0.0;
    std::int64_t naive_hooks = 0;
    std::int64_t optimized_hooks = 0;
};

// Times the same execution under all three modes and verifies the final
// machine states agree (hooks observe, never mutate).
OverheadReport measure_overhead(const vm::Program& program, const IoFactory& make_io,
                                const vm::RunLimits& limits);

// Debug-mode raw event log; the independent test oracle replays it. Never
// enabled during timing runs.
struct TraceEvent {
    enum class Kind : std::uint8_t { BlockEnter, Instruction, BlockExit };
    Kind kind = Kind::Instruction;
    int block = 0;
    std::int64_t flat_addr = 0;
    vm::Opcode op = vm::Opcode::Nop;
    std::optional<std::int64_t> data_addr;
    std::optional<bool> taken;
};

class TraceRecorder : public vm::ExecutionHooks {
public:
    vm::BlockPlan on_block_enter(const vm::BasicBlock& block) override;
    void on_instruction(const vm::BasicBlock& block, int offset, const vm::Instruction& ins,
                        const vm::InsEffects& fx) override;
    void on_block_exit(const vm::BasicBlock& block, const vm::InsEffects& last_fx) override;
    void on_run_end(const vm::ExecutionState& state, vm::ExitKind exit) override;

    const std::vector<TraceEvent>& events() const { return events_; }

private:
    std::vector<TraceEvent> events_;
};

}  // namespace blocksight::instrument

#endif
