#ifndef BLOCKSIGHT_VM_MACHINE_HPP
#define BLOCKSIGHT_VM_MACHINE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "blocksight/common/sim_time.hpp"
#include "blocksight/vm/program.hpp"

namespace blocksight::vm {

enum class Flag : std::uint8_t { Lt, Eq, Gt };

enum class Status : std::uint8_t { Running, Halted, Crashed, TimedOut };

enum class CrashReason : std::uint8_t { None, DivideByZero, MemoryFault };

// How a finished execution ended. Crashes and timeouts are recorded
// outcomes, not implementation failures.
enum class ExitKind : std::uint8_t { Halted, Crashed, TimedOut };

const char* exit_kind_name(ExitKind k);
const char* crash_reason_name(CrashReason r);

struct Pc {
    int block = 0;
    int offset = 0;

    bool operator==(const Pc&) const = default;
};

struct ExecutionState {
    std::array<std::int64_t, kNumRegisters> regs{};
    Flag flags = Flag::Eq;
    std::vector<std::int64_t> memory;
    Pc pc{};
    SimNs clock_ns = 0;
    Status status = Status::Running;
    CrashReason crash_reason = CrashReason::None;
    std::int64_t instructions_retired = 0;

    bool operator==(const ExecutionState&) const = default;
};

struct RunLimits {
    std::int64_t max_instructions = 500'000;
    SimNs max_sim_ns = 120 * kNsPerSecond;
};

// Device side of In/Out instructions.
class PortHandler {
public:
    virtual ~PortHandler() = default;
    virtual std::int64_t read(int port) = 0;
    virtual void write(int port, std::int64_t value) = 0;
};

// Runtime facts about one instruction, resolved before it executes:
// the effective data address of a Load/Store (even when it will fault)
// and whether a Br will be taken.
struct InsEffects {
    std::optional<std::int64_t> data_addr;
    std::optional<bool> branch_taken;
};

// Granularity the instrumentation wants for one execution of a block,
// chosen at block entry.
enum class BlockPlan : std::uint8_t { BlockLevel, PerInstruction };

// Observation interface. Hooks never mutate execution; the machine produces
// identical states with or without them.
class ExecutionHooks {
public:
    virtual ~ExecutionHooks() = default;
    virtual BlockPlan on_block_enter(const BasicBlock& block) = 0;
    // Fired before the instruction executes, only when the entry plan was
    // PerInstruction. A crashing instruction is still observed.
    virtual void on_instruction(const BasicBlock& block, int offset, const Instruction& ins,
                                const InsEffects& fx) = 0;
    // Fired after the block's final instruction retires.
    virtual void on_block_exit(const BasicBlock& block, const InsEffects& last_fx) = 0;
    virtual void on_run_end(const ExecutionState& state, ExitKind exit) = 0;
};

enum class Yield : std::uint8_t { Slept, Finished };

// Resumable interpreter. The discrete-event world drives it through
// resume(); plain batch runs use vm::run below. Instructions consume no
// simulated time; Sleep advances the clock and yields.
class Machine {
public:
    explicit Machine(const Program& program);

    // Executes until the program sleeps, ends, or hits a limit.
    Yield resume(PortHandler& io, ExecutionHooks* hooks, const RunLimits& limits);

    // Executes exactly one instruction (test and debugging aid).
    void step(PortHandler& io, ExecutionHooks* hooks = nullptr);

    // Marks a still-running machine as timed out (simulation clock exhausted
    // while the program slept) and delivers on_run_end.
    void abort_timed_out(ExecutionHooks* hooks);

    // Aligns the machine clock with the simulation clock it is embedded in.
    void sync_clock(SimNs now);

    const ExecutionState& state() const { return state_; }
    bool finished() const { return state_.status != Status::Running; }
    ExitKind exit_kind() const;

private:
    enum class StepOutcome : std::uint8_t { Continue, Slept, Finished };

    InsEffects resolve_effects(const Instruction& ins) const;
    bool execute(const Instruction& ins, const InsEffects& fx, PortHandler& io);
    StepOutcome step_internal(PortHandler& io, ExecutionHooks* hooks, const RunLimits& limits);
    void finish(Status status, ExitKind kind, ExecutionHooks* hooks);

    const Program* program_;
    ExecutionState state_;
    BlockPlan plan_ = BlockPlan::BlockLevel;
    bool block_entered_ = false;
    bool run_end_delivered_ = false;
    ExitKind exit_kind_ = ExitKind::Halted;
};

struct RunResult {
    ExecutionState state;
    ExitKind exit = ExitKind::Halted;
};

// Drives a validated program to completion. Deterministic given the program,
// port handler behavior, limits, and hook mode.
RunResult run(const Program& program, PortHandler& io, const RunLimits& limits = {},
              ExecutionHooks* hooks = nullptr);

}  // namespace blocksight::vm

#endif
