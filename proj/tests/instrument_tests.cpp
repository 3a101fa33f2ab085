#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "blocksight/instrument/collector.hpp"
#include "blocksight/instrument/summary_csv.hpp"
#include "blocksight/vm/asm_io.hpp"
#include "blocksight/vm/validate.hpp"
#include "support/program_gen.hpp"
#include "support/test_util.hpp"
#include "support/trace_oracle.hpp"

using namespace blocksight;
using instrument::Mode;

namespace {

instrument::CollectResult collect_random(std::uint64_t seed, Mode mode,
                                         std::int64_t interval = 10'000) {
    vm::Program p = test::random_program(seed);
    test::ScriptedPorts io(seed);
    vm::RunLimits limits;
    limits.max_instructions = 5000;
    return instrument::collect(p, io, limits, mode, interval);
}

}  // namespace

TEST_CASE("basic collection example") {
    vm::Program p = vm::parse_asm(R"(.memory 8
.entry L0
L0:
    LOADI r0, 1
    STORE r0, 5
    HALT
)");
    test::FixedPorts io;
    auto r = instrument::collect(p, io, {}, Mode::NaivePerInstruction);
    const auto& s = r.stream.final_summary;
    CHECK(s.ins_count == 3);
    CHECK(s.imm_count == 1);
    CHECK(s.wrtmp_count == 1);  // LOADI writes a register; STORE and HALT do not
    CHECK(s.store_count == 1);
    CHECK(s.halt_seen == 1);
    CHECK(s.min_store_addr == 5);
    CHECK(s.max_store_addr == 5);
    CHECK(s.store_addr_diff == 0);
    CHECK(s.min_load_addr == instrument::kNoAddr);
    CHECK(s.load_addr_diff == instrument::kNoAddr);
    CHECK(s.min_ins_addr == 0x1000);
    CHECK(s.max_ins_addr == 0x1002);
    CHECK(s.ins_addr_diff == 2);
    CHECK(s.sb_enter == 1);
    CHECK(s.sb_exit == 1);
}

TEST_CASE("instruction address extremes span executed code") {
    // 0x31 instructions across two blocks, all executed once.
    std::string text = ".memory 4\n.entry L0\nL0:\n";
    for (int i = 0; i < 24; ++i) text += "    NOP\n";
    text += "L1:\n";
    for (int i = 0; i < 24; ++i) text += "    NOP\n";
    text += "    HALT\n";
    vm::Program p = vm::parse_asm(text);
    test::FixedPorts io;
    auto r = instrument::collect(p, io, {}, Mode::Optimized);
    CHECK(r.stream.final_summary.max_ins_addr == 0x1000 + 0x30);
    CHECK(r.stream.final_summary.ins_addr_diff == 0x30);
}

TEST_CASE("mode equivalence and trace-replay oracle on random programs") {
    for (std::uint64_t seed = 200; seed < 260; ++seed) {
        vm::Program p = test::random_program(seed);
        const std::int64_t interval = 16 + static_cast<std::int64_t>(seed % 64);

        auto naive = collect_random(seed, Mode::NaivePerInstruction, interval);
        auto opt = collect_random(seed, Mode::Optimized, interval);
        CHECK(naive.exit == opt.exit);
        CHECK(naive.stream == opt.stream);
        CHECK(naive.final_state == opt.final_state);

        // Hook transparency against an uninstrumented run.
        test::ScriptedPorts io(seed);
        vm::RunLimits limits;
        limits.max_instructions = 5000;
        vm::RunResult plain = vm::run(p, io, limits);
        CHECK(plain.state == naive.final_state);

        // Independent recomputation from the raw event log.
        test::ScriptedPorts io2(seed);
        instrument::TraceRecorder recorder;
        vm::run(p, io2, limits, &recorder);
        instrument::SummaryStream replayed = test::replay_signals(recorder.events(), interval);
        CHECK(replayed == naive.stream);
    }
}

TEST_CASE("category partition and count conservation") {
    for (std::uint64_t seed = 300; seed < 330; ++seed) {
        auto r = collect_random(seed, Mode::Optimized);
        const auto& s = r.stream.final_summary;
        CHECK(s.wrtmp_count + s.store_count + s.exit_count + s.jump_count + s.cmp_count +
                  s.out_port_count + s.nop_count + s.halt_seen ==
              s.ins_count);
        CHECK(s.load_count <= s.wrtmp_count);
        CHECK(s.sb_exit <= s.sb_enter);
        CHECK(s.sb_enter <= s.sb_exit + 1);
        CHECK(s.ins_count == r.final_state.instructions_retired);

        // Per-block executions from the event log sum to the total.
        vm::Program p = test::random_program(seed);
        test::ScriptedPorts io(seed);
        vm::RunLimits limits;
        limits.max_instructions = 5000;
        instrument::TraceRecorder recorder;
        vm::run(p, io, limits, &recorder);
        std::map<int, std::int64_t> per_block;
        std::int64_t total = 0;
        for (const auto& e : recorder.events()) {
            if (e.kind != instrument::TraceEvent::Kind::Instruction) continue;
            per_block[e.block] += 1;
            total += 1;
        }
        std::int64_t sum = 0;
        for (const auto& [block, count] : per_block) sum += count;
        CHECK(sum == total);
        CHECK(total == s.ins_count);
    }
}

TEST_CASE("interval stream contract") {
    for (std::uint64_t seed = 400; seed < 420; ++seed) {
        const std::int64_t interval = 8 + static_cast<std::int64_t>(seed % 32);
        auto r = collect_random(seed, Mode::Optimized, interval);
        const auto& entries = r.stream.entries;
        const instrument::SignalSummary* prev = nullptr;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            CHECK(entries[i].instructions_executed ==
                  static_cast<std::int64_t>(i + 1) * interval);
            CHECK(entries[i].summary.ins_count == entries[i].instructions_executed);
            if (prev) {
                const auto a = prev->to_array();
                const auto b = entries[i].summary.to_array();
                for (int f = 0; f < 17; ++f) CHECK(a[static_cast<std::size_t>(f)] <=
                                                   b[static_cast<std::size_t>(f)]);
                // Min extremes never rise, max extremes never fall, once defined.
                auto check_extreme = [&](int min_i, int max_i) {
                    if (a[static_cast<std::size_t>(min_i)] != instrument::kNoAddr &&
                        b[static_cast<std::size_t>(min_i)] != instrument::kNoAddr) {
                        CHECK(b[static_cast<std::size_t>(min_i)] <=
                              a[static_cast<std::size_t>(min_i)]);
                        CHECK(b[static_cast<std::size_t>(max_i)] >=
                              a[static_cast<std::size_t>(max_i)]);
                    }
                };
                check_extreme(17, 18);
                check_extreme(20, 21);
                check_extreme(23, 24);
            }
            prev = &entries[i].summary;
        }
    }
}

TEST_CASE("optimized hook count on a straight-line program is 2 per block") {
    std::string text = ".memory 4\n.entry L0\n";
    const int k = 6;
    for (int b = 0; b < k; ++b) {
        text += "L" + std::to_string(b) + ":\n";
        text += "    LOADI r0, " + std::to_string(b) + "\n";
        text += "    LOADI r1, 2\n";
        text += "    ADD r2, r0, r1\n";
        if (b + 1 == k) text += "    HALT\n";
    }
    vm::Program p = vm::parse_asm(text);
    REQUIRE(vm::validate(p).ok());

    auto make_io = [] { return std::make_unique<test::FixedPorts>(); };
    auto report = instrument::measure_overhead(p, make_io, {});
    CHECK(report.optimized_hooks == 2 * k);
    CHECK(report.naive_hooks >= p.total_instructions());
}

TEST_CASE("collector rejects mode None and bad intervals") {
    vm::Program p = test::random_program(1);
    CHECK_THROWS_AS(instrument::Collector(p, Mode::None, 100), std::invalid_argument);
    CHECK_THROWS_AS(instrument::Collector(p, Mode::Optimized, 0), std::invalid_argument);
}

TEST_CASE("summaries survive a crash") {
    vm::Program p = vm::parse_asm(R"(.memory 4
.entry L0
L0:
    LOADI r0, 7
    LOADI r1, 0
    DIV r2, r0, r1
    HALT
)");
    test::FixedPorts io;
    auto r = instrument::collect(p, io, {}, Mode::Optimized, 2);
    CHECK(r.exit == vm::ExitKind::Crashed);
    CHECK(r.stream.final_summary.ins_count == 3);  // the faulting DIV is observed
    CHECK(r.stream.final_summary.halt_seen == 0);
    REQUIRE(r.stream.entries.size() == 1);
    CHECK(r.stream.entries[0].instructions_executed == 2);
}

TEST_CASE("summary csv layout") {
    const std::string header = instrument::summary_csv_header();
    CHECK(header.rfind("run_id,instructions_executed,label_placeholder,final,InsCount,", 0) == 0);
    CHECK(header.find("StoreAddrDiff\n") != std::string::npos);

    auto r = collect_random(7, Mode::Optimized, 64);
    std::string csv = instrument::stream_to_csv("r7", r.stream,
                                                r.final_state.instructions_retired);
    std::size_t rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == r.stream.entries.size() + 2);  // header + entries + final
}
