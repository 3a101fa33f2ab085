#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "blocksight/robosim/mission_runner.hpp"
#include "blocksight/vm/asm_io.hpp"
#include "blocksight/vm/machine.hpp"
#include "blocksight/vm/validate.hpp"
#include "support/program_gen.hpp"
#include "support/test_util.hpp"

using namespace blocksight;
using test::asset;

namespace {

vm::Program parse(const std::string& text) { return vm::parse_asm(text); }

const char* kMinimal = R"(.memory 8
.entry L0
L0:
    LOADI r0, 1
    HALT
)";

}  // namespace

TEST_CASE("minimal program validates and halts") {
    vm::Program p = parse(kMinimal);
    CHECK(vm::validate(p).ok());

    test::FixedPorts io;
    vm::RunLimits limits;
    limits.max_instructions = 10;
    vm::RunResult r = vm::run(p, io, limits);
    CHECK(r.exit == vm::ExitKind::Halted);
    CHECK(r.state.instructions_retired == 2);
    CHECK(r.state.regs[0] == 1);
}

TEST_CASE("branch target out of range is a defect") {
    vm::Program p = parse(kMinimal);
    vm::Instruction br;
    br.op = vm::Opcode::Br;
    br.cond = vm::Cond::Eq;
    br.target = static_cast<int>(p.blocks.size());  // one past the end
    p.blocks[0].instructions.insert(p.blocks[0].instructions.begin(), br);
    vm::relayout(p);
    auto report = vm::validate(p);
    CHECK_FALSE(report.ok());
    bool found = false;
    for (const auto& d : report.defects)
        if (d.message.find("branch target out of range") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("store at memory_size is a defect") {
    vm::Program p = parse(kMinimal);
    vm::Instruction st;
    st.op = vm::Opcode::Store;
    st.ra = 0;
    st.mem.disp = p.memory_size;
    p.blocks[0].instructions.insert(p.blocks[0].instructions.begin(), st);
    vm::relayout(p);
    auto report = vm::validate(p);
    REQUIRE_FALSE(report.ok());
    CHECK(report.defects[0].message.find("address") != std::string::npos);
}

TEST_CASE("every out-of-range address perturbation of the controller is flagged") {
    vm::Program base = test::bundled_controller();
    REQUIRE(vm::validate(base).ok());
    int checked = 0;
    for (const auto& block : base.blocks) {
        for (std::size_t i = 0; i < block.instructions.size(); ++i) {
            const vm::Instruction& ins = block.instructions[i];
            if ((ins.op != vm::Opcode::Load && ins.op != vm::Opcode::Store) || ins.mem.reg_mode)
                continue;
            for (std::int64_t bad : {static_cast<std::int64_t>(-1), base.memory_size,
                                     base.memory_size + 7}) {
                vm::Program mutant = base;
                mutant.blocks[static_cast<std::size_t>(block.id)].instructions[i].mem.disp = bad;
                CHECK_FALSE(vm::validate(mutant).ok());
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("step semantics") {
    test::FixedPorts io;

    SUBCASE("integer division") {
        vm::Program p = parse(R"(.memory 4
.entry L0
L0:
    LOADI r1, 6
    LOADI r2, 3
    DIV r0, r1, r2
    HALT
)");
        vm::Machine m(p);
        m.step(io);
        m.step(io);
        m.step(io);
        CHECK(m.state().regs[0] == 2);
        CHECK(m.state().pc.offset == 3);
        CHECK(m.state().status == vm::Status::Running);
    }

    SUBCASE("divide by zero crashes") {
        vm::Program p = parse(R"(.memory 4
.entry L0
L0:
    LOADI r1, 6
    DIV r0, r1, r2
    HALT
)");
        vm::RunResult r = vm::run(p, io);
        CHECK(r.exit == vm::ExitKind::Crashed);
        CHECK(r.state.crash_reason == vm::CrashReason::DivideByZero);
        CHECK(r.state.pc.offset == 1);  // pc pinned to the faulting instruction
    }

    SUBCASE("memory fault on register-addressed store") {
        vm::Program p = parse(R"(.memory 4
.entry L0
L0:
    LOADI r1, 100
    STORE r0, [r1]
    HALT
)");
        vm::RunResult r = vm::run(p, io);
        CHECK(r.exit == vm::ExitKind::Crashed);
        CHECK(r.state.crash_reason == vm::CrashReason::MemoryFault);
    }

    SUBCASE("sleep advances the simulated clock exactly") {
        vm::Program p = parse(R"(.memory 4
.entry L0
L0:
    SLEEP 0.25
    HALT
)");
        vm::RunResult r = vm::run(p, io);
        CHECK(r.state.clock_ns == 250'000'000);
        CHECK(r.exit == vm::ExitKind::Halted);
    }
}

TEST_CASE("infinite loop times out at exactly the instruction limit") {
    vm::Program p = parse(R"(.memory 4
.entry L0
L0:
    NOP
    JMP L0
)");
    test::FixedPorts io;
    vm::RunLimits limits;
    limits.max_instructions = 1000;
    vm::RunResult r = vm::run(p, io, limits);
    CHECK(r.exit == vm::ExitKind::TimedOut);
    CHECK(r.state.instructions_retired == 1000);
}

TEST_CASE("sleeping past the simulated time limit times out") {
    vm::Program p = parse(R"(.memory 4
.entry L0
L0:
    SLEEP 100
    SLEEP 100
    HALT
)");
    test::FixedPorts io;
    vm::RunResult r = vm::run(p, io);  // default 120 s limit
    CHECK(r.exit == vm::ExitKind::TimedOut);
    CHECK(r.state.instructions_retired == 2);
}

TEST_CASE("runs are deterministic") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        vm::Program p = test::random_program(seed);
        REQUIRE(vm::validate(p).ok());
        vm::RunLimits limits;
        limits.max_instructions = 5000;
        test::ScriptedPorts io1(seed), io2(seed);
        vm::RunResult a = vm::run(p, io1, limits);
        vm::RunResult b = vm::run(p, io2, limits);
        CHECK(a.exit == b.exit);
        CHECK(a.state == b.state);
    }
}

TEST_CASE("assembly round-trips through write and parse") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        vm::Program p = test::random_program(seed);
        vm::Program back = vm::parse_asm(vm::write_asm(p));
        CHECK(back == p);
    }
    vm::Program ctrl = test::bundled_controller();
    CHECK(vm::parse_asm(vm::write_asm(ctrl)) == ctrl);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse("L0:\n    LOADI r16, 1\n    HALT\n"), vm::AsmError);
    CHECK_THROWS_AS(parse("L0:\n    BR EQ, nowhere\n"), vm::AsmError);
    CHECK_THROWS_AS(parse("L0:\n    FROB r1\n"), vm::AsmError);
    CHECK_THROWS_AS(parse("L0:\nL0:\n    HALT\n"), vm::AsmError);
    CHECK_THROWS_AS(parse("    NOP\n"), vm::AsmError);        // code before any label
    CHECK_THROWS_AS(parse("L0:\n    SLEEP -1\n"), vm::AsmError);
}

TEST_CASE("loader rejects a file that fails validation") {
    const std::string path = "reject_me.asm";
    vm::write_file(path, "L0:\n    NOP\n");  // fallthrough past last block
    CHECK_THROWS_AS(vm::load_program(path), vm::AsmError);
    std::remove(path.c_str());
}

TEST_CASE("flat code addresses start at the base and stay contiguous") {
    vm::Program p = test::bundled_controller();
    CHECK(p.blocks[0].start_addr == 0x1000);
    std::int64_t expect = 0x1000;
    for (const auto& b : p.blocks) {
        CHECK(b.start_addr == expect);
        expect += static_cast<std::int64_t>(b.instructions.size());
    }
}

TEST_CASE("bundled controller matches the committed golden run") {
    std::ifstream in(asset("fixtures/golden_run.json"));
    REQUIRE(in.good());
    nlohmann::json golden = nlohmann::json::parse(in);

    vm::Program program = test::bundled_controller();
    robosim::Mission mission = robosim::load_mission(asset("missions/mission1.txt"));
    robosim::MissionRunConfig cfg;
    cfg.seed = 42;
    cfg.mode = instrument::Mode::None;
    robosim::MissionResult r = robosim::run_mission(program, mission, cfg);

    CHECK(std::string(vm::exit_kind_name(r.exit)) == golden.at("exit").get<std::string>());
    CHECK(r.final_state.instructions_retired == golden.at("instructions").get<std::int64_t>());
    CHECK(r.final_state.clock_ns == golden.at("clock_ns").get<std::int64_t>());
    CHECK(r.final_state.pc.block == golden.at("pc_block").get<int>());
    CHECK(r.final_state.pc.offset == golden.at("pc_offset").get<int>());
    const auto regs = golden.at("registers").get<std::vector<std::int64_t>>();
    for (std::size_t i = 0; i < regs.size(); ++i) CHECK(r.final_state.regs[i] == regs[i]);
    const auto mem = golden.at("memory").get<std::vector<std::int64_t>>();
    REQUIRE(r.final_state.memory.size() == mem.size());
    for (std::size_t i = 0; i < mem.size(); ++i) CHECK(r.final_state.memory[i] == mem[i]);
    CHECK(r.trajectory.samples.size() == golden.at("samples").get<std::size_t>());
}
