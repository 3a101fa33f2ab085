#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/test_util.hpp"

using blocksight::test::asset;

namespace {

int run_cli(const std::string& args) {
    const std::string cmd = std::string(BLOCKSIGHT_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const std::string kProgram = asset("controllers/waypoint_nav_v1.asm");
const std::string kMission = asset("missions/mission1.txt");

}  // namespace

TEST_CASE("trace reproduces the committed fixture byte for byte") {
    std::filesystem::remove_all("cli_trace_tmp");
    REQUIRE(run_cli("trace --program " + kProgram + " --mission " + kMission +
                    " --seed 42 --out cli_trace_tmp") == 0);
    CHECK(slurp("cli_trace_tmp/trace_trajectory.csv") !=
          slurp("cli_trace_tmp/trace_summary.csv"));

    // The committed fixture was produced by this same command line; the
    // only difference is the absolute program/mission paths in the header.
    auto strip_header = [](const std::string& text) {
        std::string out;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
            if (line.empty() || line[0] != '#') out += line + "\n";
        return out;
    };
    CHECK(strip_header(slurp("cli_trace_tmp/trace_summary.csv")) ==
          strip_header(slurp(asset("fixtures/trace_mission1/trace_summary.csv"))));
    CHECK(strip_header(slurp("cli_trace_tmp/trace_trajectory.csv")) ==
          strip_header(slurp(asset("fixtures/trace_mission1/trace_trajectory.csv"))));
    std::filesystem::remove_all("cli_trace_tmp");
}

TEST_CASE("trace row count follows the interval contract") {
    std::filesystem::remove_all("cli_rows_tmp");
    REQUIRE(run_cli("trace --program " + kProgram + " --mission " + kMission +
                    " --seed 42 --interval 1000 --out cli_rows_tmp") == 0);
    const std::string csv = slurp("cli_rows_tmp/trace_summary.csv");

    std::int64_t final_ins = -1;
    std::size_t data_rows = 0;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("run_id", 0) == 0) continue;
        ++data_rows;
        std::istringstream ls(line);
        std::string run_id, ins;
        std::getline(ls, run_id, ',');
        std::getline(ls, ins, ',');
        final_ins = std::stoll(ins);
    }
    REQUIRE(final_ins > 0);
    CHECK(data_rows == static_cast<std::size_t>(final_ins / 1000) + 1);
    std::filesystem::remove_all("cli_rows_tmp");
}

TEST_CASE("train is replayable: identical outputs across invocations") {
    std::filesystem::remove_all("cli_train_a");
    std::filesystem::remove_all("cli_train_b");
    const std::string corpus = asset("fixtures/corpus_v1");
    REQUIRE(run_cli("train --corpus " + corpus + " --seed 3 --out cli_train_a") == 0);
    REQUIRE(run_cli("train --corpus " + corpus + " --seed 3 --out cli_train_b") == 0);
    CHECK(slurp("cli_train_a/train_report.csv") == slurp("cli_train_b/train_report.csv"));
    CHECK(slurp("cli_train_a/model.json") == slurp("cli_train_b/model.json"));
    std::filesystem::remove_all("cli_train_a");
    std::filesystem::remove_all("cli_train_b");
}

TEST_CASE("eval scores a saved model") {
    std::filesystem::remove_all("cli_eval_tmp");
    const std::string corpus = asset("fixtures/corpus_v1");
    REQUIRE(run_cli("train --corpus " + corpus + " --seed 3 --out cli_eval_tmp") == 0);
    REQUIRE(run_cli("eval --model cli_eval_tmp/model.json --corpus " + corpus +
                    " --out cli_eval_tmp") == 0);
    const std::string report = slurp("cli_eval_tmp/eval_report.csv");
    CHECK(report.find("tp,fp,tn,fn,acc,prec,rec,f") != std::string::npos);
    std::filesystem::remove_all("cli_eval_tmp");
}

TEST_CASE("features report carries both the full and reduced runs") {
    std::filesystem::remove_all("cli_feat_tmp");
    REQUIRE(run_cli("features --corpus " + asset("fixtures/corpus_v1") +
                    " --top-k 5 --seed 3 --out cli_feat_tmp") == 0);
    const std::string text = slurp("cli_feat_tmp/features_report.txt");
    CHECK(text.find("full 26-signal model") != std::string::npos);
    CHECK(text.find("reduced top-5 model") != std::string::npos);
    CHECK(text.find("selected:") != std::string::npos);
    std::filesystem::remove_all("cli_feat_tmp");
}

TEST_CASE("early table is ordered by interval with non-increasing n") {
    std::filesystem::remove_all("cli_early_tmp");
    REQUIRE(run_cli("early --corpus " + asset("fixtures/corpus_v1") +
                    " --seed 3 --out cli_early_tmp") == 0);
    const std::string csv = slurp("cli_early_tmp/early_report.csv");
    std::istringstream in(csv);
    std::string line;
    std::int64_t prev_ins = 0;
    std::int64_t prev_n = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("instructions", 0) == 0) continue;
        std::istringstream ls(line);
        std::string ins, fin, n;
        std::getline(ls, ins, ',');
        std::getline(ls, fin, ',');
        std::getline(ls, n, ',');
        if (ins == "final") continue;
        const std::int64_t ins_v = std::stoll(ins), n_v = std::stoll(n);
        CHECK(ins_v > prev_ins);
        if (prev_n >= 0) CHECK(n_v <= prev_n);
        prev_ins = ins_v;
        prev_n = n_v;
    }
    CHECK(prev_ins > 0);
    std::filesystem::remove_all("cli_early_tmp");
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("trace --program /nonexistent.asm --mission " + kMission) == 1);
    CHECK(run_cli("train --corpus /nonexistent_dir") == 1);
    CHECK(run_cli("overhead --program " + kProgram + " --mission " + kMission +
                  " --repeats 4") == 1);  // even repeats rejected
    CHECK(run_cli("features --corpus " + asset("fixtures/corpus_v1") + " --top-k 40") == 1);
    CHECK(run_cli("delaylab --program " + kProgram + " --mission " + kMission +
                  " --delay 0.3 --seeds 1") == 1);  // off-grid delay
    CHECK(run_cli("nonsense") == 1);
}

TEST_CASE("delaylab emits mean, deviation, and crash tables") {
    std::filesystem::remove_all("cli_delay_tmp");
    REQUIRE(run_cli("delaylab --program " + kProgram + " --mission " + kMission +
                    " --topic /cmd_vel --delay 0 0.25 --seeds 3 --out cli_delay_tmp") == 0);
    const std::string text = slurp("cli_delay_tmp/delaylab_report.txt");
    CHECK(text.find("mean minimum distance from waypoints") != std::string::npos);
    CHECK(text.find("standard deviation") != std::string::npos);
    CHECK(text.find("crash proxy and completion time") != std::string::npos);

    // The 0-delay row is the nominal baseline; both rows must be present.
    CHECK(text.find("\n0 ") != std::string::npos);
    CHECK(text.find("\n0.25") != std::string::npos);
    std::filesystem::remove_all("cli_delay_tmp");
}
