// Command-line front end: trace and corpus generation, model training and
// evaluation, the experiment drivers, and the timing-delay lab.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "blocksight/common/parallel.hpp"
#include "blocksight/common/rng.hpp"
#include "blocksight/corpus/builder.hpp"
#include "blocksight/corpus/corpus_io.hpp"
#include "blocksight/instrument/summary_csv.hpp"
#include "blocksight/learn/experiments.hpp"
#include "blocksight/learn/model_io.hpp"
#include "blocksight/robosim/mission_runner.hpp"
#include "blocksight/vm/asm_io.hpp"
#include "report_util.hpp"

namespace {

using namespace blocksight;
using tools::ReportConfig;
using tools::format_double;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string out_path(const std::string& dir, const std::string& file) {
    std::string root = dir;
    if (const char* env = std::getenv("BLOCKSIGHT_OUT_ROOT"); env && root.front() != '/')
        root = std::string(env) + "/" + root;
    tools::ensure_dir(root);
    return root + "/" + file;
}

vm::Program load_program_checked(const std::string& path) {
    try {
        return vm::load_program(path);
    } catch (const vm::AsmError& e) {
        throw UsageError(e.what());
    }
}

std::vector<robosim::Mission> load_missions(const std::vector<std::string>& paths,
                                            double tolerance) {
    std::vector<robosim::Mission> missions;
    for (const auto& p : paths) {
        try {
            missions.push_back(robosim::load_mission(p, tolerance));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return missions;
}

corpus::Corpus load_corpus_checked(const std::string& dir) {
    try {
        return corpus::load_corpus(dir);
    } catch (const std::exception& e) {
        throw UsageError(std::string("cannot load corpus: ") + e.what());
    }
}

// -------------------------------------------------------------------------
// trace

struct TraceArgs {
    std::string program, mission, out = ".";
    std::string mode = "optimized";
    std::int64_t interval = 10'000;
    std::uint64_t seed = 0;
    double tolerance = 1.0;
    bool strict = false;
};

int cmd_trace(const TraceArgs& args) {
    vm::Program program = load_program_checked(args.program);
    robosim::Mission mission = load_missions({args.mission}, args.tolerance)[0];

    robosim::MissionRunConfig rc;
    rc.seed = args.seed;
    rc.mode = instrument::mode_from_name(args.mode);
    rc.interval_size = args.interval;
    if (rc.mode == instrument::Mode::None)
        throw UsageError("trace needs an instrumentation mode (naive or optimized)");
    robosim::MissionResult r = robosim::run_mission(program, mission, rc);

    const std::string run_id = program.meta.name + "_" + mission.id;
    ReportConfig cfg;
    cfg.add("tool", std::string("trace"));
    cfg.add("program", args.program);
    cfg.add("mission", args.mission);
    cfg.add("mode", args.mode);
    cfg.add("interval", args.interval);
    cfg.add("seed", args.seed);

    tools::write_report_file(
        out_path(args.out, "trace_summary.csv"),
        cfg.header() + instrument::stream_to_csv(run_id, *r.stream,
                                                 r.final_state.instructions_retired));
    tools::write_report_file(out_path(args.out, "trace_trajectory.csv"),
                             cfg.header() + robosim::trajectory_to_csv(r.trajectory));

    robosim::TrajectoryMetrics m = robosim::compute_metrics(r.trajectory, mission);
    std::printf("exit=%s instructions=%lld intervals=%zu reached_all=%d mean_dist=%.3f\n",
                vm::exit_kind_name(r.exit), static_cast<long long>(r.final_state.instructions_retired),
                r.stream->entries.size(), m.reached_all ? 1 : 0, m.mean);
    if (args.strict && r.exit == vm::ExitKind::Crashed) return 2;
    return 0;
}

// -------------------------------------------------------------------------
// corpus

struct CorpusArgs {
    std::string program, out = "corpus";
    std::vector<std::string> missions;
    std::uint64_t seed = 1;
    std::int64_t interval = 10'000;
    std::int64_t discard_window = 1'000;
    double noise = 0.05;
    double tolerance = 1.0;
    int workers = 0;
};

int cmd_corpus(const CorpusArgs& args) {
    vm::Program program = load_program_checked(args.program);
    std::vector<robosim::Mission> missions = load_missions(args.missions, args.tolerance);

    corpus::CorpusConfig cc;
    cc.seed = args.seed;
    cc.interval_size = args.interval;
    cc.discard_window = args.discard_window;
    cc.noise_sigma_m = args.noise;
    cc.workers = args.workers;
    corpus::Corpus built = corpus::build_corpus(program, missions, cc);
    corpus::save_corpus(built, args.out);

    std::int64_t pass = 0, fail = 0, discarded = 0;
    for (const auto& rec : built.records) {
        if (rec.discarded) ++discarded;
        else (rec.label == corpus::kFail ? fail : pass) += 1;
    }
    std::printf("corpus %s: mutants=%lld excluded=%zu runs=%zu retained=%lld (pass=%lld fail=%lld) discarded=%lld\n",
                args.out.c_str(), static_cast<long long>(built.valid_mutants),
                built.excluded.size(), built.records.size(),
                static_cast<long long>(pass + fail), static_cast<long long>(pass),
                static_cast<long long>(fail), static_cast<long long>(discarded));
    return 0;
}

// -------------------------------------------------------------------------
// train / eval / xversion

struct TrainArgs {
    std::string corpus, out = ".";
    std::uint64_t seed = 1;
};

int cmd_train(const TrainArgs& args) {
    corpus::Corpus c = load_corpus_checked(args.corpus);
    learn::CvReport report = learn::kfold(c.dataset, args.seed);

    ReportConfig cfg;
    cfg.add("tool", std::string("train"));
    cfg.add("corpus", args.corpus);
    cfg.add("seed", args.seed);
    cfg.add("n", static_cast<std::int64_t>(c.dataset.examples.size()));
    cfg.add("k", static_cast<std::int64_t>(report.k));
    cfg.add("version_tag", c.version_tag);

    tools::write_report_file(out_path(args.out, "train_report.csv"),
                             cfg.header() + tools::cv_report_csv(report));
    tools::write_report_file(out_path(args.out, "train_report.txt"),
                             cfg.header() + tools::cv_report_text(report) + "\n" +
                                 tools::importance_table(report));

    corpus::LabeledDataset balanced = corpus::balance(c.dataset, args.seed);
    learn::DecisionTree model = learn::fit(balanced);
    learn::save_tree(model, out_path(args.out, "model.json"));

    std::printf("k=%d mean acc=%.4f prec=%.4f rec=%.4f f=%.4f\n", report.k, report.mean.acc,
                report.mean.prec, report.mean.rec, report.mean.f);
    return 0;
}

struct EvalArgs {
    std::string model, corpus, out = ".";
};

int cmd_eval(const EvalArgs& args) {
    learn::DecisionTree model = [&] {
        try {
            return learn::load_tree(args.model);
        } catch (const std::exception& e) {
            throw UsageError(std::string("cannot load model: ") + e.what());
        }
    }();
    corpus::Corpus c = load_corpus_checked(args.corpus);

    std::vector<int> truth, pred;
    for (const auto& ex : c.dataset.examples) {
        truth.push_back(ex.label);
        pred.push_back(model.predict(ex.features));
    }
    learn::Metrics m = learn::score_predictions(truth, pred);

    ReportConfig cfg;
    cfg.add("tool", std::string("eval"));
    cfg.add("model", args.model);
    cfg.add("corpus", args.corpus);
    cfg.add("n", static_cast<std::int64_t>(truth.size()));
    tools::write_report_file(out_path(args.out, "eval_report.csv"),
                             cfg.header() + std::string(tools::metrics_csv_columns()) + "\n" +
                                 tools::metrics_row_csv(m) + "\n");
    std::printf("n=%zu acc=%.4f prec=%.4f rec=%.4f f=%.4f\n", truth.size(), m.acc, m.prec,
                m.rec, m.f);
    return 0;
}

struct XversionArgs {
    std::string train_corpus, test_corpus, out = ".";
    std::uint64_t seed = 1;
};

int cmd_xversion(const XversionArgs& args) {
    corpus::Corpus train_c = load_corpus_checked(args.train_corpus);
    corpus::Corpus test_c = load_corpus_checked(args.test_corpus);
    if (train_c.version_tag == test_c.version_tag)
        std::fprintf(stderr, "note: train and test corpora share version tag '%s'\n",
                     train_c.version_tag.c_str());

    learn::Metrics m =
        learn::cross_version_eval(train_c.dataset, test_c.dataset, args.seed);

    ReportConfig cfg;
    cfg.add("tool", std::string("xversion"));
    cfg.add("train_corpus", args.train_corpus);
    cfg.add("test_corpus", args.test_corpus);
    cfg.add("train_version", train_c.version_tag);
    cfg.add("test_version", test_c.version_tag);
    cfg.add("seed", args.seed);
    cfg.add("n_train", static_cast<std::int64_t>(train_c.dataset.examples.size()));
    cfg.add("n_test", static_cast<std::int64_t>(test_c.dataset.examples.size()));
    tools::write_report_file(out_path(args.out, "xversion_report.csv"),
                             cfg.header() + std::string(tools::metrics_csv_columns()) + "\n" +
                                 tools::metrics_row_csv(m) + "\n");
    std::printf("train=%s test=%s acc=%.4f prec=%.4f rec=%.4f f=%.4f\n",
                train_c.version_tag.c_str(), test_c.version_tag.c_str(), m.acc, m.prec, m.rec,
                m.f);
    return 0;
}

// -------------------------------------------------------------------------
// curve / early / features

struct CurveArgs {
    std::string corpus, out = ".";
    std::vector<std::size_t> sizes;
    std::uint64_t seed = 1;
};

int cmd_curve(const CurveArgs& args) {
    corpus::Corpus c = load_corpus_checked(args.corpus);
    std::vector<std::size_t> sizes = args.sizes;
    if (sizes.empty())
        for (std::size_t s = 100; s <= c.dataset.examples.size(); s += 100) sizes.push_back(s);
    for (std::size_t s : sizes)
        if (s > c.dataset.examples.size())
            throw UsageError("curve size exceeds dataset size " +
                             std::to_string(c.dataset.examples.size()));

    std::vector<learn::CurvePoint> curve = learn::learning_curve(c.dataset, sizes, args.seed);

    ReportConfig cfg;
    cfg.add("tool", std::string("curve"));
    cfg.add("corpus", args.corpus);
    cfg.add("seed", args.seed);

    std::string csv = cfg.header() + "n,k,acc,prec,rec,f\n";
    std::vector<std::vector<std::string>> rows{{"n", "k", "acc", "prec", "rec", "f"}};
    for (const auto& p : curve) {
        const auto& m = p.report.mean;
        csv += std::to_string(p.size) + "," + std::to_string(p.report.k) + "," +
               format_double(m.acc) + "," + format_double(m.prec) + "," + format_double(m.rec) +
               "," + format_double(m.f) + "\n";
        rows.push_back({std::to_string(p.size), std::to_string(p.report.k),
                        format_double(m.acc), format_double(m.prec), format_double(m.rec),
                        format_double(m.f)});
    }
    tools::write_report_file(out_path(args.out, "curve_report.csv"), csv);
    tools::write_report_file(out_path(args.out, "curve_report.txt"),
                             cfg.header() + tools::text_table(rows));
    std::printf("%s", tools::text_table(rows).c_str());
    return 0;
}

struct EarlyArgs {
    std::string corpus, out = ".";
    std::uint64_t seed = 1;
};

int cmd_early(const EarlyArgs& args) {
    corpus::Corpus c = load_corpus_checked(args.corpus);
    std::vector<learn::IntervalReport> sweep = learn::early_detection_sweep(c, args.seed);

    ReportConfig cfg;
    cfg.add("tool", std::string("early"));
    cfg.add("corpus", args.corpus);
    cfg.add("seed", args.seed);
    cfg.add("interval_size", c.interval_size);

    std::string csv = cfg.header() + "instructions,final,n,k,acc,prec,rec,f,skipped\n";
    std::vector<std::vector<std::string>> rows{
        {"instructions", "n", "k", "acc", "prec", "rec", "f"}};
    for (const auto& row : sweep) {
        const std::string ins = row.is_final ? "final" : std::to_string(row.interval_instructions);
        if (row.skipped) {
            csv += ins + "," + (row.is_final ? "1" : "0") + "," + std::to_string(row.n) +
                   ",,,,,,1\n";
            rows.push_back({ins, std::to_string(row.n), "-", "-", "-", "-", "-"});
            continue;
        }
        const auto& m = row.report.mean;
        csv += ins + "," + (row.is_final ? "1" : "0") + "," + std::to_string(row.n) + "," +
               std::to_string(row.report.k) + "," + format_double(m.acc) + "," +
               format_double(m.prec) + "," + format_double(m.rec) + "," + format_double(m.f) +
               ",0\n";
        rows.push_back({ins, std::to_string(row.n), std::to_string(row.report.k),
                        format_double(m.acc), format_double(m.prec), format_double(m.rec),
                        format_double(m.f)});
    }
    tools::write_report_file(out_path(args.out, "early_report.csv"), csv);
    tools::write_report_file(out_path(args.out, "early_report.txt"),
                             cfg.header() + tools::text_table(rows));
    std::printf("%s", tools::text_table(rows).c_str());
    return 0;
}

struct FeaturesArgs {
    std::string corpus, out = ".";
    int top_k = 5;
    std::uint64_t seed = 1;
};

int cmd_features(const FeaturesArgs& args) {
    if (args.top_k < 1 || args.top_k > instrument::kNumSignals)
        throw UsageError("--top-k must be in [1, 26]");
    corpus::Corpus c = load_corpus_checked(args.corpus);
    learn::FeatureEvalReport report =
        learn::reduced_feature_eval(c.dataset, args.top_k, args.seed);

    ReportConfig cfg;
    cfg.add("tool", std::string("features"));
    cfg.add("corpus", args.corpus);
    cfg.add("seed", args.seed);
    cfg.add("top_k", static_cast<std::int64_t>(args.top_k));

    const auto& names = instrument::signal_names();
    std::string selected;
    for (int f : report.selected) {
        if (!selected.empty()) selected += " ";
        selected += names[static_cast<std::size_t>(f)];
    }

    std::string text = cfg.header();
    text += "full 26-signal model\n" + tools::cv_report_text(report.full) + "\n";
    text += tools::importance_table(report.full) + "\n";
    text += "selected: " + selected + "\n\n";
    text += "reduced top-" + std::to_string(args.top_k) + " model\n" +
            tools::cv_report_text(report.reduced);
    tools::write_report_file(out_path(args.out, "features_report.txt"), text);

    std::string csv = cfg.header() + "config,";
    csv += tools::metrics_csv_columns();
    csv += "\nfull," + tools::metrics_row_csv(report.full.mean) + "\n";
    csv += "top" + std::to_string(args.top_k) + "," +
           tools::metrics_row_csv(report.reduced.mean) + "\n";
    tools::write_report_file(out_path(args.out, "features_report.csv"), csv);

    std::printf("selected: %s\nfull f=%.4f reduced f=%.4f\n", selected.c_str(),
                report.full.mean.f, report.reduced.mean.f);
    return 0;
}

// -------------------------------------------------------------------------
// overhead

struct OverheadArgs {
    std::string program, mission, out = ".";
    int repeats = 11;
    std::uint64_t seed = 0;
    double tolerance = 1.0;
};

int cmd_overhead(const OverheadArgs& args) {
    if (args.repeats < 3 || args.repeats % 2 == 0)
        throw UsageError("--repeats must be odd and at least 3");
    vm::Program program = load_program_checked(args.program);
    robosim::Mission mission = load_missions({args.mission}, args.tolerance)[0];

    auto run_mode = [&](instrument::Mode mode) {
        robosim::MissionRunConfig rc;
        rc.seed = args.seed;
        rc.mode = mode;
        return robosim::run_mission(program, mission, rc);
    };

    std::vector<double> none_t, naive_t, opt_t;
    std::int64_t naive_hooks = 0, opt_hooks = 0;
    for (int i = 0; i < args.repeats; ++i) {
        robosim::MissionResult rn = run_mode(instrument::Mode::None);
        robosim::MissionResult rv = run_mode(instrument::Mode::NaivePerInstruction);
        robosim::MissionResult ro = run_mode(instrument::Mode::Optimized);
        if (!(rn.final_state == rv.final_state) || !(rn.final_state == ro.final_state))
            throw std::runtime_error("instrumentation modes diverged");
        none_t.push_back(rn.meter.wall_seconds);
        naive_t.push_back(rv.meter.wall_seconds);
        opt_t.push_back(ro.meter.wall_seconds);
        naive_hooks = rv.meter.hook_invocations;
        opt_hooks = ro.meter.hook_invocations;
    }
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    const double none_s = median(none_t), naive_s = median(naive_t), opt_s = median(opt_t);

    ReportConfig cfg;
    cfg.add("tool", std::string("overhead"));
    cfg.add("program", args.program);
    cfg.add("mission", args.mission);
    cfg.add("repeats", static_cast<std::int64_t>(args.repeats));
    cfg.add("seed", args.seed);

    std::vector<std::vector<std::string>> rows{
        {"mode", "median_s", "ratio_vs_none", "hooks"},
        {"none", format_double(none_s), format_double(1.0), "0"},
        {"naive", format_double(naive_s), format_double(none_s > 0 ? naive_s / none_s : 0),
         std::to_string(naive_hooks)},
        {"optimized", format_double(opt_s), format_double(none_s > 0 ? opt_s / none_s : 0),
         std::to_string(opt_hooks)}};
    tools::write_report_file(out_path(args.out, "overhead_report.txt"),
                             cfg.header() + tools::text_table(rows));
    std::string csv = cfg.header() + "mode,median_s,ratio_vs_none,hooks\n";
    csv += "none," + format_double(none_s) + ",1.000000,0\n";
    csv += "naive," + format_double(naive_s) + "," +
           format_double(none_s > 0 ? naive_s / none_s : 0) + "," +
           std::to_string(naive_hooks) + "\n";
    csv += "optimized," + format_double(opt_s) + "," +
           format_double(none_s > 0 ? opt_s / none_s : 0) + "," + std::to_string(opt_hooks) +
           "\n";
    tools::write_report_file(out_path(args.out, "overhead_report.csv"), csv);
    std::printf("%s", tools::text_table(rows).c_str());
    return 0;
}

// -------------------------------------------------------------------------
// delaylab

struct DelaylabArgs {
    std::string program, out = "delaylab";
    std::vector<std::string> missions;
    std::vector<std::string> topics = {"/cmd_vel", "/odom"};
    std::vector<std::string> delays;  // seconds; default full grid incl. 0
    std::string mechanism = "topic";
    std::vector<double> weights = {0.5, 1.0};
    int seeds = 30;
    std::uint64_t seed = 1;
    double tolerance = 1.0;
    int workers = 0;
};

struct DelayCell {
    std::vector<double> wp_mean, wp_std;
    double total_mean = 0.0, grand_mean = 0.0;
    double crash = 0.0;
    double time_reached = -1.0, time_missed = -1.0;  // -1 = n/a
};

DelayCell summarize_cell(const std::vector<robosim::MissionResult>& runs,
                         const robosim::Mission& mission) {
    DelayCell cell;
    const std::size_t n_wp = mission.waypoints.size();
    std::vector<std::vector<double>> dists(n_wp);
    std::vector<robosim::RunOutcome> outcomes;
    double reach_t = 0, miss_t = 0;
    int reach_n = 0, miss_n = 0;
    for (const auto& r : runs) {
        robosim::TrajectoryMetrics m = robosim::compute_metrics(r.trajectory, mission);
        for (std::size_t w = 0; w < n_wp; ++w) dists[w].push_back(m.min_dist[w]);
        const double end_t = r.trajectory.samples.back().t;
        const bool reached_final =
            r.exit == vm::ExitKind::Halted && m.min_dist.back() <= mission.tolerance_m;
        if (reached_final) {
            reach_t += end_t;
            ++reach_n;
        } else {
            miss_t += end_t;
            ++miss_n;
        }
        outcomes.push_back({r.trajectory, r.exit});
    }
    for (std::size_t w = 0; w < n_wp; ++w) {
        double mean = 0;
        for (double d : dists[w]) mean += d;
        mean /= static_cast<double>(dists[w].size());
        double var = 0;
        for (double d : dists[w]) var += (d - mean) * (d - mean);
        var /= static_cast<double>(dists[w].size());
        cell.wp_mean.push_back(mean);
        cell.wp_std.push_back(std::sqrt(var));
        cell.total_mean += mean;
    }
    cell.grand_mean = cell.total_mean / static_cast<double>(n_wp);
    cell.crash = robosim::crash_rate(outcomes, mission);
    if (reach_n > 0) cell.time_reached = reach_t / reach_n;
    if (miss_n > 0) cell.time_missed = miss_t / miss_n;
    return cell;
}

int cmd_delaylab(const DelaylabArgs& args) {
    vm::Program program = load_program_checked(args.program);
    std::vector<robosim::Mission> missions = load_missions(args.missions, args.tolerance);
    const bool sleep_mode = args.mechanism == "sleep";
    if (!sleep_mode && args.mechanism != "topic")
        throw UsageError("--mechanism must be 'topic' or 'sleep'");

    std::vector<SimNs> delays;
    if (args.delays.empty()) {
        delays.push_back(0);
        for (SimNs d : sleep_mode ? robosim::sleep_delay_grid() : robosim::topic_delay_grid())
            delays.push_back(d);
    } else {
        for (const auto& text : args.delays) {
            SimNs ns = 0;
            if (!parse_seconds(text, ns)) throw UsageError("bad delay '" + text + "'");
            const bool ok = sleep_mode ? (ns == 0 || robosim::valid_sleep_delay(ns))
                                       : robosim::valid_topic_delay(ns);
            if (!ok) throw UsageError("delay " + text + " is outside the grid");
            delays.push_back(ns);
        }
    }
    if (sleep_mode)
        for (double w : args.weights)
            if (w < 0.1 || w > 1.0) throw UsageError("weights must be in [0.1, 1.0]");

    // Axis = topic name, or weight in sleep mode.
    std::vector<std::string> axis;
    if (sleep_mode)
        for (double w : args.weights) axis.push_back("w=" + format_double(w));
    else
        axis = args.topics;

    struct Task {
        std::size_t mission_i, axis_i, delay_i;
        int seed_i;
    };
    std::vector<Task> tasks;
    for (std::size_t mi = 0; mi < missions.size(); ++mi)
        for (std::size_t ai = 0; ai < axis.size(); ++ai)
            for (std::size_t di = 0; di < delays.size(); ++di)
                for (int s = 0; s < args.seeds; ++s) tasks.push_back({mi, ai, di, s});

    std::vector<robosim::MissionResult> results(tasks.size());
    parallel_for(tasks.size(), args.workers, [&](std::size_t t) {
        const Task& task = tasks[t];
        robosim::MissionRunConfig rc;
        // Same seed across the delay axis so the 0-delay column is the
        // nominal baseline run for run.
        rc.seed = mix_seed(args.seed, task.mission_i, static_cast<std::uint64_t>(task.seed_i));
        rc.mode = instrument::Mode::None;
        const SimNs d = delays[task.delay_i];
        if (d > 0 || !sleep_mode) {
            if (sleep_mode)
                rc.delay = robosim::SleepInsertionDelay{
                    args.weights[task.axis_i], d,
                    mix_seed(args.seed, 77, static_cast<std::uint64_t>(task.seed_i))};
            else if (d > 0)
                rc.delay = robosim::TopicInterceptDelay{args.topics[task.axis_i], d};
        }
        results[t] = robosim::run_mission(program, missions[task.mission_i], rc);
    });

    ReportConfig cfg;
    cfg.add("tool", std::string("delaylab"));
    cfg.add("program", args.program);
    cfg.add("mechanism", args.mechanism);
    cfg.add("seeds", static_cast<std::int64_t>(args.seeds));
    cfg.add("seed", args.seed);

    std::string text = cfg.header();
    std::string csv = cfg.header() +
                      "mission,axis,delay_s,waypoint,mean_dist,std_dist,crash_rate,"
                      "time_reached_s,time_missed_s\n";

    std::size_t cursor = 0;
    for (std::size_t mi = 0; mi < missions.size(); ++mi) {
        const robosim::Mission& mission = missions[mi];
        const std::size_t n_wp = mission.waypoints.size();
        for (std::size_t ai = 0; ai < axis.size(); ++ai) {
            std::vector<std::vector<std::string>> mean_rows, std_rows, crash_rows;
            std::vector<std::string> head{"delay_s"};
            for (std::size_t w = 0; w + 1 < n_wp; ++w) head.push_back("W" + std::to_string(w + 1));
            head.push_back("Final");
            head.push_back("Total");
            head.push_back("Mean");
            mean_rows.push_back(head);
            std_rows.push_back(head);
            crash_rows.push_back({"delay_s", "crash_rate", "time_reached_s", "time_missed_s"});

            for (std::size_t di = 0; di < delays.size(); ++di) {
                std::vector<robosim::MissionResult> cell_runs(
                    results.begin() + static_cast<std::ptrdiff_t>(cursor),
                    results.begin() + static_cast<std::ptrdiff_t>(cursor + args.seeds));
                cursor += static_cast<std::size_t>(args.seeds);
                DelayCell cell = summarize_cell(cell_runs, mission);

                const std::string ds = format_seconds(delays[di]);
                std::vector<std::string> mrow{ds}, srow{ds};
                for (std::size_t w = 0; w < n_wp; ++w) {
                    mrow.push_back(format_double(cell.wp_mean[w]));
                    srow.push_back(format_double(cell.wp_std[w]));
                    csv += mission.id + "," + axis[ai] + "," + ds + ",W" + std::to_string(w + 1) +
                           "," + format_double(cell.wp_mean[w]) + "," +
                           format_double(cell.wp_std[w]) + "," + format_double(cell.crash) + "," +
                           (cell.time_reached < 0 ? "n/a" : format_double(cell.time_reached)) +
                           "," + (cell.time_missed < 0 ? "n/a" : format_double(cell.time_missed)) +
                           "\n";
                }
                mrow.push_back(format_double(cell.total_mean));
                mrow.push_back(format_double(cell.grand_mean));
                srow.push_back("");
                srow.push_back("");
                mean_rows.push_back(mrow);
                std_rows.push_back(srow);
                crash_rows.push_back(
                    {ds, format_double(cell.crash),
                     cell.time_reached < 0 ? "n/a" : format_double(cell.time_reached),
                     cell.time_missed < 0 ? "n/a" : format_double(cell.time_missed)});
            }

            text += "== mission " + mission.id + " / " + axis[ai] + " ==\n";
            text += "mean minimum distance from waypoints (m)\n" + tools::text_table(mean_rows);
            text += "standard deviation\n" + tools::text_table(std_rows);
            text += "crash proxy and completion time\n" + tools::text_table(crash_rows) + "\n";
        }
    }

    tools::write_report_file(out_path(args.out, "delaylab_report.txt"), text);
    tools::write_report_file(out_path(args.out, "delaylab_report.csv"), csv);
    std::printf("%s", text.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"block-level execution signals, failure models, and the robot delay lab"};
    app.require_subcommand(1);

    TraceArgs trace;
    auto* ct = app.add_subcommand("trace", "run one mission and dump summary + trajectory CSVs");
    ct->add_option("--program", trace.program)->required();
    ct->add_option("--mission", trace.mission)->required();
    ct->add_option("--mode", trace.mode)->check(CLI::IsMember({"naive", "optimized"}));
    ct->add_option("--interval", trace.interval)->check(CLI::PositiveNumber);
    ct->add_option("--seed", trace.seed);
    ct->add_option("--tolerance", trace.tolerance);
    ct->add_option("--out", trace.out);
    ct->add_flag("--strict", trace.strict, "nonzero exit when the run crashes");

    CorpusArgs corpus_args;
    auto* cc = app.add_subcommand("corpus", "mutate, execute, label, and persist a corpus");
    cc->add_option("--program", corpus_args.program)->required();
    cc->add_option("--mission", corpus_args.missions)->required()->expected(-1);
    cc->add_option("--out", corpus_args.out);
    cc->add_option("--seed", corpus_args.seed);
    cc->add_option("--interval", corpus_args.interval)->check(CLI::PositiveNumber);
    cc->add_option("--discard-window", corpus_args.discard_window);
    cc->add_option("--noise", corpus_args.noise);
    cc->add_option("--tolerance", corpus_args.tolerance);
    cc->add_option("--workers", corpus_args.workers);

    TrainArgs train;
    auto* ctr = app.add_subcommand("train", "10-fold cross-validation report plus a fitted model");
    ctr->add_option("--corpus", train.corpus)->required();
    ctr->add_option("--seed", train.seed);
    ctr->add_option("--out", train.out);

    EvalArgs eval_args;
    auto* ce = app.add_subcommand("eval", "score a saved model against a corpus");
    ce->add_option("--model", eval_args.model)->required();
    ce->add_option("--corpus", eval_args.corpus)->required();
    ce->add_option("--out", eval_args.out);

    XversionArgs xv;
    auto* cx = app.add_subcommand("xversion", "train on one release, test on another");
    cx->add_option("--train-corpus", xv.train_corpus)->required();
    cx->add_option("--test-corpus", xv.test_corpus)->required();
    cx->add_option("--seed", xv.seed);
    cx->add_option("--out", xv.out);

    CurveArgs curve;
    auto* ccv = app.add_subcommand("curve", "accuracy as a function of training-data volume");
    ccv->add_option("--corpus", curve.corpus)->required();
    ccv->add_option("--sizes", curve.sizes)->expected(-1);
    ccv->add_option("--seed", curve.seed);
    ccv->add_option("--out", curve.out);

    EarlyArgs early;
    auto* cea = app.add_subcommand("early", "detection accuracy at interval boundaries");
    cea->add_option("--corpus", early.corpus)->required();
    cea->add_option("--seed", early.seed);
    cea->add_option("--out", early.out);

    FeaturesArgs features;
    auto* cf = app.add_subcommand("features", "importance ranking and reduced-signal accuracy");
    cf->add_option("--corpus", features.corpus)->required();
    cf->add_option("--top-k", features.top_k);
    cf->add_option("--seed", features.seed);
    cf->add_option("--out", features.out);

    OverheadArgs overhead;
    auto* co = app.add_subcommand("overhead", "wall-clock and hook-count comparison per mode");
    co->add_option("--program", overhead.program)->required();
    co->add_option("--mission", overhead.mission)->required();
    co->add_option("--repeats", overhead.repeats);
    co->add_option("--seed", overhead.seed);
    co->add_option("--tolerance", overhead.tolerance);
    co->add_option("--out", overhead.out);

    DelaylabArgs delaylab;
    auto* cd = app.add_subcommand("delaylab", "nominal vs delay-injected behavior tables");
    cd->add_option("--program", delaylab.program)->required();
    cd->add_option("--mission", delaylab.missions)->required()->expected(-1);
    cd->add_option("--topic", delaylab.topics)->expected(-1);
    cd->add_option("--delay", delaylab.delays)->expected(-1);
    cd->add_option("--mechanism", delaylab.mechanism)->check(CLI::IsMember({"topic", "sleep"}));
    cd->add_option("--weights", delaylab.weights)->expected(-1);
    cd->add_option("--seeds", delaylab.seeds)->check(CLI::PositiveNumber);
    cd->add_option("--seed", delaylab.seed);
    cd->add_option("--tolerance", delaylab.tolerance);
    cd->add_option("--workers", delaylab.workers);
    cd->add_option("--out", delaylab.out);

    try {
        app.parse(argc, argv);
        if (ct->parsed()) return cmd_trace(trace);
        if (cc->parsed()) return cmd_corpus(corpus_args);
        if (ctr->parsed()) return cmd_train(train);
        if (ce->parsed()) return cmd_eval(eval_args);
        if (cx->parsed()) return cmd_xversion(xv);
        if (ccv->parsed()) return cmd_curve(curve);
        if (cea->parsed()) return cmd_early(early);
        if (cf->parsed()) return cmd_features(features);
        if (co->parsed()) return cmd_overhead(overhead);
        if (cd->parsed()) return cmd_delaylab(delaylab);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal failure: " << e.what() << "\n";
        return 2;
    }
}
