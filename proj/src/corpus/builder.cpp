#include "blocksight/corpus/builder.hpp"

#include <stdexcept>

#include "blocksight/common/parallel.hpp"
#include "blocksight/common/rng.hpp"
#include "blocksight/corpus/labeling.hpp"

namespace blocksight::corpus {

namespace {

struct Job {
    const Mutant* mutant;
    const robosim::Mission* mission;
    std::size_t mutant_index;
    std::size_t mission_index;
};

}  // namespace

Corpus build_corpus(const vm::Program& base, const std::vector<robosim::Mission>& missions,
                    const CorpusConfig& config) {
    if (missions.empty()) throw std::invalid_argument("build_corpus needs at least one mission");
    if (config.mode == instrument::Mode::None)
        throw std::invalid_argument("corpus runs need instrumentation enabled");

    MutantSet mutants = enumerate_mutants(base, config.core_blocks);

    Corpus corpus;
    corpus.excluded = std::move(mutants.excluded);
    corpus.valid_mutants = static_cast<std::int64_t>(mutants.valid.size());
    corpus.interval_size = config.interval_size;
    corpus.version_tag = base.meta.version;
    corpus.seed = config.seed;
    corpus.dataset.version_tag = base.meta.version;

    std::vector<Job> jobs;
    for (std::size_t mi = 0; mi < mutants.valid.size(); ++mi)
        for (std::size_t si = 0; si < missions.size(); ++si)
            jobs.push_back({&mutants.valid[mi], &missions[si], mi, si});

    std::vector<RunRecord> records(jobs.size());
    parallel_for(jobs.size(), config.workers, [&](std::size_t i) {
        const Job& job = jobs[i];
        robosim::MissionRunConfig rc;
        rc.seed = mix_seed(config.seed, job.mutant_index, job.mission_index);
        rc.mode = config.mode;
        rc.interval_size = config.interval_size;
        rc.noise_sigma_m = config.noise_sigma_m;
        rc.limits = config.limits;
        robosim::MissionResult r = robosim::run_mission(job.mutant->program, *job.mission, rc);

        RunRecord rec;
        rec.run_id = job.mutant->id + "_" + job.mission->id;
        rec.mutant_id = job.mutant->id;
        rec.op_name = operator_name(job.mutant->kind, job.mutant->variant);
        rec.site = job.mutant->site;
        rec.mission_id = job.mission->id;
        rec.exit = r.exit;
        rec.instructions = r.final_state.instructions_retired;
        rec.label = label_run(r.trajectory, *job.mission, r.exit);
        rec.discarded =
            r.exit == vm::ExitKind::Crashed && rec.instructions <= config.discard_window;
        rec.stream = std::move(*r.stream);
        records[i] = std::move(rec);
    });

    for (auto& rec : records) {
        if (!rec.discarded) {
            LabeledExample ex;
            ex.features = features_from_summary(rec.stream.final_summary);
            ex.label = rec.label;
            ex.prov = {rec.run_id, -1};
            corpus.dataset.examples.push_back(ex);
        }
        corpus.records.push_back(std::move(rec));
    }
    if (corpus.dataset.examples.empty()) throw std::runtime_error("empty corpus");
    return corpus;
}

}  // namespace blocksight::corpus
