#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "blocksight/common/rng.hpp"
#include "blocksight/corpus/corpus_io.hpp"
#include "blocksight/learn/experiments.hpp"
#include "blocksight/learn/kfold.hpp"
#include "blocksight/learn/metrics.hpp"
#include "blocksight/learn/model_io.hpp"
#include "blocksight/learn/tree.hpp"
#include "support/test_util.hpp"

using namespace blocksight;
using test::asset;

namespace {

corpus::LabeledExample example(std::initializer_list<double> values, int label,
                               const std::string& id) {
    corpus::LabeledExample ex;
    std::size_t i = 0;
    for (double v : values) ex.features[i++] = v;
    ex.label = label;
    ex.prov = {id, -1};
    return ex;
}

corpus::LabeledDataset dataset(std::vector<corpus::LabeledExample> examples) {
    corpus::LabeledDataset ds;
    ds.version_tag = "test";
    ds.examples = std::move(examples);
    return ds;
}

}  // namespace

TEST_CASE("gini impurity exact values") {
    CHECK(learn::gini(5, 5) == 0.5);
    CHECK(learn::gini(10, 0) == 0.0);
    CHECK(learn::gini(0, 10) == 0.0);
    CHECK(learn::gini(0, 0) == 0.0);
}

TEST_CASE("two points, one feature: split at the midpoint") {
    auto ds = dataset({example({0.0}, 0, "a"), example({1.0}, 1, "b")});
    learn::DecisionTree tree = learn::fit(ds);
    REQUIRE_FALSE(tree.degenerate());
    const auto& root = tree.nodes()[0];
    CHECK(root.feature == 0);
    CHECK(root.threshold == 0.5);
    CHECK(tree.predict(ds.examples[0].features) == 0);
    CHECK(tree.predict(ds.examples[1].features) == 1);
    CHECK(tree.importances()[0] == 1.0);
    for (int f = 1; f < instrument::kNumSignals; ++f)
        CHECK(tree.importances()[static_cast<std::size_t>(f)] == 0.0);
}

TEST_CASE("single-class training yields a degenerate flagged tree") {
    auto ds = dataset({example({1.0}, 1, "a"), example({2.0}, 1, "b")});
    learn::DecisionTree tree = learn::fit(ds);
    CHECK(tree.degenerate());
    CHECK(tree.predict(ds.examples[0].features) == 1);
    for (double v : tree.importances()) CHECK(v == 0.0);
}

TEST_CASE("linearly separable sets are fit perfectly") {
    Rng rng(2024);
    for (int trial = 0; trial < 30; ++trial) {
        // Random separating line, points labeled by side with a margin.
        const double wx = uniform01(rng) * 2 - 1, wy = uniform01(rng) * 2 - 1;
        const double bias = uniform01(rng) - 0.5;
        std::vector<corpus::LabeledExample> pts;
        while (pts.size() < 4 + uniform_below(rng, 17)) {
            const double x = uniform01(rng) * 10 - 5, y = uniform01(rng) * 10 - 5;
            const double margin = wx * x + wy * y - bias;
            if (std::abs(margin) < 0.05) continue;
            pts.push_back(example({x, y}, margin > 0 ? 1 : 0,
                                  "p" + std::to_string(pts.size())));
        }
        auto ds = dataset(pts);
        learn::DecisionTree tree = learn::fit(ds, {0, 1});
        for (const auto& ex : ds.examples) CHECK(tree.predict(ex.features) == ex.label);

        double sum = 0;
        for (double v : tree.importances()) sum += v;
        if (!tree.degenerate()) CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("predict validates the feature-vector length") {
    auto ds = dataset({example({0.0}, 0, "a"), example({1.0}, 1, "b")});
    learn::DecisionTree tree = learn::fit(ds);
    std::vector<double> short_vec(10, 0.0);
    CHECK_THROWS_AS(tree.predict(short_vec), std::invalid_argument);
}

TEST_CASE("metrics identities against direct arithmetic") {
    Rng rng(555);
    for (int i = 0; i < 50; ++i) {
        const auto tp = static_cast<std::int64_t>(uniform_below(rng, 50));
        const auto fp = static_cast<std::int64_t>(uniform_below(rng, 50));
        const auto tn = static_cast<std::int64_t>(uniform_below(rng, 50));
        const auto fn = static_cast<std::int64_t>(uniform_below(rng, 50));
        if (tp + fp + tn + fn == 0) continue;
        learn::Metrics m = learn::metrics_from_counts(tp, fp, tn, fn);

        const double acc = static_cast<double>(tp + tn) / static_cast<double>(tp + fp + tn + fn);
        const double prec = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
        const double rec = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
        const double f = prec + rec > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
        CHECK(m.acc == acc);
        CHECK(m.prec == prec);
        CHECK(m.rec == rec);
        CHECK(m.f == f);
    }
    learn::Metrics zero = learn::metrics_from_counts(0, 0, 5, 0);
    CHECK(zero.prec == 0.0);
    CHECK(zero.rec == 0.0);
    CHECK(zero.f == 0.0);
}

TEST_CASE("fold count rule") {
    CHECK(learn::choose_k(1778) == 10);
    CHECK(learn::choose_k(100) == 10);
    CHECK(learn::choose_k(99) == 9);
    CHECK(learn::choose_k(50) == 5);
    CHECK(learn::choose_k(25) == 2);
    CHECK(learn::choose_k(20) == 2);
}

namespace {

corpus::LabeledDataset synthetic_corpus(std::size_t n, std::uint64_t seed) {
    // Two noisy clusters separated on two features.
    Rng rng(seed);
    std::vector<corpus::LabeledExample> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const int label = uniform_below(rng, 100) < 35 ? 1 : 0;
        const double base = label ? 40.0 : 10.0;
        corpus::LabeledExample ex;
        ex.features[0] = base + uniform01(rng) * 8;
        ex.features[3] = base * 2 + uniform01(rng) * 10;
        ex.features[7] = uniform01(rng) * 100;  // noise column
        ex.label = label;
        ex.prov = {"s" + std::to_string(i), -1};
        pts.push_back(ex);
    }
    return dataset(std::move(pts));
}

}  // namespace

TEST_CASE("kfold folds partition the dataset and stay hygienic") {
    corpus::LabeledDataset ds = synthetic_corpus(137, 31);
    learn::CvReport report = learn::kfold(ds, 7);
    CHECK(report.k == 10);
    REQUIRE(report.diagnostics.size() == 10);

    std::int64_t covered = 0;
    for (const auto& d : report.diagnostics) {
        covered += d.test_size_raw;
        CHECK(d.test_size_raw >= 10);
        CHECK(d.provenance_clean);
        CHECK(d.train_pass == d.train_fail);  // balanced per fold
        CHECK(d.test_pass == d.test_fail);
    }
    CHECK(covered == 137);

    CHECK_THROWS_AS(learn::kfold(synthetic_corpus(19, 1), 1), std::invalid_argument);
}

TEST_CASE("kfold is deterministic per seed") {
    corpus::LabeledDataset ds = synthetic_corpus(120, 8);
    learn::CvReport a = learn::kfold(ds, 42);
    learn::CvReport b = learn::kfold(ds, 42);
    CHECK(a == b);
    learn::CvReport c = learn::kfold(ds, 43);
    CHECK_FALSE(a == c);
}

TEST_CASE("cross-version identity sanity") {
    corpus::LabeledDataset ds = synthetic_corpus(60, 77);
    learn::Metrics m = learn::cross_version_eval(ds, ds, 5);
    CHECK(m.acc == 1.0);  // pure leaves reproduce their training labels
}

TEST_CASE("predictions are invariant under a monotone feature rescaling") {
    corpus::LabeledDataset train = synthetic_corpus(80, 19);
    corpus::LabeledDataset test = synthetic_corpus(40, 20);
    learn::DecisionTree base = learn::fit(train);

    for (int column : {0, 3}) {
        corpus::LabeledDataset train_scaled = train;
        corpus::LabeledDataset test_scaled = test;
        auto rescale = [&](corpus::LabeledDataset& d) {
            for (auto& ex : d.examples) {
                double& v = ex.features[static_cast<std::size_t>(column)];
                v = 3.0 * v + 17.0;
            }
        };
        rescale(train_scaled);
        rescale(test_scaled);
        learn::DecisionTree scaled = learn::fit(train_scaled);
        for (std::size_t i = 0; i < test.examples.size(); ++i)
            CHECK(base.predict(test.examples[i].features) ==
                  scaled.predict(test_scaled.examples[i].features));
    }
}

TEST_CASE("model serialization round-trips") {
    corpus::LabeledDataset ds = synthetic_corpus(90, 3);
    learn::DecisionTree tree = learn::fit(ds);
    learn::DecisionTree back = learn::tree_from_json(learn::tree_to_json(tree));
    CHECK(back.nodes().size() == tree.nodes().size());
    CHECK(back.importances() == tree.importances());
    for (const auto& ex : ds.examples)
        CHECK(back.predict(ex.features) == tree.predict(ex.features));
}

TEST_CASE("early sweep on the shipped corpus") {
    corpus::Corpus c = corpus::load_corpus(asset("fixtures/corpus_v1"));
    const std::uint64_t seed = 9;
    std::vector<learn::IntervalReport> sweep = learn::early_detection_sweep(c, seed);
    REQUIRE(sweep.size() >= 2);
    CHECK(sweep.back().is_final);

    std::size_t prev_n = c.records.size();
    for (const auto& row : sweep) {
        if (row.is_final) continue;
        CHECK(row.n <= prev_n);
        prev_n = row.n;
    }

    learn::CvReport headline = learn::kfold(learn::final_dataset(c), seed);
    CHECK(sweep.back().report == headline);
    CHECK(sweep.back().n == c.dataset.examples.size());
}

TEST_CASE("learning curve reproduces the headline report at full size") {
    corpus::LabeledDataset ds = synthetic_corpus(150, 4);
    const std::uint64_t seed = 11;
    auto curve = learn::learning_curve(ds, {40, 100, ds.examples.size()}, seed);
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].size == 40);
    CHECK(curve[2].report == learn::kfold(ds, seed));
    CHECK_THROWS_AS(learn::learning_curve(ds, {151}, seed), std::invalid_argument);
}

TEST_CASE("reduced-feature evaluation") {
    corpus::LabeledDataset ds = synthetic_corpus(140, 6);
    learn::FeatureEvalReport top26 = learn::reduced_feature_eval(ds, 26, 2);
    CHECK(top26.reduced == top26.full);
    CHECK(top26.selected.size() == 26);

    learn::FeatureEvalReport top2 = learn::reduced_feature_eval(ds, 2, 2);
    CHECK(top2.selected.size() == 2);
    // The informative columns rank above the noise column.
    std::set<int> sel(top2.selected.begin(), top2.selected.end());
    CHECK(sel.count(0) + sel.count(3) == 2);
    CHECK_THROWS_AS(learn::reduced_feature_eval(ds, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(learn::reduced_feature_eval(ds, 27, 2), std::invalid_argument);
}

TEST_CASE("importances sum to one whenever a split exists") {
    for (std::uint64_t seed = 60; seed < 70; ++seed) {
        corpus::LabeledDataset ds = synthetic_corpus(64, seed);
        learn::DecisionTree tree = learn::fit(ds);
        if (tree.degenerate()) continue;
        double sum = 0;
        for (double v : tree.importances()) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}
