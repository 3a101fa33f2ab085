#include "blocksight/learn/kfold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "blocksight/common/rng.hpp"

namespace blocksight::learn {

namespace {

bool importances_equal(const Importances& a, const Importances& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

bool metrics_equal(const Metrics& a, const Metrics& b) {
    return a.tp == b.tp && a.fp == b.fp && a.tn == b.tn && a.fn == b.fn && a.acc == b.acc &&
           a.prec == b.prec && a.rec == b.rec && a.f == b.f;
}

void count_classes(const corpus::LabeledDataset& ds, std::int64_t& pass, std::int64_t& fail) {
    pass = fail = 0;
    for (const auto& e : ds.examples) (e.label == corpus::kFail ? fail : pass) += 1;
}

corpus::LabeledDataset balanced_or_asis(const corpus::LabeledDataset& ds, std::uint64_t seed) {
    return corpus::has_both_classes(ds) ? corpus::balance(ds, seed) : ds;
}

}  // namespace

bool CvReport::operator==(const CvReport& other) const {
    if (k != other.k || fold_metrics.size() != other.fold_metrics.size()) return false;
    for (std::size_t i = 0; i < fold_metrics.size(); ++i)
        if (!metrics_equal(fold_metrics[i], other.fold_metrics[i])) return false;
    if (!metrics_equal(mean, other.mean)) return false;
    if (fold_importances.size() != other.fold_importances.size()) return false;
    for (std::size_t i = 0; i < fold_importances.size(); ++i)
        if (!importances_equal(fold_importances[i], other.fold_importances[i])) return false;
    return importances_equal(mean_importances, other.mean_importances);
}

int choose_k(std::size_t n) {
    if (n >= 100) return 10;
    return static_cast<int>(n / 10);  // largest k with floor(n/k) >= 10
}

CvReport kfold(const corpus::LabeledDataset& dataset, std::uint64_t seed,
               const std::vector<int>& feature_mask) {
    const std::size_t n = dataset.examples.size();
    if (n < 20) throw std::invalid_argument("kfold needs at least 20 examples");
    const int k = choose_k(n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    fisher_yates(rng, order);

    CvReport report;
    report.k = k;
    double sum_acc = 0, sum_prec = 0, sum_rec = 0, sum_f = 0;
    Importances sum_imp{};

    for (int fold = 0; fold < k; ++fold) {
        const std::size_t lo = n * static_cast<std::size_t>(fold) / static_cast<std::size_t>(k);
        const std::size_t hi =
            n * static_cast<std::size_t>(fold + 1) / static_cast<std::size_t>(k);

        corpus::LabeledDataset train, test;
        train.version_tag = dataset.version_tag;
        test.version_tag = dataset.version_tag;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& ex = dataset.examples[order[i]];
            (i >= lo && i < hi ? test : train).examples.push_back(ex);
        }

        corpus::LabeledDataset train_b =
            balanced_or_asis(train, mix_seed(seed, static_cast<std::uint64_t>(fold), 0));
        corpus::LabeledDataset test_b =
            balanced_or_asis(test, mix_seed(seed, static_cast<std::uint64_t>(fold), 1));

        DecisionTree tree = fit(train_b, feature_mask);
        std::vector<int> truth, pred;
        truth.reserve(test_b.examples.size());
        pred.reserve(test_b.examples.size());
        for (const auto& ex : test_b.examples) {
            truth.push_back(ex.label);
            pred.push_back(tree.predict(ex.features));
        }
        Metrics m = score_predictions(truth, pred);

        FoldDiagnostics diag;
        {
            diag.test_size_raw = static_cast<std::int64_t>(hi - lo);
            count_classes(train_b, diag.train_pass, diag.train_fail);
            count_classes(test_b, diag.test_pass, diag.test_fail);
            std::set<std::string> train_ids;
            for (const auto& ex : train_b.examples) train_ids.insert(ex.prov.key());
            for (const auto& ex : test_b.examples)
                if (train_ids.count(ex.prov.key())) diag.provenance_clean = false;
        }

        report.fold_metrics.push_back(m);
        report.fold_importances.push_back(tree.importances());
        report.diagnostics.push_back(diag);
        report.mean.tp += m.tp;
        report.mean.fp += m.fp;
        report.mean.tn += m.tn;
        report.mean.fn += m.fn;
        sum_acc += m.acc;
        sum_prec += m.prec;
        sum_rec += m.rec;
        sum_f += m.f;
        for (std::size_t i = 0; i < sum_imp.size(); ++i)
            sum_imp[i] += tree.importances()[i];
    }

    const double dk = static_cast<double>(k);
    report.mean.acc = sum_acc / dk;
    report.mean.prec = sum_prec / dk;
    report.mean.rec = sum_rec / dk;
    report.mean.f = sum_f / dk;
    for (std::size_t i = 0; i < sum_imp.size(); ++i) report.mean_importances[i] = sum_imp[i] / dk;
    return report;
}

Metrics cross_version_eval(const corpus::LabeledDataset& train_ds,
                           const corpus::LabeledDataset& test_ds, std::uint64_t seed,
                           const std::vector<int>& feature_mask) {
    corpus::LabeledDataset train_b = balanced_or_asis(train_ds, seed);
    DecisionTree tree = fit(train_b, feature_mask);
    std::vector<int> truth, pred;
    truth.reserve(test_ds.examples.size());
    pred.reserve(test_ds.examples.size());
    for (const auto& ex : test_ds.examples) {
        truth.push_back(ex.label);
        pred.push_back(tree.predict(ex.features));
    }
    return score_predictions(truth, pred);
}

}  // namespace blocksight::learn
