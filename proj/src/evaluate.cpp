#include "ontoclass/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ontoclass/errors.hpp"

namespace ontoclass {

EvaluationReport score(const std::vector<std::string>& gold,
                       const std::vector<std::string>& predicted,
                       const std::vector<std::string>& categories) {
    if (gold.size() != predicted.size())
        throw DataError("gold and predicted label counts differ (" + std::to_string(gold.size()) +
                        " vs " + std::to_string(predicted.size()) + ")");
    if (gold.empty()) throw DataError("nothing to score: no documents");

    std::set<std::string> known(categories.begin(), categories.end());
    for (const auto& label : gold)
        if (!known.count(label)) throw DataError("gold label '" + label + "' is not a known category");
    for (const auto& label : predicted)
        if (!known.count(label))
            throw DataError("predicted label '" + label + "' is not a known category");

    EvaluationReport report;
    report.categories.assign(known.begin(), known.end());
    report.document_count = gold.size();

    const long n = static_cast<long>(gold.size());
    for (const auto& category : report.categories) {
        CategoryMetrics m;
        for (std::size_t i = 0; i < gold.size(); ++i) {
            bool is_gold = gold[i] == category;
            bool is_pred = predicted[i] == category;
            if (is_gold && is_pred) ++m.counts.tp;
            else if (!is_gold && is_pred) ++m.counts.fp;
            else if (is_gold && !is_pred) ++m.counts.fn;
        }
        m.counts.tn = n - m.counts.tp - m.counts.fp - m.counts.fn;
        long pd = m.counts.tp + m.counts.fp;
        long rd = m.counts.tp + m.counts.fn;
        m.precision = pd > 0 ? static_cast<double>(m.counts.tp) / static_cast<double>(pd) : 0.0;
        m.recall = rd > 0 ? static_cast<double>(m.counts.tp) / static_cast<double>(rd) : 0.0;
        m.f1 = (m.precision + m.recall) > 0.0
                   ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                   : 0.0;
        report.macro_precision += m.precision;
        report.macro_recall += m.recall;
        report.macro_f1 += m.f1;
        report.per_category[category] = m;
    }
    const double k = static_cast<double>(report.categories.size());
    report.macro_precision /= k;
    report.macro_recall /= k;
    report.macro_f1 /= k;
    return report;
}

namespace {

std::map<std::string, std::vector<std::size_t>> group_by_label(
    const std::vector<std::string>& labels) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
    return groups;
}

}  // namespace

SplitResult stratified_split(const std::vector<std::string>& labels, double ratio, uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("split ratio must be in (0, 1)");
    SplitResult result;
    std::mt19937_64 rng(seed);
    for (auto& [category, indices] : group_by_label(labels)) {
        detail::shuffle(indices, rng);
        auto n_train = static_cast<std::size_t>(
            std::llround(ratio * static_cast<double>(indices.size())));
        n_train = std::min(n_train, indices.size());
        for (std::size_t i = 0; i < indices.size(); ++i)
            (i < n_train ? result.train_indices : result.test_indices).push_back(indices[i]);
    }
    std::sort(result.train_indices.begin(), result.train_indices.end());
    std::sort(result.test_indices.begin(), result.test_indices.end());
    return result;
}

std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<std::string>& labels,
                                                       int k, uint64_t seed) {
    if (k < 2) throw ConfigError("k-fold requires k >= 2");
    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    std::mt19937_64 rng(seed);
    for (auto& [category, indices] : group_by_label(labels)) {
        if (indices.size() < static_cast<std::size_t>(k))
            throw DataError("category '" + category + "' has only " +
                            std::to_string(indices.size()) + " documents, fewer than k=" +
                            std::to_string(k));
        detail::shuffle(indices, rng);
        for (std::size_t i = 0; i < indices.size(); ++i)
            folds[i % static_cast<std::size_t>(k)].push_back(indices[i]);
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

std::vector<EvaluationReport> cross_validate(const std::vector<std::string>& labels, int k,
                                             uint64_t seed, const FitPredictFn& fit_predict) {
    auto folds = stratified_folds(labels, k, seed);
    std::set<std::string> category_set(labels.begin(), labels.end());
    std::vector<std::string> categories(category_set.begin(), category_set.end());

    std::vector<EvaluationReport> reports;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::size_t> train;
        for (std::size_t g = 0; g < folds.size(); ++g)
            if (g != f) train.insert(train.end(), folds[g].begin(), folds[g].end());
        std::sort(train.begin(), train.end());

        std::vector<std::string> predictions = fit_predict(train, folds[f]);
        std::vector<std::string> gold;
        for (std::size_t i : folds[f]) gold.push_back(labels[i]);
        reports.push_back(score(gold, predictions, categories));
    }
    return reports;
}

std::string render_report_table(const EvaluationReport& report) {
    std::ostringstream out;
    std::size_t width = 8;
    for (const auto& category : report.categories) width = std::max(width, category.size());
    out << std::left;
    auto row = [&](const std::string& name, double p, double r, double f) {
        out << name;
        out << std::string(width + 2 - name.size(), ' ');
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%8.4f %8.4f %8.4f\n", p, r, f);
        out << buffer;
    };
    out << "category" << std::string(width + 2 - 8, ' ')
        << "   prec    recall        F\n";
    for (const auto& category : report.categories) {
        const auto& m = report.per_category.at(category);
        row(category, m.precision, m.recall, m.f1);
    }
    row("Mac Avg", report.macro_precision, report.macro_recall, report.macro_f1);
    out << "documents: " << report.document_count << "\n";
    return out.str();
}

std::string render_report_json(const EvaluationReport& report) {
    nlohmann::json j;
    j["documents"] = report.document_count;
    j["fingerprint"] = report.fingerprint;
    j["macro"] = {{"precision", report.macro_precision},
                  {"recall", report.macro_recall},
                  {"f", report.macro_f1}};
    nlohmann::json per = nlohmann::json::object();
    for (const auto& category : report.categories) {
        const auto& m = report.per_category.at(category);
        per[category] = {{"precision", m.precision}, {"recall", m.recall},     {"f", m.f1},
                         {"tp", m.counts.tp},        {"fp", m.counts.fp},      {"fn", m.counts.fn},
                         {"tn", m.counts.tn}};
    }
    j["categories"] = per;
    return j.dump(1, '\t') + "\n";
}

}  // namespace ontoclass
