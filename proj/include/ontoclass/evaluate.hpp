#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ontoclass {

struct ConfusionCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;
};

struct CategoryMetrics {
    ConfusionCounts counts;
    double precision = 0.0;  // tp / (tp + fp), 0 when the denominator is 0
    double recall = 0.0;     // tp / (tp + fn), 0 when the denominator is 0
    double f1 = 0.0;         // 2PR / (P + R), 0 when P + R = 0
};

struct EvaluationReport {
    std::vector<std::string> categories;  // sorted
    std::map<std::string, CategoryMetrics> per_category;
    double macro_precision = 0.0;  // unweighted mean over all categories
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    std::size_t document_count = 0;
    std::string fingerprint;
};

// Scores single-label predictions against gold labels. Throws DataError on
// length mismatch or a label outside `categories`.
EvaluationReport score(const std::vector<std::string>& gold,
                       const std::vector<std::string>& predicted,
                       const std::vector<std::string>& categories);

// Deterministic per-category shuffle and cut: each category contributes
// round(ratio * n) documents to the training side.
struct SplitResult {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
};
SplitResult stratified_split(const std::vector<std::string>& labels, double ratio, uint64_t seed);

// k disjoint stratified folds covering every index exactly once. Throws
// DataError naming the category when one has fewer than k documents.
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<std::string>& labels,
                                                       int k, uint64_t seed);

// Runs fit_predict(train, test) per fold and scores each fold's predictions.
using FitPredictFn = std::function<std::vector<std::string>(
    const std::vector<std::size_t>& train, const std::vector<std::size_t>& test)>;
std::vector<EvaluationReport> cross_validate(const std::vector<std::string>& labels, int k,
                                             uint64_t seed, const FitPredictFn& fit_predict);

// Rendering: fixed-width table / line-oriented machine schema (see README).
std::string render_report_table(const EvaluationReport& report);
std::string render_report_json(const EvaluationReport& report);

namespace detail {
// Pinned Fisher-Yates (modulo draw) so shuffles do not depend on the standard
// library's distribution implementation.
template <typename Rng>
void shuffle(std::vector<std::size_t>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i)
        std::swap(values[i - 1], values[rng() % i]);
}
}  // namespace detail

}  // namespace ontoclass
