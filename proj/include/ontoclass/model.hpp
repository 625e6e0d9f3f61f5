#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ontoclass/conceptmap.hpp"
#include "ontoclass/sparse.hpp"

namespace ontoclass {

// Feature keys live in one namespace: term features as "t:<term>", concept
// features as "c:<concept id>". Keeps a lowercase term from colliding with a
// lowercase concept id.
std::string term_feature(const std::string& term);
std::string concept_feature(const std::string& concept_id);
SparseVector representation_features(const HybridRepresentation& rep);

// Ordered vocabulary over feature keys, built from training data only.
class FeatureSpace {
public:
    FeatureSpace() = default;
    explicit FeatureSpace(std::vector<std::string> sorted_vocabulary);

    std::size_t size() const { return vocabulary_.size(); }
    const std::string& key(std::size_t ordinal) const { return vocabulary_.at(ordinal); }
    const std::vector<std::string>& vocabulary() const { return vocabulary_; }
    std::optional<std::size_t> find(const std::string& key) const;

private:
    std::vector<std::string> vocabulary_;
    std::map<std::string, std::size_t> index_;
};

// Per-category aggregate: summed raw feature counts and their TF-IDF weights,
// where tfidf(w) = TF(category, w) * ln(n_categories / DF(w)) and DF counts
// categories containing w. A feature present in every category weighs zero
// everywhere.
struct CategoryProfile {
    std::string category;
    SparseVector raw_counts;
    SparseVector tfidf;
};

struct ProfileSet {
    FeatureSpace space;
    std::vector<CategoryProfile> profiles;      // sorted by category
    std::map<std::string, std::size_t> df;      // feature -> number of categories containing it
    std::size_t n_categories = 0;
};

using LabeledRepresentations = std::vector<std::pair<HybridRepresentation, std::string>>;

// Throws DataError for fewer than 2 categories or an empty representation.
ProfileSet build_profiles(const LabeledRepresentations& labeled);

enum class ClassifierKind { Knn, NaiveBayes, AdaBoostNb, GainRatioTree };
ClassifierKind parse_classifier_kind(const std::string& name);  // knn | nb | adaboost-nb | tree
std::string to_string(ClassifierKind);

struct Hyperparameters {
    int k = 5;            // KNN neighbors
    int rounds = 10;      // AdaBoostM1 rounds
    double alpha = 1.0;   // Naive Bayes Laplace smoothing
    int max_depth = 20;   // tree depth cap
    int min_leaf = 2;     // minimum samples per tree leaf
};

// Document vector in feature-ordinal space. Zero entries are never stored.
using WeightedVector = std::map<std::size_t, double>;

// Multinomial Naive Bayes over weighted counts; instance-weight aware so it
// can serve as the AdaBoostM1 base learner. Uniform instance weights give
// plain NB.
struct NbModel {
    std::vector<double> log_priors;                  // [class]
    std::vector<std::vector<double>> log_likelihood; // [class][feature ordinal]

    std::vector<double> log_scores(const WeightedVector& doc) const;
    std::size_t predict(const WeightedVector& doc) const;
};

NbModel train_nb(const std::vector<WeightedVector>& docs, const std::vector<std::size_t>& labels,
                 const std::vector<double>& instance_weights, std::size_t n_classes,
                 std::size_t n_features, double alpha);

struct KnnModel {
    std::vector<WeightedVector> vectors;  // L2-normalized
    std::vector<std::size_t> labels;
};

struct BoostRound {
    NbModel learner;
    double vote_weight = 0.0;  // alpha_t = ln((1 - eps_t) / eps_t)
};

struct AdaBoostModel {
    std::vector<BoostRound> rounds;
};

struct TreeNode {
    bool leaf = true;
    std::size_t feature = 0;
    double threshold = 0.0;
    std::unique_ptr<TreeNode> left;   // value <= threshold
    std::unique_ptr<TreeNode> right;  // value > threshold
    std::size_t leaf_class = 0;
    std::vector<double> class_counts;  // training distribution at this node
};

struct TreeModel {
    std::unique_ptr<TreeNode> root;
};

struct ClassifyResult {
    std::string category;
    std::vector<std::pair<std::string, double>> scores;  // per category, sorted by name
    bool fallback = false;  // empty weighted vector: priors (NB) / majority (others)
};

class TrainedModel {
public:
    // Weights a representation into feature space: count * ln(n_categories /
    // DF(w)), out-of-vocabulary features dropped, L2-normalized for KNN.
    // Enforces the configuration fingerprint when both sides carry one.
    WeightedVector weight_document(const HybridRepresentation& rep) const;
    ClassifyResult classify(const HybridRepresentation& rep) const;

    void save(std::ostream& out) const;
    static TrainedModel load(std::istream& in);

    const std::vector<std::string>& categories() const { return categories_; }
    const std::string& fingerprint() const { return fingerprint_; }
    const FeatureSpace& feature_space() const { return space_; }
    const std::vector<CategoryProfile>& profiles() const { return profiles_; }
    ClassifierKind kind() const { return kind_; }
    const Hyperparameters& hyperparameters() const { return params_; }
    const std::string& majority_category() const { return majority_category_; }
    const TreeModel& tree() const;           // GainRatioTree only
    const AdaBoostModel& ensemble() const;   // AdaBoostNb only
    const NbModel& naive_bayes() const;      // NaiveBayes only

    friend TrainedModel train(const LabeledRepresentations&, ClassifierKind,
                              const Hyperparameters&, const std::string&);

private:
    ClassifyResult classify_weighted(const WeightedVector& doc) const;

    FeatureSpace space_;
    std::vector<CategoryProfile> profiles_;
    std::vector<double> idf_;  // per feature ordinal
    std::size_t n_categories_ = 0;
    std::vector<std::string> categories_;  // sorted
    ClassifierKind kind_ = ClassifierKind::NaiveBayes;
    Hyperparameters params_;
    std::string fingerprint_;
    std::string majority_category_;

    KnnModel knn_;
    NbModel nb_;
    AdaBoostModel boost_;
    TreeModel tree_;
};

// Trains a classifier over the labeled representations. The fingerprint is
// stored and later enforced against representations produced under a
// different pipeline configuration. Throws ConfigError for degenerate
// hyperparameters, DataError for degenerate data.
TrainedModel train(const LabeledRepresentations& labeled, ClassifierKind kind,
                   const Hyperparameters& params = {}, const std::string& fingerprint = {});

inline constexpr const char* kModelMagic = "OCMODEL\n";
inline constexpr int kModelFormatVersion = 1;

}  // namespace ontoclass
