#include "ontoclass/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ontoclass/errors.hpp"

namespace ontoclass {

std::string term_feature(const std::string& term) { return "t:" + term; }
std::string concept_feature(const std::string& concept_id) { return "c:" + concept_id; }

SparseVector representation_features(const HybridRepresentation& rep) {
    SparseVector features;
    for (const auto& [term, count] : rep.term_part) features[term_feature(term)] += count;
    for (const auto& [id, count] : rep.concept_part) features[concept_feature(id)] += count;
    return features;
}

FeatureSpace::FeatureSpace(std::vector<std::string> sorted_vocabulary)
    : vocabulary_(std::move(sorted_vocabulary)) {
    for (std::size_t i = 0; i < vocabulary_.size(); ++i) index_[vocabulary_[i]] = i;
    if (index_.size() != vocabulary_.size())
        throw IntegrityError("feature space vocabulary contains duplicates");
}

std::optional<std::size_t> FeatureSpace::find(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

ProfileSet build_profiles(const LabeledRepresentations& labeled) {
    std::map<std::string, SparseVector> per_category;
    for (std::size_t i = 0; i < labeled.size(); ++i) {
        const auto& [rep, category] = labeled[i];
        if (category.empty()) throw DataError("document " + std::to_string(i) + " has no category");
        SparseVector features = representation_features(rep);
        if (features.empty())
            throw DataError("document " + std::to_string(i) +
                            " is empty after representation; cannot train on it");
        auto& bucket = per_category[category];
        for (const auto& [key, value] : features) bucket[key] += value;
    }
    if (per_category.size() < 2)
        throw DataError("training requires at least 2 categories, got " +
                        std::to_string(per_category.size()));

    ProfileSet set;
    set.n_categories = per_category.size();

    std::set<std::string> vocabulary;
    for (const auto& [category, counts] : per_category) {
        for (const auto& [key, value] : counts) {
            vocabulary.insert(key);
            ++set.df[key];
        }
    }
    set.space = FeatureSpace(std::vector<std::string>(vocabulary.begin(), vocabulary.end()));

    const double n = static_cast<double>(set.n_categories);
    for (auto& [category, counts] : per_category) {
        CategoryProfile profile;
        profile.category = category;
        profile.raw_counts = counts;
        for (const auto& [key, value] : counts) {
            double idf = std::log(n / static_cast<double>(set.df.at(key)));
            set_or_erase(profile.tfidf, key, value * idf);
        }
        set.profiles.push_back(std::move(profile));
    }
    return set;
}

ClassifierKind parse_classifier_kind(const std::string& name) {
    if (name == "knn") return ClassifierKind::Knn;
    if (name == "nb") return ClassifierKind::NaiveBayes;
    if (name == "adaboost-nb") return ClassifierKind::AdaBoostNb;
    if (name == "tree") return ClassifierKind::GainRatioTree;
    throw ConfigError("unknown classifier '" + name + "' (knn | nb | adaboost-nb | tree)");
}

std::string to_string(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::Knn: return "knn";
        case ClassifierKind::NaiveBayes: return "nb";
        case ClassifierKind::AdaBoostNb: return "adaboost-nb";
        case ClassifierKind::GainRatioTree: return "tree";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Naive Bayes

NbModel train_nb(const std::vector<WeightedVector>& docs, const std::vector<std::size_t>& labels,
                 const std::vector<double>& instance_weights, std::size_t n_classes,
                 std::size_t n_features, double alpha) {
    NbModel model;
    model.log_priors.assign(n_classes, 0.0);
    model.log_likelihood.assign(n_classes, std::vector<double>(n_features, 0.0));

    std::vector<double> class_weight(n_classes, 0.0);
    std::vector<std::vector<double>> counts(n_classes, std::vector<double>(n_features, 0.0));
    std::vector<double> totals(n_classes, 0.0);
    double total_weight = 0.0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        double w = instance_weights[i];
        class_weight[labels[i]] += w;
        total_weight += w;
        for (const auto& [f, value] : docs[i]) {
            counts[labels[i]][f] += w * value;
            totals[labels[i]] += w * value;
        }
    }
    if (total_weight <= 0.0) throw DataError("total instance weight is zero");
    for (std::size_t c = 0; c < n_classes; ++c) {
        if (class_weight[c] <= 0.0)
            throw DataError("class " + std::to_string(c) + " has zero total instance weight");
        model.log_priors[c] = std::log(class_weight[c] / total_weight);
        double denom = totals[c] + alpha * static_cast<double>(n_features);
        for (std::size_t f = 0; f < n_features; ++f)
            model.log_likelihood[c][f] = std::log((counts[c][f] + alpha) / denom);
    }
    return model;
}

std::vector<double> NbModel::log_scores(const WeightedVector& doc) const {
    std::vector<double> scores = log_priors;
    for (std::size_t c = 0; c < scores.size(); ++c)
        for (const auto& [f, value] : doc) scores[c] += value * log_likelihood[c][f];
    return scores;
}

std::size_t NbModel::predict(const WeightedVector& doc) const {
    std::vector<double> scores = log_scores(doc);
    return static_cast<std::size_t>(
        std::max_element(scores.begin(), scores.end()) - scores.begin());
}

// ---------------------------------------------------------------------------
// Training

namespace {

double l2_norm(const WeightedVector& v) {
    double s = 0.0;
    for (const auto& [f, x] : v) s += x * x;
    return std::sqrt(s);
}

double dot(const WeightedVector& a, const WeightedVector& b) {
    const WeightedVector& small = a.size() <= b.size() ? a : b;
    const WeightedVector& large = a.size() <= b.size() ? b : a;
    double s = 0.0;
    for (const auto& [f, x] : small) {
        auto it = large.find(f);
        if (it != large.end()) s += x * it->second;
    }
    return s;
}

double entropy(const std::vector<double>& class_counts, double total) {
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double c : class_counts) {
        if (c <= 0.0) continue;
        double p = c / total;
        h -= p * std::log(p);
    }
    return h;
}

struct TreeBuilder {
    const std::vector<WeightedVector>& docs;
    const std::vector<std::size_t>& labels;
    std::size_t n_classes;
    std::size_t n_features;
    int max_depth;
    int min_leaf;

    std::unique_ptr<TreeNode> build(std::vector<std::size_t> indices, int depth) {
        auto node = std::make_unique<TreeNode>();
        node->class_counts.assign(n_classes, 0.0);
        for (std::size_t i : indices) node->class_counts[labels[i]] += 1.0;
        node->leaf_class = static_cast<std::size_t>(
            std::max_element(node->class_counts.begin(), node->class_counts.end()) -
            node->class_counts.begin());

        const double total = static_cast<double>(indices.size());
        const double node_entropy = entropy(node->class_counts, total);
        bool pure = false;
        for (double c : node->class_counts) pure = pure || c == total;
        if (pure || depth >= max_depth ||
            indices.size() < 2 * static_cast<std::size_t>(min_leaf))
            return node;

        double best_ratio = 0.0;
        std::size_t best_feature = 0;
        double best_threshold = 0.0;
        bool found = false;

        std::vector<std::pair<double, std::size_t>> values(indices.size());
        for (std::size_t f = 0; f < n_features; ++f) {
            for (std::size_t i = 0; i < indices.size(); ++i) {
                auto it = docs[indices[i]].find(f);
                values[i] = {it == docs[indices[i]].end() ? 0.0 : it->second, labels[indices[i]]};
            }
            std::sort(values.begin(), values.end());
            if (values.front().first == values.back().first) continue;

            std::vector<double> left_counts(n_classes, 0.0);
            std::vector<double> right_counts = node->class_counts;
            for (std::size_t i = 0; i + 1 < values.size(); ++i) {
                left_counts[values[i].second] += 1.0;
                right_counts[values[i].second] -= 1.0;
                if (values[i].first == values[i + 1].first) continue;
                double n_left = static_cast<double>(i + 1);
                double n_right = total - n_left;
                if (n_left < min_leaf || n_right < min_leaf) continue;
                double gain = node_entropy - (n_left / total) * entropy(left_counts, n_left) -
                              (n_right / total) * entropy(right_counts, n_right);
                if (gain <= 1e-12) continue;
                double pl = n_left / total, pr = n_right / total;
                double split_info = -(pl * std::log(pl) + pr * std::log(pr));
                double ratio = gain / split_info;
                double threshold = (values[i].first + values[i + 1].first) / 2.0;
                if (!found || ratio > best_ratio ||
                    (ratio == best_ratio && (f < best_feature ||
                                             (f == best_feature && threshold < best_threshold)))) {
                    found = true;
                    best_ratio = ratio;
                    best_feature = f;
                    best_threshold = threshold;
                }
            }
        }
        if (!found) return node;

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : indices) {
            auto it = docs[i].find(best_feature);
            double v = it == docs[i].end() ? 0.0 : it->second;
            (v <= best_threshold ? left_idx : right_idx).push_back(i);
        }
        node->leaf = false;
        node->feature = best_feature;
        node->threshold = best_threshold;
        node->left = build(std::move(left_idx), depth + 1);
        node->right = build(std::move(right_idx), depth + 1);
        return node;
    }
};

constexpr double kMinBoostError = 1e-10;

}  // namespace

TrainedModel train(const LabeledRepresentations& labeled, ClassifierKind kind,
                   const Hyperparameters& params, const std::string& fingerprint) {
    if (params.k < 1) throw ConfigError("knn k must be >= 1");
    if (params.rounds < 1) throw ConfigError("boosting rounds must be >= 1");
    if (!(params.alpha > 0.0)) throw ConfigError("smoothing alpha must be > 0");
    if (params.max_depth < 1) throw ConfigError("tree depth must be >= 1");
    if (params.min_leaf < 1) throw ConfigError("tree min leaf must be >= 1");

    TrainedModel model;
    model.kind_ = kind;
    model.params_ = params;
    model.fingerprint_ = fingerprint;

    ProfileSet profiles = build_profiles(labeled);
    model.space_ = std::move(profiles.space);
    model.profiles_ = std::move(profiles.profiles);
    model.n_categories_ = profiles.n_categories;
    for (const auto& profile : model.profiles_) model.categories_.push_back(profile.category);

    model.idf_.assign(model.space_.size(), 0.0);
    for (std::size_t f = 0; f < model.space_.size(); ++f) {
        double df = static_cast<double>(profiles.df.at(model.space_.key(f)));
        model.idf_[f] = std::log(static_cast<double>(model.n_categories_) / df);
    }

    std::map<std::string, std::size_t> category_ordinal;
    for (std::size_t c = 0; c < model.categories_.size(); ++c)
        category_ordinal[model.categories_[c]] = c;

    std::vector<WeightedVector> docs(labeled.size());
    std::vector<std::size_t> labels(labeled.size());
    std::vector<double> label_counts(model.categories_.size(), 0.0);
    for (std::size_t i = 0; i < labeled.size(); ++i) {
        docs[i] = model.weight_document(labeled[i].first);
        labels[i] = category_ordinal.at(labeled[i].second);
        label_counts[labels[i]] += 1.0;
    }
    model.majority_category_ =
        model.categories_[static_cast<std::size_t>(
            std::max_element(label_counts.begin(), label_counts.end()) - label_counts.begin())];

    const std::size_t n_classes = model.categories_.size();
    const std::size_t n_features = model.space_.size();

    switch (kind) {
        case ClassifierKind::Knn: {
            model.knn_.vectors = docs;
            model.knn_.labels = labels;
            break;
        }
        case ClassifierKind::NaiveBayes: {
            std::vector<double> uniform(docs.size(), 1.0 / static_cast<double>(docs.size()));
            model.nb_ = train_nb(docs, labels, uniform, n_classes, n_features, params.alpha);
            break;
        }
        case ClassifierKind::AdaBoostNb: {
            std::vector<double> weights(docs.size(), 1.0 / static_cast<double>(docs.size()));
            for (int t = 0; t < params.rounds; ++t) {
                NbModel learner =
                    train_nb(docs, labels, weights, n_classes, n_features, params.alpha);
                std::vector<std::size_t> predictions(docs.size());
                double error = 0.0;
                for (std::size_t i = 0; i < docs.size(); ++i) {
                    predictions[i] = learner.predict(docs[i]);
                    if (predictions[i] != labels[i]) error += weights[i];
                }
                if (error >= 0.5) {
                    // Worse than chance: drop it and stop. The first round is
                    // kept with a vanishing vote so a 1-round ensemble always
                    // reproduces its base learner.
                    if (model.boost_.rounds.empty())
                        model.boost_.rounds.push_back({std::move(learner), kMinBoostError});
                    break;
                }
                double clamped = std::max(error, kMinBoostError);
                double alpha_t = std::log((1.0 - clamped) / clamped);
                model.boost_.rounds.push_back({std::move(learner), alpha_t});
                if (error == 0.0) break;
                double beta = clamped / (1.0 - clamped);
                double z = 0.0;
                for (std::size_t i = 0; i < docs.size(); ++i) {
                    if (predictions[i] == labels[i]) weights[i] *= beta;
                    z += weights[i];
                }
                for (auto& w : weights) w /= z;
            }
            break;
        }
        case ClassifierKind::GainRatioTree: {
            TreeBuilder builder{docs,   labels,           n_classes,
                                n_features, params.max_depth, params.min_leaf};
            std::vector<std::size_t> all(docs.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            model.tree_.root = builder.build(std::move(all), 0);
            break;
        }
    }
    return model;
}

// ---------------------------------------------------------------------------
// Classification

WeightedVector TrainedModel::weight_document(const HybridRepresentation& rep) const {
    if (!fingerprint_.empty() && !rep.fingerprint.empty() && rep.fingerprint != fingerprint_)
        throw ConfigError("configuration fingerprint mismatch: model built with '" + fingerprint_ +
                          "', representation produced with '" + rep.fingerprint + "'");
    WeightedVector v;
    for (const auto& [key, count] : representation_features(rep)) {
        auto ordinal = space_.find(key);
        if (!ordinal) continue;
        double w = count * idf_[*ordinal];
        if (w != 0.0) v[*ordinal] = w;
    }
    if (kind_ == ClassifierKind::Knn) {
        double norm = l2_norm(v);
        if (norm > 0.0)
            for (auto& [f, x] : v) x /= norm;
    }
    return v;
}

ClassifyResult TrainedModel::classify(const HybridRepresentation& rep) const {
    return classify_weighted(weight_document(rep));
}

ClassifyResult TrainedModel::classify_weighted(const WeightedVector& doc) const {
    ClassifyResult result;
    const std::size_t n_classes = categories_.size();

    if (doc.empty()) {
        result.fallback = true;
        if (kind_ == ClassifierKind::NaiveBayes) {
            // no evidence: posterior = prior
            std::vector<double> scores = nb_.log_scores(doc);
            double mx = *std::max_element(scores.begin(), scores.end());
            double z = 0.0;
            for (double s : scores) z += std::exp(s - mx);
            std::size_t best = static_cast<std::size_t>(
                std::max_element(scores.begin(), scores.end()) - scores.begin());
            result.category = categories_[best];
            for (std::size_t c = 0; c < n_classes; ++c)
                result.scores.emplace_back(categories_[c], std::exp(scores[c] - mx) / z);
        } else {
            result.category = majority_category_;
            for (std::size_t c = 0; c < n_classes; ++c)
                result.scores.emplace_back(categories_[c],
                                           categories_[c] == majority_category_ ? 1.0 : 0.0);
        }
        return result;
    }

    switch (kind_) {
        case ClassifierKind::Knn: {
            struct Neighbor {
                double similarity;
                std::size_t label;
                const WeightedVector* vec;
            };
            std::vector<Neighbor> neighbors;
            neighbors.reserve(knn_.vectors.size());
            for (std::size_t i = 0; i < knn_.vectors.size(); ++i)
                neighbors.push_back({dot(doc, knn_.vectors[i]), knn_.labels[i], &knn_.vectors[i]});
            // Deterministic and training-order independent: similarity desc,
            // then label, then the vector itself.
            std::sort(neighbors.begin(), neighbors.end(), [](const Neighbor& a, const Neighbor& b) {
                if (a.similarity != b.similarity) return a.similarity > b.similarity;
                if (a.label != b.label) return a.label < b.label;
                return *a.vec < *b.vec;
            });
            std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(params_.k),
                                                  neighbors.size());
            std::vector<double> votes(n_classes, 0.0);
            for (std::size_t i = 0; i < k; ++i) votes[neighbors[i].label] += 1.0;
            double top = *std::max_element(votes.begin(), votes.end());
            std::size_t winner = n_classes;
            std::size_t tied = 0;
            for (std::size_t c = 0; c < n_classes; ++c)
                if (votes[c] == top) {
                    ++tied;
                    if (winner == n_classes) winner = c;
                }
            if (tied > 1) {
                // vote tie: the nearest neighbor carrying a tied label decides
                for (std::size_t i = 0; i < k; ++i)
                    if (votes[neighbors[i].label] == top) {
                        winner = neighbors[i].label;
                        break;
                    }
            }
            result.category = categories_[winner];
            for (std::size_t c = 0; c < n_classes; ++c)
                result.scores.emplace_back(categories_[c],
                                           k ? votes[c] / static_cast<double>(k) : 0.0);
            break;
        }
        case ClassifierKind::NaiveBayes: {
            std::vector<double> scores = nb_.log_scores(doc);
            double mx = *std::max_element(scores.begin(), scores.end());
            double z = 0.0;
            for (double s : scores) z += std::exp(s - mx);
            std::size_t best = static_cast<std::size_t>(
                std::max_element(scores.begin(), scores.end()) - scores.begin());
            result.category = categories_[best];
            for (std::size_t c = 0; c < n_classes; ++c)
                result.scores.emplace_back(categories_[c], std::exp(scores[c] - mx) / z);
            break;
        }
        case ClassifierKind::AdaBoostNb: {
            std::vector<double> votes(n_classes, 0.0);
            for (const auto& round : boost_.rounds)
                votes[round.learner.predict(doc)] += round.vote_weight;
            std::size_t best = static_cast<std::size_t>(
                std::max_element(votes.begin(), votes.end()) - votes.begin());
            result.category = categories_[best];
            double total = 0.0;
            for (double v : votes) total += v;
            for (std::size_t c = 0; c < n_classes; ++c)
                result.scores.emplace_back(categories_[c], total > 0.0 ? votes[c] / total : 0.0);
            break;
        }
        case ClassifierKind::GainRatioTree: {
            const TreeNode* node = tree_.root.get();
            while (!node->leaf) {
                auto it = doc.find(node->feature);
                double v = it == doc.end() ? 0.0 : it->second;
                node = v <= node->threshold ? node->left.get() : node->right.get();
            }
            result.category = categories_[node->leaf_class];
            double total = 0.0;
            for (double c : node->class_counts) total += c;
            for (std::size_t c = 0; c < n_classes; ++c)
                result.scores.emplace_back(categories_[c],
                                           total > 0.0 ? node->class_counts[c] / total : 0.0);
            break;
        }
    }
    return result;
}

const TreeModel& TrainedModel::tree() const {
    if (kind_ != ClassifierKind::GainRatioTree) throw ConfigError("model is not a tree");
    return tree_;
}

const AdaBoostModel& TrainedModel::ensemble() const {
    if (kind_ != ClassifierKind::AdaBoostNb) throw ConfigError("model is not a boosted ensemble");
    return boost_;
}

const NbModel& TrainedModel::naive_bayes() const {
    if (kind_ != ClassifierKind::NaiveBayes) throw ConfigError("model is not naive bayes");
    return nb_;
}

}  // namespace ontoclass
