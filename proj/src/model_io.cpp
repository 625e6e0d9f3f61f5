// Model file format: the 8-byte magic "OCMODEL\n" followed by one JSON
// document (sorted keys, shortest round-trip numbers), so repeated saves of
// the same model are byte-identical and the file is byte-order independent.

#include <istream>
#include <ostream>

#include <json.hpp>

#include "ontoclass/errors.hpp"
#include "ontoclass/model.hpp"

namespace ontoclass {
namespace {

using nlohmann::json;

json sparse_to_json(const SparseVector& v) {
    json out = json::object();
    for (const auto& [k, x] : v) out[k] = x;
    return out;
}

SparseVector sparse_from_json(const json& j) {
    SparseVector v;
    for (auto it = j.begin(); it != j.end(); ++it) v[it.key()] = it.value().get<double>();
    return v;
}

json weighted_to_json(const WeightedVector& v) {
    json out = json::array();
    for (const auto& [f, x] : v) out.push_back(json::array({f, x}));
    return out;
}

WeightedVector weighted_from_json(const json& j) {
    WeightedVector v;
    for (const auto& pair : j) v[pair.at(0).get<std::size_t>()] = pair.at(1).get<double>();
    return v;
}

json nb_to_json(const NbModel& nb) {
    return json{{"log_priors", nb.log_priors}, {"log_likelihood", nb.log_likelihood}};
}

NbModel nb_from_json(const json& j) {
    NbModel nb;
    nb.log_priors = j.at("log_priors").get<std::vector<double>>();
    nb.log_likelihood = j.at("log_likelihood").get<std::vector<std::vector<double>>>();
    return nb;
}

json tree_to_json(const TreeNode* node) {
    if (!node) return nullptr;
    json out{{"leaf", node->leaf},
             {"leaf_class", node->leaf_class},
             {"class_counts", node->class_counts}};
    if (!node->leaf) {
        out["feature"] = node->feature;
        out["threshold"] = node->threshold;
        out["left"] = tree_to_json(node->left.get());
        out["right"] = tree_to_json(node->right.get());
    }
    return out;
}

std::unique_ptr<TreeNode> tree_from_json(const json& j) {
    if (j.is_null()) return nullptr;
    auto node = std::make_unique<TreeNode>();
    node->leaf = j.at("leaf").get<bool>();
    node->leaf_class = j.at("leaf_class").get<std::size_t>();
    node->class_counts = j.at("class_counts").get<std::vector<double>>();
    if (!node->leaf) {
        node->feature = j.at("feature").get<std::size_t>();
        node->threshold = j.at("threshold").get<double>();
        node->left = tree_from_json(j.at("left"));
        node->right = tree_from_json(j.at("right"));
    }
    return node;
}

}  // namespace

void TrainedModel::save(std::ostream& out) const {
    json j;
    j["format_version"] = kModelFormatVersion;
    j["fingerprint"] = fingerprint_;
    j["classifier"] = to_string(kind_);
    j["hyperparameters"] = {{"k", params_.k},
                            {"rounds", params_.rounds},
                            {"alpha", params_.alpha},
                            {"max_depth", params_.max_depth},
                            {"min_leaf", params_.min_leaf}};
    j["categories"] = categories_;
    j["majority_category"] = majority_category_;
    j["n_categories"] = n_categories_;
    j["feature_space"] = space_.vocabulary();
    j["idf"] = idf_;
    json profiles = json::array();
    for (const auto& p : profiles_)
        profiles.push_back(json{{"category", p.category},
                                {"raw_counts", sparse_to_json(p.raw_counts)},
                                {"tfidf", sparse_to_json(p.tfidf)}});
    j["profiles"] = profiles;

    switch (kind_) {
        case ClassifierKind::Knn: {
            json vectors = json::array();
            for (const auto& v : knn_.vectors) vectors.push_back(weighted_to_json(v));
            j["model"] = {{"vectors", vectors}, {"labels", knn_.labels}};
            break;
        }
        case ClassifierKind::NaiveBayes:
            j["model"] = nb_to_json(nb_);
            break;
        case ClassifierKind::AdaBoostNb: {
            json rounds = json::array();
            for (const auto& r : boost_.rounds)
                rounds.push_back(
                    json{{"learner", nb_to_json(r.learner)}, {"vote_weight", r.vote_weight}});
            j["model"] = {{"rounds", rounds}};
            break;
        }
        case ClassifierKind::GainRatioTree:
            j["model"] = {{"root", tree_to_json(tree_.root.get())}};
            break;
    }

    out << kModelMagic << j.dump(1, '\t') << '\n';
    if (!out) throw DataError("failed writing model file");
}

TrainedModel TrainedModel::load(std::istream& in) {
    std::string magic(std::string(kModelMagic).size(), '\0');
    in.read(magic.data(), static_cast<std::streamsize>(magic.size()));
    if (!in || magic != kModelMagic)
        throw DataError("not a model file: bad magic header");

    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(std::string("model file is corrupt or truncated: ") + e.what());
    }

    try {
        int version = j.at("format_version").get<int>();
        if (version != kModelFormatVersion)
            throw DataError("unsupported model format version " + std::to_string(version) +
                            " (expected " + std::to_string(kModelFormatVersion) + ")");

        TrainedModel model;
        model.fingerprint_ = j.at("fingerprint").get<std::string>();
        model.kind_ = parse_classifier_kind(j.at("classifier").get<std::string>());
        const json& hp = j.at("hyperparameters");
        model.params_.k = hp.at("k").get<int>();
        model.params_.rounds = hp.at("rounds").get<int>();
        model.params_.alpha = hp.at("alpha").get<double>();
        model.params_.max_depth = hp.at("max_depth").get<int>();
        model.params_.min_leaf = hp.at("min_leaf").get<int>();
        model.categories_ = j.at("categories").get<std::vector<std::string>>();
        model.majority_category_ = j.at("majority_category").get<std::string>();
        model.n_categories_ = j.at("n_categories").get<std::size_t>();
        model.space_ = FeatureSpace(j.at("feature_space").get<std::vector<std::string>>());
        model.idf_ = j.at("idf").get<std::vector<double>>();
        for (const auto& p : j.at("profiles")) {
            CategoryProfile profile;
            profile.category = p.at("category").get<std::string>();
            profile.raw_counts = sparse_from_json(p.at("raw_counts"));
            profile.tfidf = sparse_from_json(p.at("tfidf"));
            model.profiles_.push_back(std::move(profile));
        }

        const json& m = j.at("model");
        switch (model.kind_) {
            case ClassifierKind::Knn:
                for (const auto& v : m.at("vectors"))
                    model.knn_.vectors.push_back(weighted_from_json(v));
                model.knn_.labels = m.at("labels").get<std::vector<std::size_t>>();
                break;
            case ClassifierKind::NaiveBayes:
                model.nb_ = nb_from_json(m);
                break;
            case ClassifierKind::AdaBoostNb:
                for (const auto& r : m.at("rounds"))
                    model.boost_.rounds.push_back(
                        {nb_from_json(r.at("learner")), r.at("vote_weight").get<double>()});
                break;
            case ClassifierKind::GainRatioTree:
                model.tree_.root = tree_from_json(m.at("root"));
                break;
        }
        return model;
    } catch (const json::exception& e) {
        throw DataError(std::string("model file is missing fields: ") + e.what());
    }
}

}  // namespace ontoclass
