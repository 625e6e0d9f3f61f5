#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "ontoclass/conceptmap.hpp"
#include "ontoclass/corpus.hpp"
#include "ontoclass/evaluate.hpp"
#include "ontoclass/model.hpp"
#include "ontoclass/multilingual.hpp"
#include "ontoclass/ontology.hpp"
#include "ontoclass/preprocess.hpp"

namespace ontoclass {

// Everything a run needs. The semantic knobs (mapping, disambiguation,
// hyperonyms, approach) participate in the model fingerprint; paths and
// hyperparameters do not.
struct PipelineConfig {
    std::string ontology_path;
    std::string ontology_format = "auto";  // auto | xml | tabular
    std::optional<std::string> filter_prefix;
    std::string stopwords_dir;
    std::string lexicon_path;                  // required for the translation approach
    std::string lexicon_source_language = "fr";
    MappingStrategy mapping = MappingStrategy::ReplaceTermsByConcepts;
    DisambiguationStrategy disambiguation = DisambiguationStrategy::FirstConcept;
    bool hyperonyms = false;
    HyperonymMode hyperonym_mode = HyperonymMode::Propagate;
    PivotApproach approach = PivotApproach::MultilingualOntology;
    ClassifierKind classifier = ClassifierKind::Knn;
    Hyperparameters hyperparameters;
    uint64_t seed = 1;
    std::string report_format = "table";  // table | json
    std::string default_language = "en";

    // Canonical fingerprint of the semantic knobs, e.g.
    // "v1|map=replace|disamb=first|hyper=off|hmode=propagate|approach=multi-onto".
    std::string fingerprint() const;
    void validate() const;  // ConfigError on inconsistent combinations
};

// Fills the semantic knobs of a config from a fingerprint string.
void apply_fingerprint(const std::string& fingerprint, PipelineConfig& config);

// A loaded, ready-to-run pipeline: ontology + stopwords + optional lexicon.
class Pipeline {
public:
    // Loads resources from the paths in `config`. For in-memory use
    // (tests, the synthetic generator) use the second form.
    static Pipeline open(const PipelineConfig& config);
    static Pipeline from_parts(PipelineConfig config, Ontology ontology, StopwordTable stopwords,
                               std::optional<BilingualLexicon> lexicon);

    // tokenize -> detect language -> term vector -> pivot -> optional
    // hyperonym enrichment. The result carries the config fingerprint.
    HybridRepresentation represent(const std::string& text) const;
    LanguageDetection detect(const std::string& text) const;

    TrainedModel train_on(const Corpus& corpus) const;
    // Trains on train_indices and predicts test_indices (evaluation driver).
    std::vector<std::string> fit_predict(const Corpus& corpus,
                                         const std::vector<std::size_t>& train,
                                         const std::vector<std::size_t>& test) const;

    const PipelineConfig& config() const { return config_; }
    const Ontology& ontology() const { return *ontology_; }
    const StopwordTable& stopwords() const { return stopwords_; }
    const BilingualLexicon* lexicon() const { return lexicon_ ? &*lexicon_ : nullptr; }

private:
    Pipeline() = default;
    PipelineConfig config_;
    std::shared_ptr<const Ontology> ontology_;
    StopwordTable stopwords_;
    std::optional<BilingualLexicon> lexicon_;
};

}  // namespace ontoclass
