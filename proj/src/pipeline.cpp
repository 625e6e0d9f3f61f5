#include "ontoclass/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "ontoclass/errors.hpp"

namespace ontoclass {

std::string PipelineConfig::fingerprint() const {
    std::string fp = "v1";
    fp += "|map=" + to_string(mapping);
    fp += "|disamb=" + to_string(disambiguation);
    fp += std::string("|hyper=") + (hyperonyms ? "on" : "off");
    fp += "|hmode=" + to_string(hyperonym_mode);
    fp += "|approach=" + to_string(approach);
    return fp;
}

void PipelineConfig::validate() const {
    if (ontology_format != "auto" && ontology_format != "xml" && ontology_format != "tabular")
        throw ConfigError("unknown ontology format '" + ontology_format +
                          "' (auto | xml | tabular)");
    if (report_format != "table" && report_format != "json")
        throw ConfigError("unknown report format '" + report_format + "' (table | json)");
}

void apply_fingerprint(const std::string& fingerprint, PipelineConfig& config) {
    std::istringstream in(fingerprint);
    std::string part;
    bool version_seen = false;
    while (std::getline(in, part, '|')) {
        if (part == "v1") {
            version_seen = true;
            continue;
        }
        auto eq = part.find('=');
        if (eq == std::string::npos)
            throw ConfigError("malformed fingerprint component '" + part + "'");
        std::string key = part.substr(0, eq), value = part.substr(eq + 1);
        if (key == "map") config.mapping = parse_mapping_strategy(value);
        else if (key == "disamb") config.disambiguation = parse_disambiguation_strategy(value);
        else if (key == "hyper") config.hyperonyms = value == "on";
        else if (key == "hmode") config.hyperonym_mode = parse_hyperonym_mode(value);
        else if (key == "approach") config.approach = parse_pivot_approach(value);
        else throw ConfigError("unknown fingerprint component '" + key + "'");
    }
    if (!version_seen) throw ConfigError("fingerprint lacks a version marker: " + fingerprint);
}

Pipeline Pipeline::open(const PipelineConfig& config) {
    config.validate();
    if (config.ontology_path.empty()) throw ConfigError("no ontology path configured");
    if (config.stopwords_dir.empty()) throw ConfigError("no stopwords directory configured");
    if (config.approach == PivotApproach::Translation && config.lexicon_path.empty())
        throw ConfigError("the translation approach requires --lexicon");

    std::ifstream onto_in(config.ontology_path, std::ios::binary);
    if (!onto_in) throw DataError("cannot read ontology file: " + config.ontology_path);
    LoadOptions load_options;
    load_options.filter_prefix = config.filter_prefix;
    bool xml = config.ontology_format == "xml" ||
               (config.ontology_format == "auto" &&
                config.ontology_path.size() >= 4 &&
                config.ontology_path.substr(config.ontology_path.size() - 4) == ".xml");
    Ontology ontology = xml ? load_ontology_xml(onto_in, load_options)
                            : load_ontology_tabular(onto_in, load_options);

    StopwordTable stopwords = StopwordTable::load_directory(config.stopwords_dir);

    std::optional<BilingualLexicon> lexicon;
    if (!config.lexicon_path.empty()) {
        std::ifstream lex_in(config.lexicon_path, std::ios::binary);
        if (!lex_in) throw DataError("cannot read lexicon file: " + config.lexicon_path);
        lexicon = BilingualLexicon::load_tsv(lex_in, config.lexicon_source_language);
    }
    return from_parts(config, std::move(ontology), std::move(stopwords), std::move(lexicon));
}

Pipeline Pipeline::from_parts(PipelineConfig config, Ontology ontology, StopwordTable stopwords,
                              std::optional<BilingualLexicon> lexicon) {
    config.validate();
    if (config.approach == PivotApproach::Translation && !lexicon)
        throw ConfigError("the translation approach requires a lexicon");
    Pipeline p;
    p.config_ = std::move(config);
    p.ontology_ = std::make_shared<const Ontology>(std::move(ontology));
    p.stopwords_ = std::move(stopwords);
    p.lexicon_ = std::move(lexicon);
    return p;
}

LanguageDetection Pipeline::detect(const std::string& text) const {
    return detect_language(tokenize(text), stopwords_, config_.default_language);
}

HybridRepresentation Pipeline::represent(const std::string& text) const {
    TokenStream tokens = tokenize(text);
    LanguageDetection detection = detect_language(tokens, stopwords_, config_.default_language);
    TermVector tv = to_term_vector(tokens, detection.language, stopwords_);
    HybridRepresentation rep = pivot_to_english_concepts(
        tokens, tv, *ontology_, lexicon_ ? &*lexicon_ : nullptr, stopwords_, config_.approach,
        config_.mapping, config_.disambiguation);
    if (config_.hyperonyms) rep = enrich_with_hyperonyms(rep, *ontology_, config_.hyperonym_mode);
    rep.fingerprint = config_.fingerprint();
    return rep;
}

TrainedModel Pipeline::train_on(const Corpus& corpus) const {
    if (corpus.documents.empty()) throw DataError("training corpus is empty");
    LabeledRepresentations labeled;
    labeled.reserve(corpus.documents.size());
    for (const auto& doc : corpus.documents) {
        HybridRepresentation rep = represent(doc.text());
        if (rep.term_part.empty() && rep.concept_part.empty())
            throw DataError("document '" + doc.id + "' is empty after representation");
        labeled.emplace_back(std::move(rep), doc.category);
    }
    return train(labeled, config_.classifier, config_.hyperparameters, config_.fingerprint());
}

std::vector<std::string> Pipeline::fit_predict(const Corpus& corpus,
                                               const std::vector<std::size_t>& train_indices,
                                               const std::vector<std::size_t>& test_indices) const {
    Corpus training;
    for (std::size_t i : train_indices) training.documents.push_back(corpus.documents.at(i));
    TrainedModel model = train_on(training);
    std::vector<std::string> predictions;
    predictions.reserve(test_indices.size());
    for (std::size_t i : test_indices)
        predictions.push_back(model.classify(represent(corpus.documents.at(i).text())).category);
    return predictions;
}

}  // namespace ontoclass
