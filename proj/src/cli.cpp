#include "ontoclass/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ontoclass/errors.hpp"
#include "ontoclass/evaluate.hpp"
#include "ontoclass/pipeline.hpp"

namespace ontoclass {
namespace {

namespace fs = std::filesystem;

struct CliOptions {
    PipelineConfig config;
    std::string corpus_path;
    std::string labels_path;
    std::string model_path;
    std::string input_path;   // ingest-ontology
    std::string output_path;  // ingest-ontology
    std::string protocol = "split";
    double ratio = 0.8;
    int folds = 5;
    bool grid = false;
    std::string hyperonyms = "off";
    std::string filter_prefix;
    std::vector<std::string> inputs;
    std::string mapping = "replace";
    std::string disambiguation = "first";
    std::string hyperonym_mode = "propagate";
    std::string approach = "multi-onto";
    std::string classifier = "knn";
};

void add_resource_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--ontology", opt.config.ontology_path, "Ontology file (tabular or XML)");
    cmd->add_option("--ontology-format", opt.config.ontology_format,
                    "auto | xml | tabular (auto: .xml extension means XML)");
    cmd->add_option("--filter-prefix", opt.filter_prefix,
                    "Keep only descriptors with a tree number starting with this prefix");
    cmd->add_option("--stopwords-dir", opt.config.stopwords_dir,
                    "Directory of <lang>.txt stopword lists");
    cmd->add_option("--lexicon", opt.config.lexicon_path, "Bilingual lexicon TSV");
    cmd->add_option("--lexicon-lang", opt.config.lexicon_source_language,
                    "Lexicon source language code");
}

void add_semantic_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--mapping", opt.mapping, "add | replace | concept-only");
    cmd->add_option("--disambiguation", opt.disambiguation, "all | first");
    cmd->add_option("--hyperonyms", opt.hyperonyms, "on | off");
    cmd->add_option("--hyperonym-mode", opt.hyperonym_mode, "propagate | literal");
    cmd->add_option("--approach", opt.approach, "translate | multi-onto");
}

void add_classifier_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--classifier", opt.classifier, "knn | nb | adaboost-nb | tree");
    cmd->add_option("--k", opt.config.hyperparameters.k, "KNN neighbors");
    cmd->add_option("--rounds", opt.config.hyperparameters.rounds, "AdaBoostM1 rounds");
    cmd->add_option("--alpha", opt.config.hyperparameters.alpha, "Naive Bayes smoothing");
    cmd->add_option("--seed", opt.config.seed, "Random seed for splits and folds");
}

void finalize_config(CliOptions& opt) {
    opt.config.mapping = parse_mapping_strategy(opt.mapping);
    opt.config.disambiguation = parse_disambiguation_strategy(opt.disambiguation);
    if (opt.hyperonyms != "on" && opt.hyperonyms != "off")
        throw ConfigError("--hyperonyms takes on | off");
    opt.config.hyperonyms = opt.hyperonyms == "on";
    opt.config.hyperonym_mode = parse_hyperonym_mode(opt.hyperonym_mode);
    opt.config.approach = parse_pivot_approach(opt.approach);
    opt.config.classifier = parse_classifier_kind(opt.classifier);
    if (!opt.filter_prefix.empty()) opt.config.filter_prefix = opt.filter_prefix;
}

// Flat key=value config file mirroring the long flags; '#' starts a comment.
// Values appear on the effective command line only for flags not already
// given, so explicit flags override the file.
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file: " + config_path);
    std::vector<std::string> expanded = args;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("config file line " + std::to_string(line_number) +
                              " is not key=value: " + line);
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        std::string flag = "--" + key;
        bool given = false;
        for (const auto& arg : expanded)
            given = given || arg == flag || arg.rfind(flag + "=", 0) == 0;
        if (!given) expanded.push_back(flag + "=" + value);
    }
    return expanded;
}

Corpus load_corpus(const CliOptions& opt) {
    if (opt.corpus_path.empty()) throw ConfigError("--corpus is required");
    if (fs::is_directory(opt.corpus_path)) return load_directory_corpus(opt.corpus_path);
    std::ifstream records(opt.corpus_path, std::ios::binary);
    if (!records) throw DataError("cannot read corpus file: " + opt.corpus_path);
    if (opt.labels_path.empty())
        throw ConfigError("a record-format corpus needs --labels <sidecar.tsv>");
    std::ifstream labels(opt.labels_path, std::ios::binary);
    if (!labels) throw DataError("cannot read label sidecar: " + opt.labels_path);
    return load_ohsumed(records, labels);
}

// Gathers (id, text) documents from files and directories, sorted by id.
std::vector<std::pair<std::string, std::string>> gather_inputs(
    const std::vector<std::string>& inputs) {
    std::vector<std::pair<std::string, std::string>> docs;
    auto add_file = [&](const fs::path& path, const std::string& id) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw DataError("cannot read input: " + path.string());
        std::ostringstream content;
        content << in.rdbuf();
        docs.emplace_back(id, content.str());
    };
    for (const auto& input : inputs) {
        fs::path path(input);
        if (fs::is_directory(path)) {
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(path))
                if (entry.is_regular_file()) files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            for (const auto& file : files) add_file(file, file.filename().string());
        } else {
            add_file(path, path.filename().string());
        }
    }
    std::sort(docs.begin(), docs.end());
    return docs;
}

int cmd_train(CliOptions& opt, std::ostream& out) {
    finalize_config(opt);
    if (opt.model_path.empty()) throw ConfigError("--model output path is required");
    Pipeline pipeline = Pipeline::open(opt.config);
    Corpus corpus = load_corpus(opt);
    TrainedModel model = pipeline.train_on(corpus);

    for (const auto& [category, count] : corpus.category_counts())
        out << category << '\t' << count << '\n';
    out << "vocabulary\t" << model.feature_space().size() << '\n';

    std::ofstream model_out(opt.model_path, std::ios::binary);
    if (!model_out) throw DataError("cannot write model file: " + opt.model_path);
    model.save(model_out);
    return 0;
}

int cmd_classify(CLI::App* cmd, CliOptions& opt, std::ostream& out, std::ostream& err) {
    if (opt.model_path.empty()) throw ConfigError("--model is required");
    std::ifstream model_in(opt.model_path, std::ios::binary);
    if (!model_in) throw DataError("cannot read model file: " + opt.model_path);
    TrainedModel model = TrainedModel::load(model_in);

    // The semantic configuration comes from the model; explicit flags must
    // agree with it.
    finalize_config(opt);
    PipelineConfig stored = opt.config;
    apply_fingerprint(model.fingerprint(), stored);
    auto check = [&](const char* flag, const std::string& from_flags,
                     const std::string& from_model) {
        if (cmd->count(flag) && from_flags != from_model)
            throw ConfigError(std::string(flag) + "=" + from_flags +
                              " conflicts with the model fingerprint (" + from_model + ")");
    };
    check("--mapping", to_string(opt.config.mapping), to_string(stored.mapping));
    check("--disambiguation", to_string(opt.config.disambiguation),
          to_string(stored.disambiguation));
    check("--hyperonyms", opt.config.hyperonyms ? "on" : "off", stored.hyperonyms ? "on" : "off");
    check("--hyperonym-mode", to_string(opt.config.hyperonym_mode),
          to_string(stored.hyperonym_mode));
    check("--approach", to_string(opt.config.approach), to_string(stored.approach));
    stored.classifier = model.kind();
    stored.hyperparameters = model.hyperparameters();

    Pipeline pipeline = Pipeline::open(stored);
    if (opt.inputs.empty()) throw ConfigError("no input documents given");
    for (const auto& [id, text] : gather_inputs(opt.inputs)) {
        HybridRepresentation rep = pipeline.represent(text);
        ClassifyResult result = model.classify(rep);
        double best = 0.0;
        for (const auto& [category, score] : result.scores)
            if (category == result.category) best = score;
        out << id << '\t' << result.category << '\t' << best << '\n';
        if (result.fallback)
            err << "warning: '" << id << "' has an empty representation; fell back to "
                << result.category << '\n';
    }
    return 0;
}

void print_report(const EvaluationReport& report, const std::string& format, std::ostream& out) {
    out << (format == "json" ? render_report_json(report) : render_report_table(report));
}

EvaluationReport evaluate_once(const Pipeline& pipeline, const Corpus& corpus,
                               const CliOptions& opt) {
    std::vector<std::string> labels = corpus.labels();
    if (opt.protocol == "split") {
        SplitResult split = stratified_split(labels, opt.ratio, opt.config.seed);
        std::vector<std::string> predictions =
            pipeline.fit_predict(corpus, split.train_indices, split.test_indices);
        std::vector<std::string> gold;
        for (std::size_t i : split.test_indices) gold.push_back(labels[i]);
        EvaluationReport report = score(gold, predictions, corpus.categories());
        report.fingerprint = pipeline.config().fingerprint();
        return report;
    }
    if (opt.protocol != "kfold") throw ConfigError("--protocol takes split | kfold");
    auto reports = cross_validate(labels, opt.folds, opt.config.seed,
                                  [&](const std::vector<std::size_t>& train,
                                      const std::vector<std::size_t>& test) {
                                      return pipeline.fit_predict(corpus, train, test);
                                  });
    // one merged report: unweighted fold means per metric, counts summed
    EvaluationReport merged;
    merged.categories = corpus.categories();
    merged.fingerprint = pipeline.config().fingerprint();
    const double k = static_cast<double>(reports.size());
    for (const auto& r : reports) {
        merged.macro_precision += r.macro_precision / k;
        merged.macro_recall += r.macro_recall / k;
        merged.macro_f1 += r.macro_f1 / k;
        merged.document_count += r.document_count;
        for (const auto& category : merged.categories) {
            const auto& fold_metrics = r.per_category.at(category);
            auto& m = merged.per_category[category];
            m.precision += fold_metrics.precision / k;
            m.recall += fold_metrics.recall / k;
            m.f1 += fold_metrics.f1 / k;
            m.counts.tp += fold_metrics.counts.tp;
            m.counts.fp += fold_metrics.counts.fp;
            m.counts.fn += fold_metrics.counts.fn;
            m.counts.tn += fold_metrics.counts.tn;
        }
    }
    return merged;
}

int cmd_evaluate(CliOptions& opt, std::ostream& out) {
    finalize_config(opt);
    Corpus corpus = load_corpus(opt);

    if (!opt.grid) {
        Pipeline pipeline = Pipeline::open(opt.config);
        EvaluationReport report = evaluate_once(pipeline, corpus, opt);
        if (opt.protocol == "kfold" && opt.config.report_format == "table")
            out << "fold means over " << opt.folds << " folds\n";
        print_report(report, opt.config.report_format, out);
        return 0;
    }

    // Grid: approach x representation x classifier, macro-F per cell.
    const std::vector<PivotApproach> approaches{PivotApproach::MultilingualOntology,
                                                PivotApproach::Translation};
    const std::vector<bool> hyper{false, true};
    const std::vector<ClassifierKind> classifiers{
        ClassifierKind::Knn, ClassifierKind::GainRatioTree, ClassifierKind::AdaBoostNb};

    out << "approach     repr                 classifier    macro-F\n";
    for (PivotApproach approach : approaches) {
        for (bool h : hyper) {
            for (ClassifierKind kind : classifiers) {
                CliOptions cell = opt;
                cell.config.approach = approach;
                cell.config.hyperonyms = h;
                cell.config.classifier = kind;
                Pipeline pipeline = Pipeline::open(cell.config);
                EvaluationReport report = evaluate_once(pipeline, corpus, cell);
                char line[160];
                std::snprintf(line, sizeof line, "%-12s %-20s %-12s %8.4f\n",
                              to_string(approach).c_str(),
                              h ? "concepts+hyperonyms" : "concepts",
                              to_string(kind).c_str(), report.macro_f1);
                out << line;
            }
        }
    }
    return 0;
}

int cmd_detect_lang(CliOptions& opt, std::ostream& out) {
    if (opt.config.stopwords_dir.empty()) throw ConfigError("--stopwords-dir is required");
    StopwordTable table = StopwordTable::load_directory(opt.config.stopwords_dir);
    if (opt.inputs.empty()) throw ConfigError("no input documents given");
    for (const auto& [id, text] : gather_inputs(opt.inputs)) {
        LanguageDetection detection =
            detect_language(tokenize(text), table, opt.config.default_language);
        out << id << '\t' << detection.language << '\t';
        bool first = true;
        for (const auto& [lang, score] : detection.scores) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%s=%.4f", lang.c_str(), score);
            out << (first ? "" : ",") << buf;
            first = false;
        }
        out << '\n';
    }
    return 0;
}

int cmd_ingest_ontology(CliOptions& opt, std::ostream& out) {
    if (opt.input_path.empty()) throw ConfigError("--input is required");
    if (opt.output_path.empty()) throw ConfigError("--output is required");
    std::ifstream in(opt.input_path, std::ios::binary);
    if (!in) throw DataError("cannot read ontology file: " + opt.input_path);

    LoadStats stats;
    LoadOptions options;
    options.stats = &stats;
    if (!opt.filter_prefix.empty()) options.filter_prefix = opt.filter_prefix;
    bool xml = opt.config.ontology_format == "xml" ||
               (opt.config.ontology_format == "auto" &&
                opt.input_path.size() >= 4 &&
                opt.input_path.substr(opt.input_path.size() - 4) == ".xml");
    Ontology ontology =
        xml ? load_ontology_xml(in, options) : load_ontology_tabular(in, options);

    std::ofstream file_out(opt.output_path, std::ios::binary);
    if (!file_out) throw DataError("cannot write ontology file: " + opt.output_path);
    save_ontology_tabular(ontology, file_out);
    out << "parsed\t" << stats.records_parsed << "\nretained\t" << stats.records_retained
        << '\n';
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multilingual concept-based document classifier", "ontoclass"};
    app.require_subcommand(1);

    CliOptions opt;

    std::string config_file;  // consumed by the pre-pass; registered so parses accept it

    CLI::App* train_cmd = app.add_subcommand("train", "Build category profiles and a classifier");
    train_cmd->add_option("--config", config_file, "Flat key=value config file");
    add_resource_flags(train_cmd, opt);
    add_semantic_flags(train_cmd, opt);
    add_classifier_flags(train_cmd, opt);
    train_cmd->add_option("--corpus", opt.corpus_path, "Corpus directory or record file");
    train_cmd->add_option("--labels", opt.labels_path, "Label sidecar TSV for record corpora");
    train_cmd->add_option("--model", opt.model_path, "Output model file");

    CLI::App* classify_cmd = app.add_subcommand("classify", "Classify documents with a model");
    classify_cmd->add_option("--config", config_file, "Flat key=value config file");
    add_resource_flags(classify_cmd, opt);
    add_semantic_flags(classify_cmd, opt);
    classify_cmd->add_option("--model", opt.model_path, "Trained model file");
    classify_cmd->add_option("inputs", opt.inputs, "Document files or directories");

    CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "Train/test evaluation");
    evaluate_cmd->add_option("--config", config_file, "Flat key=value config file");
    add_resource_flags(evaluate_cmd, opt);
    add_semantic_flags(evaluate_cmd, opt);
    add_classifier_flags(evaluate_cmd, opt);
    evaluate_cmd->add_option("--corpus", opt.corpus_path, "Corpus directory or record file");
    evaluate_cmd->add_option("--labels", opt.labels_path, "Label sidecar TSV");
    evaluate_cmd->add_option("--protocol", opt.protocol, "split | kfold");
    evaluate_cmd->add_option("--ratio", opt.ratio, "Train fraction for split");
    evaluate_cmd->add_option("--folds", opt.folds, "k for kfold");
    evaluate_cmd->add_flag("--grid", opt.grid,
                           "Run approach x representation x classifier cross-product");
    evaluate_cmd->add_option("--report-format", opt.config.report_format, "table | json");

    CLI::App* detect_cmd = app.add_subcommand("detect-lang", "Detect document languages");
    detect_cmd->add_option("--stopwords-dir", opt.config.stopwords_dir,
                           "Directory of <lang>.txt stopword lists");
    detect_cmd->add_option("--default-lang", opt.config.default_language,
                           "Fallback language for ties");
    detect_cmd->add_option("inputs", opt.inputs, "Document files or directories");

    CLI::App* ingest_cmd =
        app.add_subcommand("ingest-ontology", "Convert descriptor XML to the tabular format");
    ingest_cmd->add_option("--input", opt.input_path, "Source ontology (XML or tabular)");
    ingest_cmd->add_option("--output", opt.output_path, "Output tabular file");
    ingest_cmd->add_option("--filter-prefix", opt.filter_prefix, "Tree-number prefix filter");
    ingest_cmd->add_option("--ontology-format", opt.config.ontology_format,
                           "auto | xml | tabular");

    std::vector<std::string> effective;
    try {
        effective = apply_config_file(args);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    }
    std::vector<std::string> reversed(effective.rbegin(), effective.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream message;
        int code = app.exit(e, out, message);
        err << message.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (train_cmd->parsed()) return cmd_train(opt, out);
        if (classify_cmd->parsed()) return cmd_classify(classify_cmd, opt, out, err);
        if (evaluate_cmd->parsed()) return cmd_evaluate(opt, out);
        if (detect_cmd->parsed()) return cmd_detect_lang(opt, out);
        if (ingest_cmd->parsed()) return cmd_ingest_ontology(opt, out);
        throw ConfigError("no command given");
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ontoclass
