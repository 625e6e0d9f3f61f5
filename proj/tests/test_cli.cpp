#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ontoclass/cli.hpp"
#include "ontoclass/corpus.hpp"
#include "ontoclass/ontology.hpp"
#include "ontoclass/pipeline.hpp"
#include "testutil.hpp"

using namespace ontoclass;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// Writes a full synthetic experiment to disk: corpus dir, tabular ontology,
// lexicon, stopwords. Returns the base directory paths via the struct.
struct Workspace {
    explicit Workspace(const SyntheticSpec& spec, const std::string& tag)
        : dir(tag), bundle(generate_synthetic_bilingual(spec)) {
        write_directory_corpus(bundle.corpus, dir.file("corpus"));
        std::ofstream onto(dir.file("ontology.tsv"));
        save_ontology_tabular(bundle.ontology, onto);
        std::ofstream lex(dir.file("lexicon.tsv"));
        write_lexicon_tsv(bundle.lexicon, lex);
        write_stopword_files(bundle.stopwords, dir.file("stopwords"));
    }
    std::string path(const std::string& name) const { return dir.file(name).string(); }
    testutil::TempDir dir;
    SyntheticBundle bundle;
};

SyntheticSpec small_spec() {
    SyntheticSpec spec;
    spec.categories = 3;
    spec.docs_per_language = 6;
    spec.seed = 5;
    return spec;
}

std::vector<std::string> base_args(const Workspace& ws) {
    return {"--ontology", ws.path("ontology.tsv"), "--stopwords-dir", ws.path("stopwords"),
            "--lexicon",  ws.path("lexicon.tsv")};
}

}  // namespace

TEST_CASE("cli: train writes a model and reports counts") {
    Workspace ws(small_spec(), "cli-train");
    auto args = base_args(ws);
    std::vector<std::string> cmd{"train", "--corpus", ws.path("corpus"), "--model",
                                 ws.path("model.ocm")};
    cmd.insert(cmd.end(), args.begin(), args.end());
    CliRun run = cli(cmd);
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("cat00\t12") != std::string::npos);
    CHECK(run.out.find("vocabulary\t") != std::string::npos);
    CHECK(std::filesystem::exists(ws.path("model.ocm")));
}

TEST_CASE("cli: translation approach without a lexicon is a config error") {
    Workspace ws(small_spec(), "cli-nolex");
    CliRun run = cli({"train", "--corpus", ws.path("corpus"), "--model", ws.path("m.ocm"),
                      "--ontology", ws.path("ontology.tsv"), "--stopwords-dir",
                      ws.path("stopwords"), "--approach", "translate"});
    CHECK(run.exit_code == 2);
    CHECK(run.err.find("lexicon") != std::string::npos);
}

TEST_CASE("cli: training twice gives byte-identical model files") {
    Workspace ws(small_spec(), "cli-determinism");
    auto args = base_args(ws);
    for (const char* name : {"m1.ocm", "m2.ocm"}) {
        std::vector<std::string> cmd{"train", "--corpus", ws.path("corpus"), "--model",
                                     ws.path(name), "--classifier", "adaboost-nb"};
        cmd.insert(cmd.end(), args.begin(), args.end());
        REQUIRE(cli(cmd).exit_code == 0);
    }
    CHECK(testutil::read_file(ws.path("m1.ocm")) == testutil::read_file(ws.path("m2.ocm")));
}

TEST_CASE("cli: classify a training document under knn k=1 returns its own label") {
    Workspace ws(small_spec(), "cli-classify");
    auto args = base_args(ws);
    std::vector<std::string> cmd{"train",        "--corpus", ws.path("corpus"), "--model",
                                 ws.path("m.ocm"), "--classifier", "knn",       "--k", "1"};
    cmd.insert(cmd.end(), args.begin(), args.end());
    REQUIRE(cli(cmd).exit_code == 0);

    // pick one known training file
    std::string doc = ws.path("corpus") + "/cat01/c01-en-000.txt";
    REQUIRE(std::filesystem::exists(doc));
    std::vector<std::string> ccmd{"classify", "--model", ws.path("m.ocm"), doc};
    ccmd.insert(ccmd.end(), args.begin(), args.end());
    CliRun run = cli(ccmd);
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("c01-en-000.txt\tcat01\t") != std::string::npos);
}

TEST_CASE("cli: empty document falls back with a warning") {
    Workspace ws(small_spec(), "cli-empty");
    auto args = base_args(ws);
    std::vector<std::string> cmd{"train", "--corpus", ws.path("corpus"), "--model",
                                 ws.path("m.ocm")};
    cmd.insert(cmd.end(), args.begin(), args.end());
    REQUIRE(cli(cmd).exit_code == 0);

    testutil::write_file(ws.dir.file("blank.txt"), "the of and");
    std::vector<std::string> ccmd{"classify", "--model", ws.path("m.ocm"),
                                  ws.path("blank.txt")};
    ccmd.insert(ccmd.end(), args.begin(), args.end());
    CliRun run = cli(ccmd);
    CHECK(run.exit_code == 0);
    CHECK(run.err.find("empty representation") != std::string::npos);
}

TEST_CASE("cli: classify flags conflicting with the model fingerprint are refused") {
    Workspace ws(small_spec(), "cli-fp");
    auto args = base_args(ws);
    std::vector<std::string> cmd{"train",          "--corpus",     ws.path("corpus"),
                                 "--model",        ws.path("m.ocm"), "--hyperonyms", "on"};
    cmd.insert(cmd.end(), args.begin(), args.end());
    REQUIRE(cli(cmd).exit_code == 0);

    std::string doc = ws.path("corpus") + "/cat00/c00-en-000.txt";
    std::vector<std::string> ccmd{"classify", "--model", ws.path("m.ocm"), "--hyperonyms",
                                  "off", doc};
    ccmd.insert(ccmd.end(), args.begin(), args.end());
    CliRun run = cli(ccmd);
    CHECK(run.exit_code == 2);
    CHECK(run.err.find("fingerprint") != std::string::npos);

    // agreeing flags pass
    std::vector<std::string> okcmd{"classify", "--model", ws.path("m.ocm"), "--hyperonyms",
                                   "on", doc};
    okcmd.insert(okcmd.end(), args.begin(), args.end());
    CHECK(cli(okcmd).exit_code == 0);
}

TEST_CASE("cli: evaluate split on the separable synthetic corpus is perfect") {
    SyntheticSpec spec;
    spec.categories = 3;
    spec.docs_per_language = 10;
    Workspace ws(spec, "cli-eval");
    auto args = base_args(ws);
    std::vector<std::string> cmd{"evaluate", "--corpus", ws.path("corpus"), "--protocol",
                                 "split",    "--ratio",  "0.8",             "--classifier", "nb"};
    cmd.insert(cmd.end(), args.begin(), args.end());
    CliRun run = cli(cmd);
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("Mac Avg") != std::string::npos);
    CHECK(run.out.find("1.0000   1.0000   1.0000") != std::string::npos);
}

TEST_CASE("cli: evaluate kfold reports fold means in both formats") {
    SyntheticSpec spec;
    spec.categories = 2;
    spec.docs_per_language = 6;
    Workspace ws(spec, "cli-kfold-ok");
    auto args = base_args(ws);
    std::vector<std::string> cmd{"evaluate", "--corpus", ws.path("corpus"), "--protocol",
                                 "kfold",    "--folds",  "3", "--classifier", "nb"};
    cmd.insert(cmd.end(), args.begin(), args.end());
    CliRun table = cli(cmd);
    CHECK(table.exit_code == 0);
    CHECK(table.out.find("fold means over 3 folds") != std::string::npos);
    CHECK(table.out.find("Mac Avg") != std::string::npos);

    cmd.push_back("--report-format");
    cmd.push_back("json");
    CliRun json = cli(cmd);
    CHECK(json.exit_code == 0);
    CHECK(json.out.find("\"macro\"") != std::string::npos);
    CHECK(json.out.find("cat00") != std::string::npos);
}

TEST_CASE("cli: evaluate kfold with too-small categories errors") {
    Workspace ws(small_spec(), "cli-kfold");  // 12 docs per category
    auto args = base_args(ws);
    std::vector<std::string> cmd{"evaluate", "--corpus", ws.path("corpus"), "--protocol",
                                 "kfold",    "--folds",  "13"};
    cmd.insert(cmd.end(), args.begin(), args.end());
    CliRun run = cli(cmd);
    CHECK(run.exit_code == 3);
    CHECK(run.err.find("fewer than k") != std::string::npos);
}

TEST_CASE("cli: evaluate twice with a fixed seed is byte-identical") {
    Workspace ws(small_spec(), "cli-eval-det");
    auto args = base_args(ws);
    std::vector<std::string> cmd{"evaluate", "--corpus",      ws.path("corpus"),
                                 "--protocol", "split",       "--seed", "17",
                                 "--report-format", "json"};
    cmd.insert(cmd.end(), args.begin(), args.end());
    CliRun a = cli(cmd);
    CliRun b = cli(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cli: a French document classifies identically under both approaches") {
    Workspace ws(small_spec(), "cli-parity");
    auto args = base_args(ws);
    for (const char* approach : {"translate", "multi-onto"}) {
        std::vector<std::string> cmd{"train",   "--corpus",   ws.path("corpus"),
                                     "--model", ws.path(std::string(approach) + ".ocm"),
                                     "--approach", approach};
        cmd.insert(cmd.end(), args.begin(), args.end());
        REQUIRE(cli(cmd).exit_code == 0);
    }
    std::string doc = ws.path("corpus") + "/cat02/c02-fr-003.txt";
    REQUIRE(std::filesystem::exists(doc));
    std::string outputs[2];
    int i = 0;
    for (const char* approach : {"translate", "multi-onto"}) {
        std::vector<std::string> cmd{"classify", "--model",
                                     ws.path(std::string(approach) + ".ocm"), doc};
        cmd.insert(cmd.end(), args.begin(), args.end());
        CliRun run = cli(cmd);
        REQUIRE(run.exit_code == 0);
        outputs[i++] = run.out;
    }
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0].find("\tcat02\t") != std::string::npos);
}

TEST_CASE("cli: evaluate --grid emits the full cross-product table") {
    SyntheticSpec spec;
    spec.categories = 2;
    spec.docs_per_language = 5;
    Workspace ws(spec, "cli-grid");
    auto args = base_args(ws);
    std::vector<std::string> cmd{"evaluate", "--corpus", ws.path("corpus"), "--grid",
                                 "--ratio", "0.6"};
    cmd.insert(cmd.end(), args.begin(), args.end());
    CliRun run = cli(cmd);
    CHECK(run.exit_code == 0);
    // 2 approaches x 2 representations x 3 classifiers = 12 result rows
    std::size_t rows = 0, pos = 0;
    while ((pos = run.out.find("\n", pos + 1)) != std::string::npos) ++rows;
    CHECK(rows >= 13);
    CHECK(run.out.find("multi-onto") != std::string::npos);
    CHECK(run.out.find("concepts+hyperonyms") != std::string::npos);
    CHECK(run.out.find("adaboost-nb") != std::string::npos);
}

TEST_CASE("cli: detect-lang tags documents by stopword evidence") {
    Workspace ws(small_spec(), "cli-detect");
    testutil::write_file(ws.dir.file("en.txt"), "the classification of the patient");
    testutil::write_file(ws.dir.file("fr.txt"), "la classification de la maladie du patient");
    CliRun run = cli({"detect-lang", "--stopwords-dir", ws.path("stopwords"),
                      ws.path("en.txt"), ws.path("fr.txt")});
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("en.txt\ten\t") != std::string::npos);
    CHECK(run.out.find("fr.txt\tfr\t") != std::string::npos);
}

TEST_CASE("cli: ingest-ontology converts XML to equivalent tabular") {
    Workspace ws(small_spec(), "cli-ingest");
    testutil::write_file(ws.dir.file("onto.xml"), testutil::descriptor_xml(ws.bundle.ontology));
    CliRun run = cli({"ingest-ontology", "--input", ws.path("onto.xml"), "--output",
                      ws.path("onto-out.tsv")});
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("retained\t15") != std::string::npos);

    std::ifstream in(ws.path("onto-out.tsv"));
    Ontology reloaded = load_ontology_tabular(in);
    CHECK(testutil::same_ontology(reloaded, ws.bundle.ontology));
}

TEST_CASE("cli: ingest-ontology honors the filter prefix") {
    Workspace ws(small_spec(), "cli-ingest-filter");
    testutil::write_file(ws.dir.file("onto.xml"), testutil::descriptor_xml(ws.bundle.ontology));
    CliRun run = cli({"ingest-ontology", "--input", ws.path("onto.xml"), "--output",
                      ws.path("c01.tsv"), "--filter-prefix", "C01"});
    CHECK(run.exit_code == 0);
    std::ifstream in(ws.path("c01.tsv"));
    Ontology filtered = load_ontology_tabular(in);
    CHECK(filtered.size() == 5);  // parent P01 + 4 siblings
    for (const auto& [id, node] : filtered.concepts()) {
        bool match = false;
        for (const auto& tree : node.tree_numbers) match |= tree.rfind("C01", 0) == 0;
        CHECK(match);
    }
}

TEST_CASE("cli: config file mirrors flags and flags override") {
    Workspace ws(small_spec(), "cli-config");
    testutil::write_file(ws.dir.file("exp.conf"),
                         "ontology=" + ws.path("ontology.tsv") + "\n" +
                             "stopwords-dir=" + ws.path("stopwords") + "\n" +
                             "lexicon=" + ws.path("lexicon.tsv") + "\n" +
                             "corpus=" + ws.path("corpus") + "\n" +
                             "model=" + ws.path("conf-model.ocm") + "\n" +
                             "classifier=nb\n");
    CliRun run = cli({"train", "--config", ws.path("exp.conf")});
    CHECK(run.exit_code == 0);
    CHECK(std::filesystem::exists(ws.path("conf-model.ocm")));

    // flag overrides the file's classifier; fingerprint knobs land in the model
    CliRun run2 = cli({"train", "--config", ws.path("exp.conf"), "--model",
                       ws.path("conf-model2.ocm"), "--hyperonyms", "on"});
    CHECK(run2.exit_code == 0);
    std::ifstream in(ws.path("conf-model2.ocm"), std::ios::binary);
    TrainedModel model = TrainedModel::load(in);
    CHECK(model.fingerprint().find("hyper=on") != std::string::npos);
}

TEST_CASE("cli: fingerprint round-trips through the model file") {
    Workspace ws(small_spec(), "cli-fp-roundtrip");
    auto args = base_args(ws);
    std::vector<std::string> cmd{"train",   "--corpus",     ws.path("corpus"),
                                 "--model", ws.path("m.ocm"), "--mapping", "add",
                                 "--disambiguation", "all",  "--approach", "translate"};
    cmd.insert(cmd.end(), args.begin(), args.end());
    REQUIRE(cli(cmd).exit_code == 0);
    std::ifstream in(ws.path("m.ocm"), std::ios::binary);
    TrainedModel model = TrainedModel::load(in);
    PipelineConfig config;
    apply_fingerprint(model.fingerprint(), config);
    CHECK(config.fingerprint() == model.fingerprint());
    CHECK(to_string(config.mapping) == "add");
    CHECK(to_string(config.disambiguation) == "all");
    CHECK(to_string(config.approach) == "translate");
}
