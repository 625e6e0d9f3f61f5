#include <doctest.h>

#include <sstream>

#include "ontoclass/corpus.hpp"
#include "ontoclass/errors.hpp"
#include "testutil.hpp"

using namespace ontoclass;

namespace {

// Desk-scale fixture reusing the benchmark's 23 disease category names.
const char* kCategoryNames[] = {
    "Bacterial Infections and Mycoses", "Virus Diseases", "Parasitic Diseases", "Neoplasms",
    "Musculoskeletal Diseases", "Digestive System Diseases", "Stomatognathic Diseases",
    "Respiratory Tract Diseases", "Otorhinolaryngologic Diseases", "Nervous System Diseases",
    "Eye Diseases", "Urologic and Male Genital Diseases",
    "Female Genital Diseases and Pregnancy Complications", "Cardiovascular Diseases",
    "Hemic and Lymphatic Diseases", "Neonatal Diseases and Abnormalities",
    "Skin and Connective Tissue Diseases", "Nutritional and Metabolic Diseases",
    "Endocrine Diseases", "Immunologic Diseases", "Disorders of Environmental Origin",
    "Animal Diseases", "Pathological Conditions, Signs and Symptoms"};

Corpus ohsumed(const std::string& records, const std::string& labels,
               OhsumedStats* stats = nullptr) {
    std::istringstream r(records), l(labels);
    return load_ohsumed(r, l, stats);
}

}  // namespace

TEST_CASE("ohsumed: 23-category sidecar with a declared Neoplasms count") {
    std::ostringstream records, labels;
    int id = 0;
    for (const auto* category : kCategoryNames) {
        int docs = std::string(category) == "Neoplasms" ? 3 : 1;
        for (int d = 0; d < docs; ++d) {
            ++id;
            records << ".I " << id << "\n.T\nRecord " << id << " title\n.W\nbody text " << id
                    << "\n";
            labels << id << "\t" << category << "\n";
        }
    }
    Corpus corpus = ohsumed(records.str(), labels.str());
    auto counts = corpus.category_counts();
    CHECK(counts.size() == 23);
    CHECK(counts.at("Neoplasms") == 3);
    CHECK(corpus.documents.size() == 25);
}

TEST_CASE("ohsumed: empty input gives an empty corpus") {
    Corpus corpus = ohsumed("", "");
    CHECK(corpus.documents.empty());
    CHECK(corpus.categories().empty());
}

TEST_CASE("ohsumed: .T-only record keeps the title with an empty body") {
    Corpus corpus = ohsumed(".I 7\n.T\nOnly a title\n", "7\tNeoplasms\n");
    REQUIRE(corpus.documents.size() == 1);
    CHECK(corpus.documents[0].title == "Only a title");
    CHECK(corpus.documents[0].body.empty());
}

TEST_CASE("ohsumed: records with neither .T nor .W are skipped and counted") {
    OhsumedStats stats;
    Corpus corpus = ohsumed(".I 1\n.M\nMeSH only.\n.I 2\n.W\nkept\n",
                            "1\tVirus Diseases\n2\tVirus Diseases\n", &stats);
    CHECK(corpus.documents.size() == 1);
    CHECK(stats.skipped_empty == 1);
}

TEST_CASE("ohsumed: unlabeled record is an error") {
    CHECK_THROWS_AS(ohsumed(".I 1\n.W\ntext\n", ""), DataError);
}

TEST_CASE("ohsumed: .M content never reaches title or body") {
    Corpus corpus = ohsumed(
        ".I 1\n.T\ntitle words\n.M\nNeoplasms/diagnosis; Virus\n.W\nbody words\n"
        ".A\nAuthor X\n.S\nJournal\n.P\nJOURNAL ARTICLE\n",
        "1\tNeoplasms\n");
    REQUIRE(corpus.documents.size() == 1);
    const Document& doc = corpus.documents[0];
    CHECK(doc.title == "title words");
    CHECK(doc.body == "body words");
    CHECK(doc.text().find("Neoplasms/diagnosis") == std::string::npos);
    CHECK(doc.text().find("Author") == std::string::npos);
}

TEST_CASE("directory corpus: empty root, two categories, nested dirs ignored") {
    testutil::TempDir dir("corpus");
    CHECK(load_directory_corpus(dir.path()).documents.empty());

    testutil::write_file(dir.path() / "catA" / "1.txt", "alpha document");
    testutil::write_file(dir.path() / "catA" / "2.txt", "another alpha");
    testutil::write_file(dir.path() / "catA" / "3.txt", "third alpha");
    testutil::write_file(dir.path() / "catB" / "1.txt", "beta document");
    testutil::write_file(dir.path() / "catB" / "2.txt", "more beta");
    testutil::write_file(dir.path() / "catB" / "3.txt", "third beta");
    testutil::write_file(dir.path() / "catB" / "nested" / "ignored.txt", "nested");
    testutil::write_file(dir.path() / "stray.txt", "stray");

    DirectoryStats stats;
    Corpus corpus = load_directory_corpus(dir.path(), &stats);
    CHECK(corpus.documents.size() == 6);
    CHECK(corpus.categories() == std::vector<std::string>{"catA", "catB"});
    CHECK(stats.ignored_entries == 2);  // nested dir + stray file
    CHECK(std::is_sorted(corpus.documents.begin(), corpus.documents.end(),
                         [](const Document& a, const Document& b) { return a.id < b.id; }));
}

TEST_CASE("directory corpus: write/load round trip") {
    SyntheticSpec spec;
    spec.categories = 2;
    spec.docs_per_language = 3;
    auto bundle = generate_synthetic_bilingual(spec);

    testutil::TempDir dir("roundtrip");
    write_directory_corpus(bundle.corpus, dir.path());
    Corpus reloaded = load_directory_corpus(dir.path());
    REQUIRE(reloaded.documents.size() == bundle.corpus.documents.size());
    for (std::size_t i = 0; i < reloaded.documents.size(); ++i) {
        CHECK(reloaded.documents[i].category == bundle.corpus.documents[i].category);
        // bodies may gain a trailing newline; compare trimmed token streams
        CHECK(tokenize(reloaded.documents[i].body) == tokenize(bundle.corpus.documents[i].body));
    }
}

TEST_CASE("generator: identical spec gives byte-identical corpora") {
    SyntheticSpec spec;
    spec.categories = 3;
    spec.docs_per_language = 4;
    spec.seed = 77;
    auto a = generate_synthetic_bilingual(spec);
    auto b = generate_synthetic_bilingual(spec);
    REQUIRE(a.corpus.documents.size() == b.corpus.documents.size());
    for (std::size_t i = 0; i < a.corpus.documents.size(); ++i) {
        CHECK(a.corpus.documents[i].id == b.corpus.documents[i].id);
        CHECK(a.corpus.documents[i].body == b.corpus.documents[i].body);
        CHECK(a.corpus.documents[i].category == b.corpus.documents[i].category);
    }
    SyntheticSpec other = spec;
    other.seed = 78;
    auto c = generate_synthetic_bilingual(other);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.corpus.documents.size(); ++i)
        any_diff |= a.corpus.documents[i].body != c.corpus.documents[i].body;
    CHECK(any_diff);
}

TEST_CASE("generator: ontology invariants hold by construction") {
    auto bundle = generate_synthetic_bilingual({});
    const Ontology& onto = bundle.ontology;
    CHECK(onto.size() == 8 * (1 + 4));
    for (const auto& [id, node] : onto.concepts()) {
        for (const auto& [lang, label] : node.labels) {
            auto hits = onto.lookup(lang, label);
            CHECK(std::find(hits.begin(), hits.end(), id) != hits.end());
        }
        for (const auto& parent : node.parent_ids) CHECK(onto.find(parent) != nullptr);
    }
    // every sibling's parent is its category parent
    CHECK(onto.hyperonyms("S0001") == std::set<std::string>{"P00"});
}

TEST_CASE("generator: French documents detect as French") {
    SyntheticSpec spec;
    spec.categories = 4;
    spec.docs_per_language = 5;
    auto bundle = generate_synthetic_bilingual(spec);
    for (const auto& doc : bundle.corpus.documents) {
        bool is_french = doc.id.find("-fr-") != std::string::npos;
        auto detection = detect_language(tokenize(doc.text()), bundle.stopwords);
        CHECK(detection.language == (is_french ? "fr" : "en"));
    }
}

TEST_CASE("generator: degenerate sizes are rejected") {
    SyntheticSpec spec;
    spec.categories = 1;
    CHECK_THROWS_AS(generate_synthetic_bilingual(spec), ConfigError);
    spec = {};
    spec.docs_per_language = 0;
    CHECK_THROWS_AS(generate_synthetic_bilingual(spec), ConfigError);
}
