#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "ontoclass/multilingual.hpp"
#include "ontoclass/ontology.hpp"
#include "ontoclass/preprocess.hpp"

namespace ontoclass {

struct Document {
    std::string id;
    std::string title;
    std::string body;
    std::string category;

    std::string text() const { return title.empty() ? body : title + "\n" + body; }
};

struct Corpus {
    std::vector<Document> documents;  // sorted by id

    std::vector<std::string> categories() const;
    std::map<std::string, std::size_t> category_counts() const;
    std::vector<std::string> labels() const;  // per document, aligned with `documents`
};

// Field-tagged record format: records open with a line ".I <id>"; the tag
// lines .T .W .M .A .S .P each start a field whose content is the following
// lines up to the next tag. Only .T (title) and .W (body) are retained; .M
// in particular never reaches the feature pipeline. Categories come from the
// sidecar TSV `doc_id <TAB> category`. Records with neither .T nor .W are
// skipped and counted; a record whose id has no sidecar entry is an error.
struct OhsumedStats {
    std::size_t skipped_empty = 0;
};
Corpus load_ohsumed(std::istream& records, std::istream& labels, OhsumedStats* stats = nullptr);

// One subdirectory per category, one document per regular file inside it.
// Nested directories and stray root-level files are ignored and counted.
struct DirectoryStats {
    std::size_t ignored_entries = 0;
    std::size_t skipped_empty = 0;
};
Corpus load_directory_corpus(const std::filesystem::path& root, DirectoryStats* stats = nullptr);
void write_directory_corpus(const Corpus& corpus, const std::filesystem::path& root);

// Deterministic aligned bilingual test-corpus generator. Per category it
// builds one parent concept with `siblings_per_category` children; documents
// mix sibling surfaces (preferred labels and entry terms, some multiword),
// language-appropriate stopwords (every 4th token), and cross-category noise
// terms. French and English category surfaces share concept ids, and the
// lexicon maps every French surface to the English preferred label of the
// same concept, so the two pivot approaches agree exactly. Noise terms have
// no lexicon entries and no labels.
//
// partition_siblings assigns even-index siblings to the first half of each
// category's documents and odd-index siblings to the second half; training
// on one half and testing on the other then exercises generalization through
// shared parents.
struct SyntheticSpec {
    int categories = 8;
    int docs_per_language = 50;  // per category
    int siblings_per_category = 4;
    int tokens_per_doc = 32;
    int noise_vocab = 24;
    int noise_percent = 30;  // chance a content token is noise
    bool partition_siblings = false;
    uint64_t seed = 1;
};

struct SyntheticBundle {
    Corpus corpus;
    Ontology ontology;
    BilingualLexicon lexicon;  // fr -> en
    StopwordTable stopwords;   // en + fr
};

SyntheticBundle generate_synthetic_bilingual(const SyntheticSpec& spec);

// Serialization of generator outputs for driving the CLI in tests.
void write_lexicon_tsv(const BilingualLexicon& lexicon, std::ostream& out);
void write_stopword_files(const StopwordTable& table, const std::filesystem::path& dir);

}  // namespace ontoclass
