#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "ontoclass/conceptmap.hpp"
#include "ontoclass/preprocess.hpp"

namespace ontoclass {

// Phrase-translation source. The file-backed lexicon below is the only
// implementation the toolkit ships; external translation services can plug
// in behind this interface without touching the pivot logic.
struct TranslationProvider {
    virtual ~TranslationProvider() = default;
    // Ordered translations for a normalized phrase (first = preferred),
    // nullptr when unknown.
    virtual const std::vector<std::string>* find(const std::string& normalized_phrase) const = 0;
    virtual std::size_t max_phrase_tokens() const = 0;
    virtual const std::string& source() const = 0;
    virtual const std::string& target() const = 0;
};

// Offline phrase dictionary replacing a live translation service. Keys and
// translations are normalized surfaces; the first translation of an entry is
// the preferred one.
struct BilingualLexicon final : TranslationProvider {
    std::string source_language;
    std::string target_language = "en";
    std::map<std::string, std::vector<std::string>> entries;
    std::size_t max_source_tokens = 0;

    void add(std::string_view source_phrase, const std::vector<std::string>& translations);
    const std::vector<std::string>* find(const std::string& normalized_phrase) const override;
    std::size_t max_phrase_tokens() const override { return max_source_tokens; }
    const std::string& source() const override { return source_language; }
    const std::string& target() const override { return target_language; }

    // TSV: source_phrase <TAB> translation1|translation2...  '#' comments.
    static BilingualLexicon load_tsv(std::istream& in, const std::string& source_language,
                                     const std::string& target_language = "en");
};

enum class PivotApproach {
    Translation,          // translate the term vector, map with the English index
    MultilingualOntology  // map source terms with that language's label index
};

PivotApproach parse_pivot_approach(const std::string& name);  // translate | multi-onto
std::string to_string(PivotApproach);

// Term-vector translation: each term's count transfers to its preferred
// (first) translation; a multiword translation becomes a single phrase key.
// Terms without an entry pass through and are tallied in untranslated_terms.
struct TranslationResult {
    TermVector vector;
    std::size_t untranslated_terms = 0;  // distinct keys without a lexicon entry
};
TranslationResult translate_term_vector(const TermVector& tv, const TranslationProvider& lexicon);

// Token-stream translation used by the pivot: greedy longest-match over
// lexicon phrases; matched phrases are replaced by the tokens of their
// preferred translation (kept contiguous, so downstream n-gram lookup sees
// the full phrase), unmatched tokens pass through.
struct StreamTranslation {
    TokenStream tokens;
    std::size_t untranslated_tokens = 0;
};
StreamTranslation translate_token_stream(const TokenStream& tokens,
                                         const TranslationProvider& lexicon);

// Pivots a document into English concept space. English documents bypass
// pivoting (plain map_terms). Translation: the token stream is translated,
// then mapped with the English label index; the term part keeps source and
// English stopwords out. MultilingualOntology: source tokens are mapped with
// the source-language index of the shared ontology; concept ids are language
// neutral, so they already are the pivot ids. Output language is "en".
HybridRepresentation pivot_to_english_concepts(const TokenStream& tokens, const TermVector& tv,
                                               const Ontology& ontology,
                                               const TranslationProvider* lexicon,
                                               const StopwordTable& stopwords,
                                               PivotApproach approach, MappingStrategy mapping,
                                               DisambiguationStrategy disambiguation,
                                               const Stemmer* stemmer = nullptr);

inline constexpr const char* kPivotLanguage = "en";

}  // namespace ontoclass
