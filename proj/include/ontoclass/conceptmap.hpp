#pragma once

#include <string>

#include "ontoclass/ontology.hpp"
#include "ontoclass/preprocess.hpp"
#include "ontoclass/sparse.hpp"

namespace ontoclass {

// How mapped terms and their concepts populate the hybrid representation.
enum class MappingStrategy {
    AddConcept,              // keep the full term vector and append concepts
    ReplaceTermsByConcepts,  // mapped occurrences leave the term part
    ConceptOnly,             // term part dropped entirely
};

// How to pick among a surface's candidate concepts.
enum class DisambiguationStrategy {
    AllConcepts,   // every candidate receives the occurrence
    FirstConcept,  // only the first candidate of the ordered list
};

enum class HyperonymMode {
    Propagate,  // keep existing counts and add each count to the parents
    Literal,    // each concept's new count = sum of its direct parents' old counts
};

// CLI/config spellings: add | replace | concept-only, all | first,
// propagate | literal.
MappingStrategy parse_mapping_strategy(const std::string& name);
DisambiguationStrategy parse_disambiguation_strategy(const std::string& name);
HyperonymMode parse_hyperonym_mode(const std::string& name);
std::string to_string(MappingStrategy);
std::string to_string(DisambiguationStrategy);
std::string to_string(HyperonymMode);

// A document as paired term and concept vectors. After the multilingual
// pivot, language is always the pivot language ("en"). fingerprint is
// pipeline metadata (the configuration that produced the representation);
// it takes no part in representation equality.
struct HybridRepresentation {
    std::string language;
    SparseVector term_part;     // term string -> count
    SparseVector concept_part;  // concept id -> count
    std::string fingerprint;
};

inline bool same_representation(const HybridRepresentation& a, const HybridRepresentation& b) {
    return a.language == b.language && a.term_part == b.term_part &&
           a.concept_part == b.concept_part;
}

// Maps a document into concept space. Scans the full token stream left to
// right with greedy longest-match over n-grams of 1..max_label_tokens against
// the ontology's label index for tv.language. Each matched occurrence counts
// once toward its candidate concept(s); an unmatched token counts toward the
// term part when it survived stopword removal (i.e. its key is in tv.counts).
// The stemmer, when given, must be the one used to build tv.
HybridRepresentation map_terms(const TokenStream& tokens, const TermVector& tv,
                               const Ontology& ontology, MappingStrategy mapping,
                               DisambiguationStrategy disambiguation,
                               const Stemmer* stemmer = nullptr);

// One-level hyperonym enrichment of the concept part; the term part is
// untouched. Throws IntegrityError when a concept id is not in the ontology.
HybridRepresentation enrich_with_hyperonyms(const HybridRepresentation& rep,
                                            const Ontology& ontology,
                                            HyperonymMode mode = HyperonymMode::Propagate);

}  // namespace ontoclass
