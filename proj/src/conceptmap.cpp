#include "ontoclass/conceptmap.hpp"

#include <algorithm>

#include "ontoclass/errors.hpp"

namespace ontoclass {

MappingStrategy parse_mapping_strategy(const std::string& name) {
    if (name == "add") return MappingStrategy::AddConcept;
    if (name == "replace") return MappingStrategy::ReplaceTermsByConcepts;
    if (name == "concept-only") return MappingStrategy::ConceptOnly;
    throw ConfigError("unknown mapping strategy '" + name + "' (add | replace | concept-only)");
}

DisambiguationStrategy parse_disambiguation_strategy(const std::string& name) {
    if (name == "all") return DisambiguationStrategy::AllConcepts;
    if (name == "first") return DisambiguationStrategy::FirstConcept;
    throw ConfigError("unknown disambiguation strategy '" + name + "' (all | first)");
}

HyperonymMode parse_hyperonym_mode(const std::string& name) {
    if (name == "propagate") return HyperonymMode::Propagate;
    if (name == "literal") return HyperonymMode::Literal;
    throw ConfigError("unknown hyperonym mode '" + name + "' (propagate | literal)");
}

std::string to_string(MappingStrategy s) {
    switch (s) {
        case MappingStrategy::AddConcept: return "add";
        case MappingStrategy::ReplaceTermsByConcepts: return "replace";
        case MappingStrategy::ConceptOnly: return "concept-only";
    }
    return "?";
}

std::string to_string(DisambiguationStrategy s) {
    return s == DisambiguationStrategy::AllConcepts ? "all" : "first";
}

std::string to_string(HyperonymMode m) {
    return m == HyperonymMode::Propagate ? "propagate" : "literal";
}

HybridRepresentation map_terms(const TokenStream& tokens, const TermVector& tv,
                               const Ontology& ontology, MappingStrategy mapping,
                               DisambiguationStrategy disambiguation, const Stemmer* stemmer) {
    if (!ontology.has_language(tv.language)) {
        std::string known;
        for (const auto& lang : ontology.languages()) known += (known.empty() ? "" : ", ") + lang;
        throw ConfigError("ontology has no label index for language '" + tv.language +
                          "' (available: " + (known.empty() ? "none" : known) + ")");
    }

    HybridRepresentation rep;
    rep.language = tv.language;

    const std::size_t max_ngram = std::max<std::size_t>(1, ontology.max_label_tokens(tv.language));
    std::size_t i = 0;
    while (i < tokens.size()) {
        bool matched = false;
        std::size_t longest = std::min(max_ngram, tokens.size() - i);
        for (std::size_t len = longest; len >= 1; --len) {
            const auto& candidates =
                ontology.lookup_joined(tv.language, join_tokens(tokens, i, len));
            if (candidates.empty()) continue;
            if (disambiguation == DisambiguationStrategy::FirstConcept) {
                rep.concept_part[candidates.front()] += 1.0;
            } else {
                for (const auto& id : candidates) rep.concept_part[id] += 1.0;
            }
            i += len;
            matched = true;
            break;
        }
        if (!matched) {
            if (mapping == MappingStrategy::ReplaceTermsByConcepts) {
                const std::string key = stemmer ? stemmer->stem(tokens[i]) : tokens[i];
                if (tv.counts.count(key)) rep.term_part[key] += 1.0;
            }
            ++i;
        }
    }

    if (mapping == MappingStrategy::AddConcept) rep.term_part = tv.counts;
    return rep;
}

HybridRepresentation enrich_with_hyperonyms(const HybridRepresentation& rep,
                                            const Ontology& ontology, HyperonymMode mode) {
    HybridRepresentation out = rep;
    if (mode == HyperonymMode::Propagate) {
        for (const auto& [id, count] : rep.concept_part)
            for (const auto& parent : ontology.hyperonyms(id))  // throws on unknown id
                out.concept_part[parent] += count;
    } else {
        out.concept_part.clear();
        for (const auto& [id, count] : rep.concept_part)
            for (const auto& child : ontology.children(id))  // throws on unknown id
                out.concept_part[child] += count;
    }
    return out;
}

}  // namespace ontoclass
