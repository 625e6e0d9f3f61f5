#include "ontoclass/multilingual.hpp"

#include <algorithm>

#include "ontoclass/errors.hpp"

namespace ontoclass {

void BilingualLexicon::add(std::string_view source_phrase,
                           const std::vector<std::string>& translations) {
    std::string key = normalize_surface(source_phrase);
    if (key.empty()) return;
    std::vector<std::string> normalized;
    for (const auto& t : translations) {
        std::string n = normalize_surface(t);
        if (!n.empty()) normalized.push_back(std::move(n));
    }
    if (normalized.empty())
        throw IntegrityError("lexicon entry '" + key + "' has no usable translation");
    std::size_t tokens = static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
    max_source_tokens = std::max(max_source_tokens, tokens);
    entries[key] = std::move(normalized);
}

const std::vector<std::string>* BilingualLexicon::find(const std::string& phrase) const {
    auto it = entries.find(phrase);
    return it == entries.end() ? nullptr : &it->second;
}

BilingualLexicon BilingualLexicon::load_tsv(std::istream& in, const std::string& source_language,
                                            const std::string& target_language) {
    BilingualLexicon lexicon;
    lexicon.source_language = source_language;
    lexicon.target_language = target_language;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError::at_line("lexicon line has no tab separator", line_number);
        std::vector<std::string> translations;
        std::string rest = line.substr(tab + 1);
        std::size_t start = 0;
        while (true) {
            auto bar = rest.find('|', start);
            translations.push_back(rest.substr(start, bar - start));
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
        lexicon.add(line.substr(0, tab), translations);
    }
    return lexicon;
}

PivotApproach parse_pivot_approach(const std::string& name) {
    if (name == "translate") return PivotApproach::Translation;
    if (name == "multi-onto") return PivotApproach::MultilingualOntology;
    throw ConfigError("unknown approach '" + name + "' (translate | multi-onto)");
}

std::string to_string(PivotApproach approach) {
    return approach == PivotApproach::Translation ? "translate" : "multi-onto";
}

TranslationResult translate_term_vector(const TermVector& tv, const TranslationProvider& lexicon) {
    if (tv.language != lexicon.source())
        throw ConfigError("term vector language '" + tv.language +
                          "' does not match lexicon source language '" + lexicon.source() + "'");
    TranslationResult result;
    result.vector.language = lexicon.target();
    for (const auto& [term, count] : tv.counts) {
        if (const auto* translations = lexicon.find(term)) {
            result.vector.counts[translations->front()] += count;
        } else {
            result.vector.counts[term] += count;
            ++result.untranslated_terms;
        }
    }
    return result;
}

StreamTranslation translate_token_stream(const TokenStream& tokens,
                                         const TranslationProvider& lexicon) {
    StreamTranslation out;
    const std::size_t max_ngram = std::max<std::size_t>(1, lexicon.max_phrase_tokens());
    std::size_t i = 0;
    while (i < tokens.size()) {
        bool matched = false;
        std::size_t longest = std::min(max_ngram, tokens.size() - i);
        for (std::size_t len = longest; len >= 1; --len) {
            const auto* translations = lexicon.find(join_tokens(tokens, i, len));
            if (!translations) continue;
            for (auto& token : tokenize(translations->front())) out.tokens.push_back(std::move(token));
            i += len;
            matched = true;
            break;
        }
        if (!matched) {
            out.tokens.push_back(tokens[i]);
            ++out.untranslated_tokens;
            ++i;
        }
    }
    return out;
}

HybridRepresentation pivot_to_english_concepts(const TokenStream& tokens, const TermVector& tv,
                                               const Ontology& ontology,
                                               const TranslationProvider* lexicon,
                                               const StopwordTable& stopwords,
                                               PivotApproach approach, MappingStrategy mapping,
                                               DisambiguationStrategy disambiguation,
                                               const Stemmer* stemmer) {
    if (tv.language == kPivotLanguage)
        return map_terms(tokens, tv, ontology, mapping, disambiguation, stemmer);

    if (approach == PivotApproach::MultilingualOntology) {
        HybridRepresentation rep =
            map_terms(tokens, tv, ontology, mapping, disambiguation, stemmer);
        rep.language = kPivotLanguage;
        return rep;
    }

    // Translation approach
    if (!lexicon)
        throw ConfigError("translation approach requires a lexicon for language '" + tv.language +
                          "'");
    if (lexicon->source() != tv.language)
        throw ConfigError("lexicon translates '" + lexicon->source() + "', document is '" +
                          tv.language + "'");

    StreamTranslation translated = translate_token_stream(tokens, *lexicon);

    // Rebuild the term vector over the translated stream. Source-language
    // stopwords pass through translation untouched and English ones can ride
    // in as parts of phrases, so both sets are removed.
    TermVector pivoted;
    pivoted.language = kPivotLanguage;
    for (const auto& token : translated.tokens) {
        if (stopwords.has_language(tv.language) && stopwords.is_stopword(tv.language, token))
            continue;
        if (stopwords.has_language(kPivotLanguage) &&
            stopwords.is_stopword(kPivotLanguage, token))
            continue;
        pivoted.counts[stemmer ? stemmer->stem(token) : token] += 1.0;
    }

    return map_terms(translated.tokens, pivoted, ontology, mapping, disambiguation, stemmer);
}

}  // namespace ontoclass
