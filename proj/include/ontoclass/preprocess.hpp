#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ontoclass/sparse.hpp"
#include "ontoclass/text.hpp"

namespace ontoclass {

// Per-language stopword sets. Entries are stored normalized; a list file line
// that normalizes to several tokens contributes each of them.
class StopwordTable {
public:
    void add(const std::string& language, std::string_view word);

    // Loads every <lang>.txt in dir as the stopword list for <lang>.
    // File format: UTF-8, one word per line, '#' starts a comment line.
    static StopwordTable load_directory(const std::filesystem::path& dir);
    static StopwordTable load_stream(const std::string& language, std::istream& in);

    bool has_language(const std::string& language) const;
    bool is_stopword(const std::string& language, const std::string& token) const;
    std::vector<std::string> languages() const;
    const std::set<std::string>& words(const std::string& language) const;

private:
    std::map<std::string, std::set<std::string>> sets_;
};

struct LanguageDetection {
    std::string language;
    std::map<std::string, double> scores;  // per language: stopword hits / token count
};

// Scores each language by the fraction of tokens found in its stopword set
// and returns the best one. Empty input, all-zero scores, or a tie between
// top languages all resolve to default_language.
LanguageDetection detect_language(const TokenStream& tokens, const StopwordTable& table,
                                  const std::string& default_language = "en");

// Optional token rewriting stage applied after stopword removal.
struct Stemmer {
    virtual ~Stemmer() = default;
    virtual std::string stem(const std::string& token) const = 0;
};

// Bag of terms for one document. Counts are integral occurrence counts (>= 1)
// and never include a stopword of `language`.
struct TermVector {
    std::string language;
    SparseVector counts;
};

// Counts the non-stopword tokens (stemmed first when a stemmer is given).
// Throws ConfigError when `language` has no stopword list in `table`.
TermVector to_term_vector(const TokenStream& tokens, const std::string& language,
                          const StopwordTable& table, const Stemmer* stemmer = nullptr);

}  // namespace ontoclass
