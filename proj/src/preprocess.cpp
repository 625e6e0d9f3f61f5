#include "ontoclass/preprocess.hpp"

#include <algorithm>
#include <fstream>

#include "ontoclass/errors.hpp"

namespace ontoclass {

void StopwordTable::add(const std::string& language, std::string_view word) {
    for (auto& token : tokenize(word)) sets_[language].insert(std::move(token));
}

StopwordTable StopwordTable::load_stream(const std::string& language, std::istream& in) {
    StopwordTable table;
    table.sets_[language];  // a present-but-empty list is still a language
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        table.add(language, line);
    }
    return table;
}

StopwordTable StopwordTable::load_directory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw DataError("stopword directory not found: " + dir.string());
    StopwordTable table;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        std::ifstream in(path);
        if (!in) throw DataError("cannot read stopword file: " + path.string());
        std::string language = path.stem().string();
        auto one = load_stream(language, in);
        table.sets_[language] = one.sets_[language];
    }
    if (table.sets_.empty())
        throw DataError("no <lang>.txt stopword files in " + dir.string());
    return table;
}

bool StopwordTable::has_language(const std::string& language) const {
    return sets_.count(language) != 0;
}

bool StopwordTable::is_stopword(const std::string& language, const std::string& token) const {
    auto it = sets_.find(language);
    return it != sets_.end() && it->second.count(token) != 0;
}

std::vector<std::string> StopwordTable::languages() const {
    std::vector<std::string> out;
    for (const auto& [lang, set] : sets_) out.push_back(lang);
    return out;
}

const std::set<std::string>& StopwordTable::words(const std::string& language) const {
    auto it = sets_.find(language);
    if (it == sets_.end())
        throw ConfigError("no stopword list for language '" + language + "'");
    return it->second;
}

LanguageDetection detect_language(const TokenStream& tokens, const StopwordTable& table,
                                  const std::string& default_language) {
    LanguageDetection result;
    const double denom = tokens.empty() ? 1.0 : static_cast<double>(tokens.size());
    double best = -1.0;
    int best_count = 0;
    std::string best_language;
    for (const auto& lang : table.languages()) {
        std::size_t hits = 0;
        for (const auto& token : tokens)
            if (table.is_stopword(lang, token)) ++hits;
        double score = static_cast<double>(hits) / denom;
        result.scores[lang] = score;
        if (score > best) {
            best = score;
            best_count = 1;
            best_language = lang;
        } else if (score == best) {
            ++best_count;
        }
    }
    if (best_count == 1 && best > 0.0)
        result.language = best_language;
    else
        result.language = default_language;
    return result;
}

TermVector to_term_vector(const TokenStream& tokens, const std::string& language,
                          const StopwordTable& table, const Stemmer* stemmer) {
    if (!table.has_language(language)) {
        std::string known;
        for (const auto& lang : table.languages()) known += (known.empty() ? "" : ", ") + lang;
        throw ConfigError("language '" + language + "' has no stopword list (available: " +
                          known + ")");
    }
    TermVector tv;
    tv.language = language;
    for (const auto& token : tokens) {
        if (table.is_stopword(language, token)) continue;
        tv.counts[stemmer ? stemmer->stem(token) : token] += 1.0;
    }
    return tv;
}

}  // namespace ontoclass
