#include "ontoclass/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "ontoclass/errors.hpp"

namespace ontoclass {

std::vector<std::string> Corpus::categories() const {
    std::set<std::string> set;
    for (const auto& doc : documents) set.insert(doc.category);
    return {set.begin(), set.end()};
}

std::map<std::string, std::size_t> Corpus::category_counts() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& doc : documents) ++counts[doc.category];
    return counts;
}

std::vector<std::string> Corpus::labels() const {
    std::vector<std::string> out;
    out.reserve(documents.size());
    for (const auto& doc : documents) out.push_back(doc.category);
    return out;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void sort_and_check(Corpus& corpus) {
    std::sort(corpus.documents.begin(), corpus.documents.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < corpus.documents.size(); ++i)
        if (corpus.documents[i].id == corpus.documents[i - 1].id)
            throw DataError("duplicate document id '" + corpus.documents[i].id + "'");
}

}  // namespace

Corpus load_ohsumed(std::istream& records, std::istream& labels, OhsumedStats* stats_out) {
    std::map<std::string, std::string> sidecar;
    {
        std::string line;
        std::size_t line_number = 0;
        while (std::getline(labels, line)) {
            ++line_number;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw ParseError::at_line("label sidecar line has no tab", line_number);
            std::string id = trim(line.substr(0, tab));
            std::string category = trim(line.substr(tab + 1));
            if (id.empty() || category.empty())
                throw ParseError::at_line("label sidecar entry is incomplete", line_number);
            if (!sidecar.emplace(id, category).second)
                throw DataError("duplicate sidecar entry for document '" + id + "'");
        }
    }

    OhsumedStats local;
    OhsumedStats& stats = stats_out ? *stats_out : local;
    stats = OhsumedStats{};

    Corpus corpus;
    std::string id, title, body, field;
    bool in_record = false;
    const auto flush = [&] {
        if (!in_record) return;
        if (title.empty() && body.empty()) {
            ++stats.skipped_empty;
            return;
        }
        auto it = sidecar.find(id);
        if (it == sidecar.end())
            throw DataError("record '" + id + "' has no category in the label sidecar");
        Document doc;
        doc.id = id;
        doc.title = title;
        doc.body = body;
        doc.category = it->second;
        corpus.documents.push_back(std::move(doc));
    };

    std::string line;
    std::size_t line_number = 0;
    while (std::getline(records, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind(".I", 0) == 0 && (line.size() == 2 || line[2] == ' ')) {
            flush();
            in_record = true;
            id = trim(line.substr(2));
            if (id.empty()) throw ParseError::at_line("record separator .I without an id", line_number);
            title.clear();
            body.clear();
            field.clear();
            continue;
        }
        std::string trimmed = trim(line);
        if (trimmed.size() == 2 && trimmed[0] == '.' && std::isupper(trimmed[1])) {
            if (!in_record)
                throw ParseError::at_line("field tag '" + trimmed + "' before any .I record",
                                          line_number);
            field = trimmed;
            continue;
        }
        if (!in_record) {
            if (!trimmed.empty())
                throw ParseError::at_line("content before the first .I record", line_number);
            continue;
        }
        if (field == ".T") {
            title += (title.empty() ? "" : " ") + trimmed;
        } else if (field == ".W") {
            body += (body.empty() ? "" : " ") + trimmed;
        }
        // .M/.A/.S/.P and unknown tags: parsed, not retained
    }
    flush();
    sort_and_check(corpus);
    return corpus;
}

Corpus load_directory_corpus(const std::filesystem::path& root, DirectoryStats* stats_out) {
    if (!std::filesystem::is_directory(root))
        throw DataError("corpus root is not a directory: " + root.string());

    DirectoryStats local;
    DirectoryStats& stats = stats_out ? *stats_out : local;
    stats = DirectoryStats{};

    Corpus corpus;
    std::vector<std::filesystem::path> category_dirs;
    for (const auto& entry : std::filesystem::directory_iterator(root)) {
        if (entry.is_directory())
            category_dirs.push_back(entry.path());
        else
            ++stats.ignored_entries;
    }
    std::sort(category_dirs.begin(), category_dirs.end());

    for (const auto& dir : category_dirs) {
        std::string category = dir.filename().string();
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            if (entry.is_regular_file())
                files.push_back(entry.path());
            else
                ++stats.ignored_entries;  // nested directories and specials
        }
        std::sort(files.begin(), files.end());
        for (const auto& path : files) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw DataError("cannot read document file: " + path.string());
            std::ostringstream content;
            content << in.rdbuf();
            if (in.bad()) throw DataError("error while reading: " + path.string());
            Document doc;
            doc.id = category + "/" + path.filename().string();
            doc.body = content.str();
            doc.category = category;
            if (trim(doc.body).empty()) {
                ++stats.skipped_empty;
                continue;
            }
            corpus.documents.push_back(std::move(doc));
        }
    }
    sort_and_check(corpus);
    return corpus;
}

void write_directory_corpus(const Corpus& corpus, const std::filesystem::path& root) {
    std::filesystem::create_directories(root);
    for (const auto& doc : corpus.documents) {
        auto dir = root / doc.category;
        std::filesystem::create_directories(dir);
        std::string name = doc.id;
        std::replace(name.begin(), name.end(), '/', '_');
        std::ofstream out(dir / (name + ".txt"), std::ios::binary);
        if (!out) throw DataError("cannot write document under " + dir.string());
        if (!doc.title.empty()) out << doc.title << "\n";
        out << doc.body << "\n";
    }
}

void write_lexicon_tsv(const BilingualLexicon& lexicon, std::ostream& out) {
    out << "# source_phrase\ttranslation|translation...\n";
    for (const auto& [phrase, translations] : lexicon.entries) {
        out << phrase << '\t';
        for (std::size_t i = 0; i < translations.size(); ++i)
            out << (i ? "|" : "") << translations[i];
        out << '\n';
    }
}

void write_stopword_files(const StopwordTable& table, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& lang : table.languages()) {
        std::ofstream out(dir / (lang + ".txt"), std::ios::binary);
        if (!out) throw DataError("cannot write stopword file for " + lang);
        for (const auto& word : table.words(lang)) out << word << '\n';
    }
}

// ---------------------------------------------------------------------------
// Synthetic bilingual generator

namespace {

const char* kEnglishStopwords[] = {"the", "of",  "and", "in",   "to",  "is",  "with",
                                   "for", "on",  "by",  "as",   "at",  "from", "this",
                                   "that", "are", "be",  "was", "or",  "an"};
const char* kFrenchStopwords[] = {"le",  "la",   "les", "de",  "des", "du",  "un",
                                  "une", "et",   "dans", "que", "qui", "pour", "est",
                                  "sur", "avec", "au",  "aux", "ce",  "cette", "pas"};

std::string two_digits(int v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d", v);
    return buf;
}
std::string three_digits(int v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03d", v);
    return buf;
}

}  // namespace

SyntheticBundle generate_synthetic_bilingual(const SyntheticSpec& spec) {
    if (spec.categories < 2) throw ConfigError("synthetic corpus needs >= 2 categories");
    if (spec.docs_per_language < 1) throw ConfigError("synthetic corpus needs >= 1 document per language");
    if (spec.siblings_per_category < 1) throw ConfigError("synthetic corpus needs >= 1 sibling concept");
    if (spec.tokens_per_doc < 4) throw ConfigError("synthetic documents need >= 4 tokens");
    if (spec.noise_vocab < 1) throw ConfigError("synthetic corpus needs a noise vocabulary");
    if (spec.partition_siblings && (spec.siblings_per_category < 2 || spec.docs_per_language < 2))
        throw ConfigError("sibling partition needs >= 2 siblings and >= 2 documents per language");

    SyntheticBundle bundle;
    for (const char* w : kEnglishStopwords) bundle.stopwords.add("en", w);
    for (const char* w : kFrenchStopwords) bundle.stopwords.add("fr", w);
    bundle.lexicon.source_language = "fr";
    bundle.lexicon.target_language = "en";

    struct Surface {
        std::string en;
        std::string fr;
    };
    // per category, per sibling: usable surfaces (preferred label + entry term)
    std::vector<std::vector<std::vector<Surface>>> surfaces(spec.categories);

    for (int c = 0; c < spec.categories; ++c) {
        const std::string cc = two_digits(c);
        Concept parent;
        parent.id = "P" + cc;
        parent.tree_numbers = {"C" + cc};
        parent.labels["en"] = "ailment" + cc;
        parent.labels["fr"] = "affection" + cc;
        bundle.lexicon.add(parent.labels["fr"], {parent.labels["en"]});
        bundle.ontology.add_concept(parent);

        surfaces[c].resize(spec.siblings_per_category);
        for (int s = 0; s < spec.siblings_per_category; ++s) {
            const std::string ss = cc + two_digits(s);
            Concept sibling;
            sibling.id = "S" + ss;
            sibling.tree_numbers = {"C" + cc + "." + three_digits(100 + s)};
            // odd siblings get multiword labels to exercise n-gram matching
            if (s % 2 == 0) {
                sibling.labels["en"] = "marker" + ss;
                sibling.labels["fr"] = "signe" + ss;
            } else {
                sibling.labels["en"] = "complex marker" + ss;
                sibling.labels["fr"] = "syndrome signe" + ss;
            }
            sibling.entry_terms["en"] = {"alias" + ss};
            sibling.entry_terms["fr"] = {"variante" + ss};
            bundle.lexicon.add(sibling.labels["fr"], {sibling.labels["en"]});
            bundle.lexicon.add(sibling.entry_terms["fr"][0], {sibling.labels["en"]});
            surfaces[c][s].push_back({sibling.labels["en"], sibling.labels["fr"]});
            surfaces[c][s].push_back({sibling.entry_terms["en"][0], sibling.entry_terms["fr"][0]});
            bundle.ontology.add_concept(sibling);
        }
    }
    bundle.ontology.finalize();

    std::vector<std::string> en_stop, fr_stop;
    for (const char* w : kEnglishStopwords) en_stop.push_back(w);
    for (const char* w : kFrenchStopwords) fr_stop.push_back(w);

    std::mt19937_64 rng(spec.seed);
    const auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    for (int c = 0; c < spec.categories; ++c) {
        const std::string category = "cat" + two_digits(c);
        for (const char* lang_cstr : {"en", "fr"}) {
            const std::string lang = lang_cstr;
            for (int d = 0; d < spec.docs_per_language; ++d) {
                std::vector<int> allowed;
                for (int s = 0; s < spec.siblings_per_category; ++s) {
                    if (!spec.partition_siblings)
                        allowed.push_back(s);
                    else if (d < spec.docs_per_language / 2 ? s % 2 == 0 : s % 2 == 1)
                        allowed.push_back(s);
                }

                std::string body;
                for (int u = 0; u < spec.tokens_per_doc; ++u) {
                    std::string unit;
                    if (u % 4 == 3) {
                        const auto& pool = lang == "en" ? en_stop : fr_stop;
                        unit = pool[pick(pool.size())];
                    } else if (static_cast<int>(pick(100)) < spec.noise_percent) {
                        unit = (lang == "en" ? "filler" : "bruit") +
                               three_digits(static_cast<int>(pick(spec.noise_vocab)));
                    } else {
                        const auto& options = surfaces[c][allowed[pick(allowed.size())]];
                        const Surface& surface = options[pick(options.size())];
                        unit = lang == "en" ? surface.en : surface.fr;
                    }
                    body += (body.empty() ? "" : " ") + unit;
                }

                Document doc;
                doc.id = "c" + two_digits(c) + "-" + lang + "-" + three_digits(d);
                doc.body = body;
                doc.category = category;
                bundle.corpus.documents.push_back(std::move(doc));
            }
        }
    }
    sort_and_check(bundle.corpus);
    return bundle;
}

}  // namespace ontoclass
