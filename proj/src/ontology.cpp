#include "ontoclass/ontology.hpp"

#include <algorithm>
#include <cassert>

#include "ontoclass/errors.hpp"

namespace ontoclass {
namespace {

std::size_t tree_depth(const std::string& tree_number) {
    return static_cast<std::size_t>(std::count(tree_number.begin(), tree_number.end(), '.')) + 1;
}

std::string tree_parent(const std::string& tree_number) {
    auto dot = tree_number.rfind('.');
    return dot == std::string::npos ? std::string() : tree_number.substr(0, dot);
}

std::size_t count_tokens(const std::string& joined) {
    if (joined.empty()) return 0;
    return static_cast<std::size_t>(std::count(joined.begin(), joined.end(), ' ')) + 1;
}

}  // namespace

Ontology::Ontology(int depth_bound) : depth_bound_(depth_bound) {
    if (depth_bound < 1) throw ConfigError("ontology depth bound must be >= 1");
}

void Ontology::add_concept(Concept node) {
    if (finalized_) throw IntegrityError("cannot add concepts to a finalized ontology");
    if (node.id.empty()) throw IntegrityError("descriptor with empty id");
    auto en = node.labels.find("en");
    if (en == node.labels.end() || en->second.empty())
        throw IntegrityError("descriptor '" + node.id + "' has no English preferred label");
    if (concepts_.count(node.id))
        throw IntegrityError("duplicate descriptor id '" + node.id + "'");
    for (const auto& tree : node.tree_numbers) {
        if (tree.empty()) throw IntegrityError("descriptor '" + node.id + "' has an empty tree number");
        if (tree_depth(tree) > static_cast<std::size_t>(depth_bound_))
            throw IntegrityError("tree number '" + tree + "' exceeds depth bound " +
                                 std::to_string(depth_bound_));
        auto [it, inserted] = tree_owner_.emplace(tree, node.id);
        if (!inserted)
            throw IntegrityError("tree number '" + tree + "' owned by both '" + it->second +
                                 "' and '" + node.id + "'");
    }
    node.parent_ids.clear();
    concepts_.emplace(node.id, std::move(node));
}

void Ontology::finalize() {
    if (finalized_) return;

    for (auto& [id, node] : concepts_) {
        std::set<std::string> parents;
        for (const auto& tree : node.tree_numbers) {
            std::string prefix = tree_parent(tree);
            if (prefix.empty()) continue;  // root tree number
            auto owner = tree_owner_.find(prefix);
            // Owners outside a filtered load are pruned: the hierarchy stays
            // closed under hyperonyms().
            if (owner != tree_owner_.end()) parents.insert(owner->second);
        }
        node.parent_ids.assign(parents.begin(), parents.end());
        for (const auto& parent : node.parent_ids) children_[parent].push_back(id);
    }
    for (auto& [id, kids] : children_) std::sort(kids.begin(), kids.end());

    // Tree-prefix construction cannot produce a cycle; assert it anyway with
    // a colored DFS over parent edges.
    {
        enum class Color { White, Gray, Black };
        std::map<std::string, Color> color;
        for (const auto& [id, node] : concepts_) color[id] = Color::White;
        std::vector<std::pair<const std::string*, std::size_t>> stack;
        for (const auto& [id, node] : concepts_) {
            if (color[id] != Color::White) continue;
            stack.push_back({&id, 0});
            color[id] = Color::Gray;
            while (!stack.empty()) {
                auto& [node, next_edge] = stack.back();
                const auto& parents = concepts_.at(*node).parent_ids;
                if (next_edge >= parents.size()) {
                    color[*node] = Color::Black;
                    stack.pop_back();
                    continue;
                }
                const std::string& parent = parents[next_edge++];
                Color c = color[parent];
                if (c == Color::Gray)
                    throw IntegrityError("hyperonym cycle through '" + parent + "'");
                if (c == Color::White) {
                    color[parent] = Color::Gray;
                    stack.push_back({&parent, 0});
                }
            }
        }
    }

    // Label index. A surface names a concept once; the preferred-label role
    // wins when it is also an entry term.
    struct Candidate {
        bool entry_term;
        std::size_t min_depth;
        std::string id;
    };
    std::map<std::string, std::map<std::string, std::vector<Candidate>>> building;
    for (const auto& [id, node] : concepts_) {
        std::size_t min_depth = static_cast<std::size_t>(-1);
        for (const auto& tree : node.tree_numbers) min_depth = std::min(min_depth, tree_depth(tree));
        for (const auto& [lang, label] : node.labels) {
            if (label.empty()) continue;
            building[lang][label].push_back({false, min_depth, id});
            max_label_tokens_[lang] = std::max(max_label_tokens_[lang], count_tokens(label));
        }
        for (const auto& [lang, entries] : node.entry_terms) {
            for (const auto& entry : entries) {
                if (entry.empty()) continue;
                building[lang][entry].push_back({true, min_depth, id});
                max_label_tokens_[lang] = std::max(max_label_tokens_[lang], count_tokens(entry));
            }
        }
    }
    for (auto& [lang, surfaces] : building) {
        auto& index = label_index_[lang];
        for (auto& [surface, candidates] : surfaces) {
            std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
                if (a.entry_term != b.entry_term) return !a.entry_term;
                if (a.min_depth != b.min_depth) return a.min_depth < b.min_depth;
                return a.id < b.id;
            });
            std::vector<std::string> ids;
            for (const auto& c : candidates)
                if (std::find(ids.begin(), ids.end(), c.id) == ids.end()) ids.push_back(c.id);
            index.emplace(surface, std::move(ids));
        }
    }

    finalized_ = true;
}

const Concept* Ontology::find(const std::string& id) const {
    auto it = concepts_.find(id);
    return it == concepts_.end() ? nullptr : &it->second;
}

const Concept& Ontology::at(const std::string& id) const {
    const Concept* c = find(id);
    if (!c) throw IntegrityError("unknown concept id '" + id + "'");
    return *c;
}

bool Ontology::has_language(const std::string& language) const {
    return label_index_.count(language) != 0;
}

std::vector<std::string> Ontology::languages() const {
    std::vector<std::string> out;
    for (const auto& [lang, index] : label_index_) out.push_back(lang);
    return out;
}

std::size_t Ontology::max_label_tokens(const std::string& language) const {
    auto it = max_label_tokens_.find(language);
    return it == max_label_tokens_.end() ? 0 : it->second;
}

void Ontology::check_language(const std::string& language) const {
    if (has_language(language)) return;
    std::string known;
    for (const auto& lang : languages()) known += (known.empty() ? "" : ", ") + lang;
    throw ConfigError("language '" + language + "' is not indexed in the ontology (available: " +
                      (known.empty() ? "none" : known) + ")");
}

const std::vector<std::string>& Ontology::lookup(const std::string& language,
                                                 const std::string& surface) const {
    return lookup_joined(language, normalize_surface(surface));
}

const std::vector<std::string>& Ontology::lookup_joined(const std::string& language,
                                                        const std::string& joined_tokens) const {
    static const std::vector<std::string> kEmpty;
    check_language(language);
    const auto& index = label_index_.at(language);
    auto it = index.find(joined_tokens);
    return it == index.end() ? kEmpty : it->second;
}

std::set<std::string> Ontology::hyperonyms(const std::string& id) const {
    const Concept& node = at(id);
    return {node.parent_ids.begin(), node.parent_ids.end()};
}

const std::vector<std::string>& Ontology::children(const std::string& id) const {
    static const std::vector<std::string> kEmpty;
    at(id);  // existence check
    auto it = children_.find(id);
    return it == children_.end() ? kEmpty : it->second;
}

namespace {

bool matches_prefix(const std::vector<std::string>& tree_numbers,
                    const std::optional<std::string>& prefix) {
    if (!prefix) return true;
    for (const auto& tree : tree_numbers)
        if (tree.rfind(*prefix, 0) == 0) return true;
    return false;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Ontology load_ontology_tabular(std::istream& source, const LoadOptions& options) {
    Ontology ontology(options.depth_bound);
    LoadStats local_stats;
    LoadStats& stats = options.stats ? *options.stats : local_stats;
    stats = LoadStats{};
    stats.descriptor_allocations = 1;  // the scratch record

    Concept scratch;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(source, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        auto columns = split(line, '\t');
        if (columns.size() < 3 || columns.size() > 4)
            throw ParseError::at_line("expected 3 or 4 tab-separated columns, got " +
                                          std::to_string(columns.size()),
                                      line_number);
        ++stats.records_parsed;
        scratch = Concept{};
        scratch.id = trim(columns[0]);
        for (const auto& tree : split(columns[1], ',')) {
            std::string t = trim(tree);
            if (!t.empty()) scratch.tree_numbers.push_back(t);
        }
        for (const auto& part : split(columns[2], ';')) {
            if (trim(part).empty()) continue;
            auto eq = part.find('=');
            if (eq == std::string::npos)
                throw ParseError::at_line("label column entry '" + part + "' is not lang=label",
                                          line_number);
            std::string lang = trim(part.substr(0, eq));
            std::string label = normalize_surface(part.substr(eq + 1));
            if (lang.empty())
                throw ParseError::at_line("empty language code in label column", line_number);
            scratch.labels[lang] = label;
        }
        if (columns.size() == 4) {
            for (const auto& part : split(columns[3], ';')) {
                if (trim(part).empty()) continue;
                auto eq = part.find('=');
                if (eq == std::string::npos)
                    throw ParseError::at_line("entry column entry '" + part + "' is not lang=terms",
                                              line_number);
                std::string lang = trim(part.substr(0, eq));
                if (lang.empty())
                    throw ParseError::at_line("empty language code in entry column", line_number);
                for (const auto& entry : split(part.substr(eq + 1), '|')) {
                    std::string normalized = normalize_surface(entry);
                    if (!normalized.empty()) scratch.entry_terms[lang].push_back(normalized);
                }
            }
        }
        if (!matches_prefix(scratch.tree_numbers, options.filter_prefix)) continue;
        ++stats.records_retained;
        ++stats.descriptor_allocations;
        ontology.add_concept(scratch);
    }
    ontology.finalize();
    return ontology;
}

void save_ontology_tabular(const Ontology& ontology, std::ostream& out) {
    out << "# id\ttree_numbers\tlang=label;...\tlang=entry|entry;...\n";
    for (const auto& [id, node] : ontology.concepts()) {
        out << id << '\t';
        for (std::size_t i = 0; i < node.tree_numbers.size(); ++i)
            out << (i ? "," : "") << node.tree_numbers[i];
        out << '\t';
        bool first = true;
        for (const auto& [lang, label] : node.labels) {
            out << (first ? "" : ";") << lang << '=' << label;
            first = false;
        }
        out << '\t';
        first = true;
        for (const auto& [lang, entries] : node.entry_terms) {
            if (entries.empty()) continue;
            out << (first ? "" : ";") << lang << '=';
            for (std::size_t i = 0; i < entries.size(); ++i) out << (i ? "|" : "") << entries[i];
            first = false;
        }
        out << '\n';
    }
}

}  // namespace ontoclass
