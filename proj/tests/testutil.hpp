#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ontoclass/corpus.hpp"
#include "ontoclass/ontology.hpp"
#include "ontoclass/preprocess.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("ontoclass-" + tag + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Minimal descriptor-XML emitter for loader fixtures and round-trip checks.
inline std::string descriptor_xml(const ontoclass::Ontology& ontology) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\"?>\n<DescriptorRecordSet>\n";
    for (const auto& [id, node] : ontology.concepts()) {
        out << " <DescriptorRecord>\n  <DescriptorUI>" << id << "</DescriptorUI>\n";
        out << "  <DescriptorName>\n";
        for (const auto& [lang, label] : node.labels)
            out << "   <String language=\"" << lang << "\">" << label << "</String>\n";
        out << "  </DescriptorName>\n";
        if (!node.tree_numbers.empty()) {
            out << "  <TreeNumberList>\n";
            for (const auto& tree : node.tree_numbers)
                out << "   <TreeNumber>" << tree << "</TreeNumber>\n";
            out << "  </TreeNumberList>\n";
        }
        bool any_entries = false;
        for (const auto& [lang, entries] : node.entry_terms) any_entries |= !entries.empty();
        if (any_entries) {
            out << "  <ConceptList>\n   <Concept>\n    <TermList>\n";
            for (const auto& [lang, entries] : node.entry_terms)
                for (const auto& entry : entries)
                    out << "     <Term>\n      <String language=\"" << lang << "\">" << entry
                        << "</String>\n     </Term>\n";
            out << "    </TermList>\n   </Concept>\n  </ConceptList>\n";
        }
        out << " </DescriptorRecord>\n";
    }
    out << "</DescriptorRecordSet>\n";
    return out.str();
}

inline bool same_ontology(const ontoclass::Ontology& a, const ontoclass::Ontology& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [id, ca] : a.concepts()) {
        const ontoclass::Concept* cb = b.find(id);
        if (!cb) return false;
        if (ca.labels != cb->labels || ca.entry_terms != cb->entry_terms ||
            ca.tree_numbers != cb->tree_numbers || ca.parent_ids != cb->parent_ids)
            return false;
    }
    return true;
}

// Tiny two-language ontology used throughout the conceptmap and multilingual
// tests:
//   N  "neoplasms" / fr "tumeurs"            tree C04
//   V  "virus"     / fr "virus maladie"      tree C02.100   (child of C02)
//   R  "infections"                          tree C02       (root)
//   A  preferred "shared term", B entry "shared term"  (ordering fixture)
inline ontoclass::Ontology small_ontology() {
    ontoclass::Ontology onto;
    {
        ontoclass::Concept c;
        c.id = "N";
        c.labels["en"] = "neoplasms";
        c.labels["fr"] = "tumeurs";
        c.tree_numbers = {"C04"};
        onto.add_concept(c);
    }
    {
        ontoclass::Concept c;
        c.id = "V";
        c.labels["en"] = "virus";
        c.labels["fr"] = "virus maladie";
        c.tree_numbers = {"C02.100"};
        onto.add_concept(c);
    }
    {
        ontoclass::Concept c;
        c.id = "R";
        c.labels["en"] = "infections";
        c.labels["fr"] = "infections";
        c.tree_numbers = {"C02"};
        onto.add_concept(c);
    }
    {
        ontoclass::Concept c;
        c.id = "A";
        c.labels["en"] = "shared term";
        c.tree_numbers = {"C09"};
        onto.add_concept(c);
    }
    {
        ontoclass::Concept c;
        c.id = "B";
        c.labels["en"] = "beta concept";
        c.entry_terms["en"] = {"shared term"};
        c.tree_numbers = {"C08"};
        onto.add_concept(c);
    }
    onto.finalize();
    return onto;
}

inline ontoclass::StopwordTable small_stopwords() {
    ontoclass::StopwordTable table;
    for (const char* w : {"the", "of", "a", "and", "is"}) table.add("en", w);
    for (const char* w : {"le", "la", "les", "des", "de", "et"}) table.add("fr", w);
    return table;
}

}  // namespace testutil
