#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "ontoclass/text.hpp"

namespace ontoclass {

// One thesaurus descriptor. Labels and entry terms are stored in normalized
// surface form (see normalize_surface). parent_ids is derived from tree
// numbers at finalize time: the owners of each tree number with its last
// dotted segment removed.
struct Concept {
    std::string id;
    std::map<std::string, std::string> labels;                    // language -> preferred label
    std::map<std::string, std::vector<std::string>> entry_terms;  // language -> synonyms
    std::vector<std::string> tree_numbers;
    std::vector<std::string> parent_ids;
};

// Immutable once finalized; safe for unrestricted concurrent reads.
class Ontology {
public:
    // Building. add_concept rejects duplicate ids, duplicate tree numbers,
    // missing English labels, and tree numbers deeper than the depth bound.
    // finalize() derives parent links, asserts acyclicity, and builds the
    // per-language label indexes. No queries before finalize.
    explicit Ontology(int depth_bound = kDefaultDepthBound);
    void add_concept(Concept node);
    void finalize();

    static constexpr int kDefaultDepthBound = 11;

    std::size_t size() const { return concepts_.size(); }
    bool empty() const { return concepts_.empty(); }
    int depth_bound() const { return depth_bound_; }

    const Concept* find(const std::string& id) const;
    const Concept& at(const std::string& id) const;  // IntegrityError when unknown
    const std::map<std::string, Concept>& concepts() const { return concepts_; }

    bool has_language(const std::string& language) const;
    std::vector<std::string> languages() const;
    std::size_t max_label_tokens(const std::string& language) const;

    // Ordered candidate concepts for a surface string: preferred-label
    // matches before entry-term matches, then smaller minimum tree depth,
    // then lexicographic id. Empty when unmapped. Throws ConfigError for a
    // language with no indexed labels.
    const std::vector<std::string>& lookup(const std::string& language,
                                           const std::string& surface) const;
    // Same, for an already-normalized token run (no re-normalization).
    const std::vector<std::string>& lookup_joined(const std::string& language,
                                                  const std::string& joined_tokens) const;

    // Direct parents (one level). Throws IntegrityError for an unknown id.
    std::set<std::string> hyperonyms(const std::string& id) const;
    // Direct children (inverse of hyperonyms).
    const std::vector<std::string>& children(const std::string& id) const;

private:
    void check_language(const std::string& language) const;

    int depth_bound_;
    bool finalized_ = false;
    std::map<std::string, Concept> concepts_;
    std::map<std::string, std::string> tree_owner_;  // tree number -> concept id
    // language -> joined normalized surface -> ordered candidate ids
    std::map<std::string, std::map<std::string, std::vector<std::string>>> label_index_;
    std::map<std::string, std::size_t> max_label_tokens_;
    std::map<std::string, std::vector<std::string>> children_;
};

// Observability hook for the streaming loader. descriptor_allocations counts
// every descriptor record the loader keeps alive at once: the single reusable
// parse scratch plus one per retained concept. It is what the streaming-bound
// tests assert on.
struct LoadStats {
    std::size_t records_parsed = 0;
    std::size_t records_retained = 0;
    std::size_t descriptor_allocations = 0;
};

struct LoadOptions {
    std::optional<std::string> filter_prefix;  // plain string prefix on tree numbers
    int depth_bound = Ontology::kDefaultDepthBound;
    LoadStats* stats = nullptr;
};

// Streaming loader for the descriptor-XML subset (DescriptorRecord,
// DescriptorUI, DescriptorName/String per language attribute,
// TreeNumberList/TreeNumber, ConceptList/TermList/Term/String). Unknown
// elements are skipped. One descriptor is parsed at a time into a reused
// scratch record; only descriptors with a tree number matching filter_prefix
// are committed, so peak memory follows the retained size, not the file size.
Ontology load_ontology_xml(std::istream& source, const LoadOptions& options = {});

// Tab-separated loader. One record per line:
//   id <TAB> tree_numbers(comma-sep) <TAB> lang=label(;lang=label...) [<TAB> lang=entry|entry(;...)]
// Lines starting with '#' and blank lines are ignored.
Ontology load_ontology_tabular(std::istream& source, const LoadOptions& options = {});

// Writes the tabular format, records sorted by id (ingest-ontology output).
void save_ontology_tabular(const Ontology& ontology, std::ostream& out);

}  // namespace ontoclass
