// Streaming loader for the descriptor-XML subset. A hand-rolled pull scanner
// keeps a constant-size read buffer and the loader keeps one scratch record;
// nothing else scales with file size.

#include <algorithm>
#include <array>
#include <istream>
#include <string>
#include <vector>

#include "ontoclass/errors.hpp"
#include "ontoclass/ontology.hpp"
#include "ontoclass/text.hpp"

namespace ontoclass {
namespace {

constexpr int kEof = -1;

class XmlScanner {
public:
    explicit XmlScanner(std::istream& in) : in_(in) {}

    enum class Event { StartElement, EndElement, Text, Eof };

    struct Attribute {
        std::string name;
        std::string value;
    };

    // Fields of the current event.
    std::string name;                   // element name
    std::vector<Attribute> attributes;  // StartElement only
    std::string text;                   // Text only
    bool self_closing = false;          // StartElement only

    std::size_t offset() const { return offset_; }

    Event next() {
        if (pending_end_) {
            pending_end_ = false;
            return Event::EndElement;  // second half of <name/>
        }
        text.clear();
        // Text run until the next markup. Markup that turns out to be a
        // comment/PI/CDATA folds into the same run.
        while (true) {
            int c = peek();
            if (c == kEof) {
                if (!text.empty()) return Event::Text;
                return Event::Eof;
            }
            if (c != '<') {
                read_text_run();
                continue;
            }
            // peeked '<': decide what kind of markup
            get();
            int c2 = peek();
            if (c2 == '?') {
                skip_processing_instruction();
                continue;
            }
            if (c2 == '!') {
                get();
                if (!handle_bang()) continue;  // comment or DOCTYPE consumed
                continue;                      // CDATA appended to text
            }
            if (!text.empty()) {
                replay_open_ = true;
                return Event::Text;
            }
            if (c2 == '/') {
                get();
                read_end_tag();
                return Event::EndElement;
            }
            read_start_tag();
            if (self_closing) pending_end_ = true;
            return Event::StartElement;
        }
    }

private:
    int get() {
        if (replay_open_) {
            replay_open_ = false;
            return '<';
        }
        int c = in_.get();
        if (c != kEof) ++offset_;
        return c;
    }

    int peek() {
        if (replay_open_) return '<';
        return in_.peek();
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError::at_offset(msg, offset_); }

    static bool is_name_start(int c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == ':';
    }
    static bool is_name_char(int c) {
        return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
    }
    static bool is_space(int c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

    void skip_space() {
        while (is_space(peek())) get();
    }

    std::string read_name() {
        int c = peek();
        if (!is_name_start(c)) fail("expected a name");
        std::string out;
        while (is_name_char(peek())) out += static_cast<char>(get());
        return out;
    }

    void expect(char wanted) {
        int c = get();
        if (c != wanted)
            fail(std::string("expected '") + wanted + "', got " +
                 (c == kEof ? std::string("end of input") : "'" + std::string(1, char(c)) + "'"));
    }

    void decode_entity(std::string& out) {
        // '&' already consumed
        std::string entity;
        while (true) {
            int c = get();
            if (c == kEof) fail("unterminated entity reference");
            if (c == ';') break;
            entity += static_cast<char>(c);
            if (entity.size() > 10) fail("entity reference too long");
        }
        if (entity == "amp") out += '&';
        else if (entity == "lt") out += '<';
        else if (entity == "gt") out += '>';
        else if (entity == "apos") out += '\'';
        else if (entity == "quot") out += '"';
        else if (!entity.empty() && entity[0] == '#') {
            uint32_t cp = 0;
            bool ok = entity.size() > 1;
            if (entity.size() > 2 && (entity[1] == 'x' || entity[1] == 'X')) {
                for (std::size_t i = 2; i < entity.size() && ok; ++i) {
                    char h = entity[i];
                    int digit = h >= '0' && h <= '9'   ? h - '0'
                                : h >= 'a' && h <= 'f' ? h - 'a' + 10
                                : h >= 'A' && h <= 'F' ? h - 'A' + 10
                                                       : -1;
                    ok = digit >= 0;
                    cp = cp * 16 + static_cast<uint32_t>(digit);
                }
            } else {
                for (std::size_t i = 1; i < entity.size() && ok; ++i) {
                    ok = entity[i] >= '0' && entity[i] <= '9';
                    cp = cp * 10 + static_cast<uint32_t>(entity[i] - '0');
                }
            }
            if (!ok || cp > 0x10FFFF) fail("bad character reference '&" + entity + ";'");
            append_codepoint(out, cp);
        } else {
            fail("unknown entity '&" + entity + ";'");
        }
    }

    static void append_codepoint(std::string& out, uint32_t cp) {
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    void read_text_run() {
        while (true) {
            int c = peek();
            if (c == kEof || c == '<') return;
            get();
            if (c == '&')
                decode_entity(text);
            else
                text += static_cast<char>(c);
        }
    }

    void skip_processing_instruction() {
        // "<?" seen, '?' still unread
        get();
        int prev = 0;
        while (true) {
            int c = get();
            if (c == kEof) fail("unterminated processing instruction");
            if (prev == '?' && c == '>') return;
            prev = c;
        }
    }

    // Handles "<!" constructs. Returns true when CDATA text was appended.
    bool handle_bang() {
        int c = peek();
        if (c == '-') {
            get();
            expect('-');
            int dashes = 0;
            while (true) {
                int ch = get();
                if (ch == kEof) fail("unterminated comment");
                if (ch == '-') {
                    ++dashes;
                } else if (ch == '>' && dashes >= 2) {
                    return false;
                } else {
                    dashes = 0;
                }
            }
        }
        if (c == '[') {
            static const char* kCdata = "[CDATA[";
            for (const char* p = kCdata; *p; ++p)
                if (get() != *p) fail("malformed CDATA section");
            std::string body;
            while (true) {
                int ch = get();
                if (ch == kEof) fail("unterminated CDATA section");
                body += static_cast<char>(ch);
                if (body.size() >= 3 && body.compare(body.size() - 3, 3, "]]>") == 0) {
                    body.resize(body.size() - 3);
                    text += body;
                    return true;
                }
            }
        }
        // DOCTYPE or other declaration: skip to matching '>' (no internal
        // subset support beyond bracket counting).
        int depth = 1;
        while (depth > 0) {
            int ch = get();
            if (ch == kEof) fail("unterminated markup declaration");
            if (ch == '<') ++depth;
            if (ch == '>') --depth;
        }
        return false;
    }

    void read_start_tag() {
        name = read_name();
        attributes.clear();
        self_closing = false;
        while (true) {
            skip_space();
            int c = peek();
            if (c == kEof) fail("unterminated start tag '" + name + "'");
            if (c == '>') {
                get();
                return;
            }
            if (c == '/') {
                get();
                expect('>');
                self_closing = true;
                return;
            }
            Attribute attr;
            attr.name = read_name();
            skip_space();
            expect('=');
            skip_space();
            int quote = get();
            if (quote != '"' && quote != '\'') fail("attribute value must be quoted");
            while (true) {
                int ch = get();
                if (ch == kEof) fail("unterminated attribute value");
                if (ch == quote) break;
                if (ch == '&')
                    decode_entity(attr.value);
                else
                    attr.value += static_cast<char>(ch);
            }
            attributes.push_back(std::move(attr));
        }
    }

    void read_end_tag() {
        name = read_name();
        skip_space();
        expect('>');
    }

    std::istream& in_;
    std::size_t offset_ = 0;
    bool pending_end_ = false;
    bool replay_open_ = false;
};

std::string trim_copy(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool matches_prefix(const std::vector<std::string>& tree_numbers, const std::string& prefix) {
    for (const auto& tree : tree_numbers)
        if (tree.rfind(prefix, 0) == 0) return true;
    return false;
}

}  // namespace

Ontology load_ontology_xml(std::istream& source, const LoadOptions& options) {
    Ontology ontology(options.depth_bound);
    LoadStats local_stats;
    LoadStats& stats = options.stats ? *options.stats : local_stats;
    stats = LoadStats{};
    stats.descriptor_allocations = 1;  // the scratch record below

    XmlScanner scanner(source);
    std::vector<std::string> stack;

    Concept scratch;
    bool in_record = false;
    std::string capture;     // accumulated text of the element being captured
    std::string capture_language;
    enum class Capture { None, Ui, Label, Tree, Entry } capturing = Capture::None;

    const auto parent_is = [&](std::size_t levels_up, const char* wanted) {
        return stack.size() >= levels_up && stack[stack.size() - levels_up] == wanted;
    };
    const auto stack_contains = [&](const char* wanted) {
        return std::find(stack.begin(), stack.end(), wanted) != stack.end();
    };

    while (true) {
        XmlScanner::Event event = scanner.next();
        if (event == XmlScanner::Event::Eof) break;

        if (event == XmlScanner::Event::Text) {
            if (capturing != Capture::None) capture += scanner.text;
            continue;
        }

        if (event == XmlScanner::Event::StartElement) {
            stack.push_back(scanner.name);
            const std::string& el = scanner.name;
            if (el == "DescriptorRecord") {
                if (in_record)
                    throw ParseError::at_offset("nested DescriptorRecord", scanner.offset());
                in_record = true;
                scratch = Concept{};
                ++stats.records_parsed;
            } else if (in_record && capturing == Capture::None) {
                if (el == "DescriptorUI" && parent_is(2, "DescriptorRecord")) {
                    capturing = Capture::Ui;
                } else if (el == "String" && parent_is(2, "DescriptorName") &&
                           parent_is(3, "DescriptorRecord")) {
                    capturing = Capture::Label;
                } else if (el == "TreeNumber" && parent_is(2, "TreeNumberList") &&
                           parent_is(3, "DescriptorRecord")) {
                    capturing = Capture::Tree;
                } else if (el == "String" && parent_is(2, "Term") && parent_is(3, "TermList") &&
                           stack_contains("ConceptList")) {
                    capturing = Capture::Entry;
                }
                if (capturing == Capture::Label || capturing == Capture::Entry) {
                    capture_language = "en";
                    for (const auto& attr : scanner.attributes)
                        if (attr.name == "language") capture_language = attr.value;
                }
                capture.clear();
            }
            continue;
        }

        // EndElement
        if (stack.empty() || stack.back() != scanner.name)
            throw ParseError::at_offset("mismatched closing tag '</" + scanner.name + ">'",
                                        scanner.offset());

        switch (capturing) {
            case Capture::Ui:
                if (scanner.name == "DescriptorUI") {
                    scratch.id = trim_copy(capture);
                    capturing = Capture::None;
                }
                break;
            case Capture::Label:
                if (scanner.name == "String") {
                    scratch.labels[capture_language] = normalize_surface(capture);
                    capturing = Capture::None;
                }
                break;
            case Capture::Tree:
                if (scanner.name == "TreeNumber") {
                    std::string tree = trim_copy(capture);
                    if (!tree.empty()) scratch.tree_numbers.push_back(tree);
                    capturing = Capture::None;
                }
                break;
            case Capture::Entry:
                if (scanner.name == "String") {
                    std::string entry = normalize_surface(capture);
                    if (!entry.empty()) scratch.entry_terms[capture_language].push_back(entry);
                    capturing = Capture::None;
                }
                break;
            case Capture::None:
                break;
        }

        if (scanner.name == "DescriptorRecord" && in_record) {
            in_record = false;
            if (scratch.id.empty())
                throw IntegrityError("DescriptorRecord without DescriptorUI near byte " +
                                     std::to_string(scanner.offset()));
            if (!scratch.labels.count("en") || scratch.labels.at("en").empty())
                throw IntegrityError("descriptor '" + scratch.id +
                                     "' has no English preferred label");
            if (!options.filter_prefix || matches_prefix(scratch.tree_numbers, *options.filter_prefix)) {
                ++stats.records_retained;
                ++stats.descriptor_allocations;
                ontology.add_concept(scratch);
            }
        }
        stack.pop_back();
    }

    if (!stack.empty())
        throw ParseError::at_offset("unexpected end of input inside <" + stack.back() + ">",
                                    scanner.offset());
    ontology.finalize();
    return ontology;
}

}  // namespace ontoclass
