#include "ontoclass/text.hpp"

#include <cstdint>

namespace ontoclass {
namespace {

// Decodes one UTF-8 code point starting at text[pos]. Advances pos past the
// sequence. Returns 0xFFFFFFFF for invalid bytes (pos advances by one).
uint32_t decode_utf8(std::string_view text, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
    unsigned char b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len = 0;
    uint32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++pos;
        return 0xFFFFFFFF;
    }
    if (pos + len > text.size()) {
        ++pos;
        return 0xFFFFFFFF;
    }
    for (int i = 1; i < len; ++i) {
        unsigned char b = byte(pos + i);
        if ((b & 0xC0) != 0x80) {
            ++pos;
            return 0xFFFFFFFF;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    pos += len;
    return cp;
}

void append_utf8(std::string& out, uint32_t cp) {
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

// ASCII base form of a Latin-1 Supplement letter, or nullptr when the code
// point is not a letter there.
const char* fold_latin1(uint32_t cp) {
    switch (cp) {
        case 0xC0: case 0xC1: case 0xC2: case 0xC3: case 0xC4: case 0xC5:
        case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5:
            return "a";
        case 0xC6: case 0xE6: return "ae";
        case 0xC7: case 0xE7: return "c";
        case 0xC8: case 0xC9: case 0xCA: case 0xCB:
        case 0xE8: case 0xE9: case 0xEA: case 0xEB:
            return "e";
        case 0xCC: case 0xCD: case 0xCE: case 0xCF:
        case 0xEC: case 0xED: case 0xEE: case 0xEF:
            return "i";
        case 0xD0: case 0xF0: return "d";
        case 0xD1: case 0xF1: return "n";
        case 0xD2: case 0xD3: case 0xD4: case 0xD5: case 0xD6: case 0xD8:
        case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8:
            return "o";
        case 0xD9: case 0xDA: case 0xDB: case 0xDC:
        case 0xF9: case 0xFA: case 0xFB: case 0xFC:
            return "u";
        case 0xDD: case 0xFD: case 0xFF: return "y";
        case 0xDE: case 0xFE: return "th";
        case 0xDF: return "ss";
        default: return nullptr;
    }
}

// ASCII base form of a Latin Extended-A letter (U+0100..U+017F).
const char* fold_latin_ext_a(uint32_t cp) {
    if (cp >= 0x100 && cp <= 0x105) return "a";
    if (cp >= 0x106 && cp <= 0x10D) return "c";
    if (cp >= 0x10E && cp <= 0x111) return "d";
    if (cp >= 0x112 && cp <= 0x11B) return "e";
    if (cp >= 0x11C && cp <= 0x123) return "g";
    if (cp >= 0x124 && cp <= 0x127) return "h";
    if (cp >= 0x128 && cp <= 0x131) return "i";
    if (cp == 0x132 || cp == 0x133) return "ij";
    if (cp == 0x134 || cp == 0x135) return "j";
    if (cp >= 0x136 && cp <= 0x138) return "k";
    if (cp >= 0x139 && cp <= 0x142) return "l";
    if (cp >= 0x143 && cp <= 0x14B) return "n";
    if (cp >= 0x14C && cp <= 0x151) return "o";
    if (cp == 0x152 || cp == 0x153) return "oe";
    if (cp >= 0x154 && cp <= 0x159) return "r";
    if (cp >= 0x15A && cp <= 0x161) return "s";
    if (cp >= 0x162 && cp <= 0x167) return "t";
    if (cp >= 0x168 && cp <= 0x173) return "u";
    if (cp == 0x174 || cp == 0x175) return "w";
    if (cp >= 0x176 && cp <= 0x178) return "y";
    if (cp >= 0x179 && cp <= 0x17E) return "z";
    if (cp == 0x17F) return "s";
    return nullptr;
}

bool is_extra_separator(uint32_t cp) {
    if (cp == 0xA0 || cp == 0xAB || cp == 0xBB || cp == 0xB7) return true;  // NBSP « » ·
    if (cp == 0xD7 || cp == 0xF7) return true;                              // × ÷
    if (cp >= 0x2000 && cp <= 0x206F) return true;  // general punctuation block
    return false;
}

}  // namespace

TokenStream tokenize(std::string_view text) {
    TokenStream tokens;
    std::string current;
    const auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        uint32_t cp = decode_utf8(text, pos);
        if (cp < 0x80) {
            if ((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z')) {
                current += static_cast<char>(cp);
            } else if (cp >= 'A' && cp <= 'Z') {
                current += static_cast<char>(cp - 'A' + 'a');
            } else {
                flush();
            }
            continue;
        }
        if (cp == 0xFFFFFFFF || is_extra_separator(cp)) {
            flush();
            continue;
        }
        if (const char* base = cp <= 0xFF     ? fold_latin1(cp)
                               : cp <= 0x17F ? fold_latin_ext_a(cp)
                                             : nullptr) {
            current += base;
            continue;
        }
        if (cp <= 0x17F) {
            flush();  // non-letter Latin-1 punctuation or symbol
            continue;
        }
        append_utf8(current, cp);  // unknown script, keep verbatim
    }
    flush();
    return tokens;
}

std::string normalize_surface(std::string_view text) {
    TokenStream tokens = tokenize(text);
    return join_tokens(tokens, 0, tokens.size());
}

std::string join_tokens(const TokenStream& tokens, std::size_t first, std::size_t count) {
    std::string out;
    for (std::size_t i = first; i < first + count && i < tokens.size(); ++i) {
        if (!out.empty()) out += ' ';
        out += tokens[i];
    }
    return out;
}

}  // namespace ontoclass
