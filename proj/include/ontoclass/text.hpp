#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ontoclass {

// Ordered sequence of normalized tokens.
using TokenStream = std::vector<std::string>;

// Splits text into normalized tokens. Letters and digits are kept, everything
// else separates. Tokens are case-folded and accent-stripped: ASCII is
// lowercased, Latin-1 and Latin Extended-A letters are mapped to their ASCII
// base letters (e, c, oe, ...), common typographic punctuation (curly quotes,
// dashes, guillemets, NBSP) separates like its ASCII counterpart. Code points
// outside those ranges pass through unchanged. Invalid UTF-8 bytes act as
// separators. Normalization is idempotent: tokenizing a token yields itself.
TokenStream tokenize(std::string_view text);

// Canonical surface form used by label indexes and lexicons:
// tokenize() then join with single spaces.
std::string normalize_surface(std::string_view text);

// Joins tokens[first, first+count) with single spaces.
std::string join_tokens(const TokenStream& tokens, std::size_t first, std::size_t count);

}  // namespace ontoclass
