#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontoclass {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data. Carries the position where parsing failed:
// byte offset for stream formats, line number for line-oriented ones.
struct ParseError : Error {
    static ParseError at_offset(const std::string& msg, std::size_t byte_offset) {
        ParseError e(msg + " (byte offset " + std::to_string(byte_offset) + ")");
        e.offset = byte_offset;
        return e;
    }
    static ParseError at_line(const std::string& msg, std::size_t line_number) {
        ParseError e(msg + " (line " + std::to_string(line_number) + ")");
        e.line = line_number;
        return e;
    }
    std::size_t offset = 0;
    std::size_t line = 0;

private:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Structurally valid input that violates a data invariant
// (duplicate identifiers, missing mandatory labels, cyclic hierarchy...).
struct IntegrityError : Error {
    using Error::Error;
};

// Inconsistent or unusable configuration (unknown language, missing
// lexicon, invalid hyperparameters, fingerprint mismatch).
struct ConfigError : Error {
    using Error::Error;
};

// Unusable runtime data: unreadable files, unlabeled documents,
// degenerate corpora.
struct DataError : Error {
    using Error::Error;
};

}  // namespace ontoclass
