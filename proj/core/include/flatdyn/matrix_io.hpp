#pragma once

#include "flatdyn/matrix.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flatdyn {

// A file that cannot be opened or read.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Matrix text format: one row per line, entries separated by whitespace, each
 * entry an expression accepted by parse_algnum. Whitespace inside parentheses
 * does not separate entries, so "(1 + sqrt(2))" is a single entry. Lines whose
 * first non-blank character is '#' are comments; blank lines are ignored.
 *
 * Rows must have equal length. ParseError reports the 1-based line and column.
 */
AlgMatrix parse_matrix_text(std::string_view text);
AlgMatrix read_matrix_file(const std::filesystem::path& path);

// Inverse of parse_matrix_text; entries containing spaces are parenthesized.
std::string format_matrix(const AlgMatrix& m);

}  // namespace flatdyn
