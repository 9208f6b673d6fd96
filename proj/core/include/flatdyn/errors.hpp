#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flatdyn {

// Malformed textual input. Position is 1-based; line is 0 when the text
// was not read from a file.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t column, std::size_t line = 0)
        : std::runtime_error(format(what, column, line)), column_(column), line_(line) {}

    std::size_t column() const noexcept { return column_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& what, std::size_t column, std::size_t line) {
        if (line == 0)
            return "column " + std::to_string(column) + ": " + what;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    std::size_t column_;
    std::size_t line_;
};

// Well-formed input outside the mathematical domain of an operation
// (singular matrix, inverse of zero, wrong dimension, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace flatdyn
