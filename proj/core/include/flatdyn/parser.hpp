#pragma once

#include "flatdyn/algnum.hpp"

#include <string_view>

namespace flatdyn {

/**
 * Parse an exact algebraic-number expression.
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := factor (('*' | '/') factor)*
 *   factor := INT | 'sqrt' '(' INT ')' | '(' expr ')' | '-' factor
 *
 * Whitespace is insignificant. Throws ParseError carrying the 1-based column
 * of the offending character; sqrt of a negative integer and division by zero
 * are reported the same way.
 */
AlgNum parse_algnum(std::string_view text);

}  // namespace flatdyn
