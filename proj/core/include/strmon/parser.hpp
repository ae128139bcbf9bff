#ifndef STRMON_PARSER_HPP
#define STRMON_PARSER_HPP

#include <string>

#include "strmon/formula.hpp"

namespace strmon {

/// Parses a specification in the text grammar:
///
///   formula   := term ('||' term)*
///   term      := factor ('&&' factor)*
///   factor    := ('G'|'F') interval factor
///              | '(' formula [ 'U' interval formula ] ')'
///              | atom
///   interval  := '[' int ',' (int|'inf') ']' | '{' int '}' | '>=' int
///   atom      := 'true'
///              | ('sd_out'|'sd_in') '(' region ')' cmp '0'
///              | affine cmp '0'
///   region    := 'box' '(' ('[' num ',' num ']'|'_') {',' ...} ')'
///              | 'ball' '(' num {',' num} ';' num ')'
///              | 'halfspace' '(' num {',' num} ';' num ')'
///              | 'poly' '(' halfspace {',' halfspace} ')'
///              | 'union' '(' region {',' region} ')'
///   affine    := ['-'] affterm {('+'|'-') affterm}
///   affterm   := num ['*' var] | var          with var = x1..xn
///   cmp       := '>' | '>=' | '<' | '<='
///
/// Whitespace-insensitive; '#' starts a line comment. '<'/'<=' atoms are
/// normalized by negating coefficients; strict comparisons are treated as
/// non-strict. Any '!' is rejected (positive normal form).
FormulaPtr parse_spec(const std::string& text, int n);

/// Canonical text form; parse_spec(pretty_print(f), n) reproduces f.
/// Throws UnsupportedError for opaque Lipschitz predicates.
std::string pretty_print(const Formula& f);

}  // namespace strmon

#endif  // STRMON_PARSER_HPP
