#pragma once

#include <string>

#include "dspec/diffop.hpp"

namespace dspec {

// Parses an operator expression in the symbols D and S.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ['^' exponent]
//   atom   := 'D' | 'S' | integer | 'O' '(' 'S' ['^' exponent] ')' | '(' expr ')'
//   exponent := integer | '(' ['-'] integer ['/' integer] ')'
//
// Division requires an invertible series divisor (no D); general series
// inverses are expanded to `steps` terms, monomial inverses stay exact.
// Fractional powers apply to exact monomials only; a fractional power of D is
// an error. O(S^q) denotes a series known to vanish below exponent q.
DiffOp parse_operator(const std::string& text,
                      long long steps = Series::kDefaultSteps);

// Same grammar, restricted to order-zero results.
Series parse_series(const std::string& text,
                    long long steps = Series::kDefaultSteps);

// Canonical text: leading-term-first sum of c*S^q terms plus an O(S^q) tail.
std::string series_text(const Series& f);

// Canonical text: sum of g_i(S)*D^i with i ascending; parse_operator returns
// an equal operator on this output.
std::string print_operator(const DiffOp& p);

// Matrix document {"n": int, "ram": int, "entries": [[expr, ...], ...]} with
// series expressions as entries; column j of the matrix gives the connection
// applied to the j-th basis vector. Entries are lifted to the declared grid.
SeriesMat parse_matrix_json(const std::string& text,
                            long long steps = Series::kDefaultSteps);
std::string print_matrix_json(const SeriesMat& g);

} // namespace dspec
