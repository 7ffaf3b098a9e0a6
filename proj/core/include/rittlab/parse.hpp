#pragma once

/**
 * @file parse.hpp
 * @brief Expression parser and canonical printer for rational maps.
 *
 * Grammar (whitespace insignificant):
 *   expr     := term (('+' | '-') term)*
 *   term     := factor (('*' | '/') factor)*
 *   factor   := atom ('^' uint)? ('@' factor)?
 *   atom     := 'z' | 'i' | rational | '(' expr ')'
 *   rational := int ('/' uint)?
 *
 * '@' is composition and binds tighter than '*'; '^' is the pointwise
 * power. There is no unary minus, but an integer literal carries an
 * optional sign wherever an atom begins, so the printer writes leading
 * negative terms as "-1*z^2" or "-3/2*z".
 */

#include <stdexcept>
#include <string>
#include <vector>

#include "rittlab/ratmap.hpp"

namespace rittlab {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Parses one expression into a reduced canonical map. Throws ParseError on
// malformed input, std::domain_error on division by the zero map, and
// BudgetExceeded when '^' or '@' would exceed the degree budget.
RatMap parse_ratmap(const std::string& text, long degree_budget = degree_budget_default());

// Comma-separated list of expressions, outermost factor first.
std::vector<RatMap> parse_chain(const std::string& text,
                                long degree_budget = degree_budget_default());

// Expanded canonical form: a polynomial in descending powers when the
// denominator is constant, otherwise "(num)/(den)". Round-trips:
// parse_ratmap(print_ratmap(r)) == r.
std::string print_ratmap(const RatMap& r);

// Polynomial in descending powers, e.g. "z^2-3/2*z+(1/2+3*i)".
std::string print_poly(const Poly& p);

// Factors joined by " @ ", each parenthesized unless it is already a valid
// composition operand.
std::string print_chain(const std::vector<RatMap>& chain);

} // namespace rittlab
