#pragma once

#include <string>

#include "dertool/algebra.hpp"
#include "dertool/polyext.hpp"

namespace dertool {

/*
 * Element expression grammar (both backends):
 *
 *   expr    := ['+'|'-'] term (('+'|'-') term)*
 *   term    := factor ('*' factor)*
 *   factor  := primary ('^' uint)?
 *   primary := rational | basis_name | 't' | '(' expr ')'
 *   rational:= digits ('/' digits)?
 *
 * Multiplication is left-associative and never reorders factors, so
 * noncommutative products mean what they say. 't' is the central variable
 * of B[t] and only valid against the polynomial backend. A pure-scalar
 * expression resolves to scalar * 1, which requires a unital algebra.
 */

AlgElem parse_fin_elem(const std::string& text, const AlgebraPtr& alg);
PolyExtElem parse_poly_elem(const std::string& text, const PolyAlgPtr& alg);

// Canonical printed form; reparses to an equal element. Terms are sorted by
// t-degree then basis index, ascending.
std::string print_elem(const AlgElem& a);
std::string print_elem(const PolyExtElem& a);

} // namespace dertool
