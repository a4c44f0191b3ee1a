#pragma once

#include <string>
#include <string_view>

#include "pvforms/forms.hpp"

namespace pvforms {

// Text grammar for coefficient fields and 1-forms:
//
//   rational ::= int ['/' int]            (also accepted parenthesized)
//   atom     ::= rational | 'nR' ['^' int] | 'c_v' ['^' int]
//              | 'p' ['^' int] | 'V' ['^' int]
//   monomial ::= atom ('*' atom)*
//   field    ::= ['-'] monomial (('+'|'-') monomial)*
//   oneform  ::= '0' | [field 'dp'] [('+'|'-') field 'dV']
//
// Rendering is canonical: terms in key order, '^1' omitted, unit
// coefficients omitted, fractional coefficients parenthesized, e.g.
//   (3/2)*nR*p^-1 dp + (5/2)*nR*V^-1 dV

std::string render(const Rational &r);
std::string render(const Monomial &m);
std::string render(const ScalarField &f);
std::string render(const OneForm &f);
std::string render(const Potential &g);

// Throw ParseError (with 1-based column in the `line` slot) on bad input.
ScalarField parse_scalar_field(std::string_view text);
OneForm parse_one_form(std::string_view text);

} // namespace pvforms
