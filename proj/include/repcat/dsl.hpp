#pragma once
/* Text form of diagram morphisms: cells and builders as atoms, '*' for
 * horizontal and ';' for vertical composition, and +/- weighted sums.
 * Printed Morphisms re-parse to equal Morphisms. */

#include "repcat/diagram.hpp"

#include <string>

namespace repcat {

// Grammar (whitespace is free between tokens):
//   morphism := ["-"] scalar? term { ("+"|"-") scalar? term }
//   term     := factor { ";" factor }       the leftmost factor applies first
//   factor   := atom { "*" atom }
//   atom     := "id[" word "]" | "m[" lbl "," lbl "->" lbl "]"
//             | "s[" lbl "->" lbl "," lbl "]" | "u[" path "]" | "d[" path "]"
//             | "funnel[" word "]" | "down[" lbl "]" | "up[" lbl "]"
//             | "(" morphism ")"
//   scalar   := int ["/" int] ["z" ["^" int]] | "z" ["^" int]
// Bracket contents are read verbatim, so labels may contain primes or
// parentheses; they only may not contain '[', ']', ',' or "->".
//
// The category context picks the cell flavor for m/s (residue arithmetic vs
// graph adjacency), the modulus for funnel, and the graph for u/d; z is the
// conductor-th root of unity.  Syntax errors carry line and column, and the
// finished morphism must pass validate() for the context.
Morphism parse_dsl(const std::string& text, const CategoryContext& ctx,
                   int conductor);

}  // namespace repcat
