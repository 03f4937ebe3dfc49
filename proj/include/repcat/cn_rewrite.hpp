#pragma once
/* Rewriting engine for the cyclic-residue diagram category: normalization to
 * the merge-then-split canonical funnel and the congruence hom dimension. */

#include "repcat/diagram.hpp"

namespace repcat {

// 1 iff the residue sums of the two words agree mod n (the empty word sums
// to 0), else 0.  Labels must be canonical residues mod n.
int hom_dim_cn(const ObjectWord& source, const ObjectWord& target, int n);

// The canonical shape of the one morphism between congruent words: strip the
// longest common suffix (kept as identity strands), then funnel what remains
// with left-nested merges down to a single strand followed by left-nested
// splits peeling the target right to left.  When stripping would empty one
// side, one letter pair stays in the funnel so a waist always exists; fully
// equal words give the pure identity.
Diagram canonical_funnel_cn(const ObjectWord& source, const ObjectWord& target,
                            int n);

// Rewrite a diagram to canonical_funnel_cn of its boundary using relation
// instances only: bubble pops, waist cancels, zig-zag slides, reassociation
// of merge and split combs, interchange of disjoint cells, and reverse-bubble
// insertion to join side-by-side components.  The seed shuffles the order of
// the initial reduction phase; every seed reaches the same canonical form.
// Throws runtime_error with a diagnostic if the step budget runs out.
Diagram normalize_cn(const Diagram& d, int n, unsigned long seed = 0,
                     int budget = 10000);

// Termwise diagram normalization; coefficients of terms that rewrite to the
// same canonical diagram pool together (so the result is zero or a single
// canonical funnel with one coefficient).
Morphism normalize_cn(const Morphism& m, int n, unsigned long seed = 0,
                      int budget = 10000);

}  // namespace repcat
