#pragma once
/* Planar pairing diagrams between two rows of boundary points: Catalan
 * bases, loop-weighted stacking, and the exact matrix model on tensor
 * powers of a 2-dimensional space. */

#include "repcat/evaluator.hpp"
#include "repcat/exactfield.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace repcat {

// A perfect non-crossing matching between `bottom` points below and `top`
// points above, drawn in a rectangle.  Boundary points are indexed
// counterclockwise (bottom row left to right, then top row right to left),
// so planarity is exactly the balanced-bracket condition in that circular
// order.  pair_with is an involution without fixed points on those indices.
struct PlanarDiagram {
    int bottom = 0;
    int top = 0;
    std::vector<int> pair_with;

    // Point names are "b1".."bk" left to right below and "t1".."tl" left to
    // right above; every point must appear in exactly one pair.  Throws
    // invalid_argument on bad names, repeats, omissions, or crossings.
    static PlanarDiagram from_pairs(
        int bottom, int top,
        const std::vector<std::pair<std::string, std::string>>& pairs);
    static PlanarDiagram identity(int k);
    static PlanarDiagram cup();  // no bottom points, one arc joining two top points
    static PlanarDiagram cap();  // one arc joining two bottom points, no top points

    // Swap the two boundary rows (reflect across a horizontal axis).
    PlanarDiagram mirrored() const;

    bool operator==(const PlanarDiagram& o) const = default;
    bool operator<(const PlanarDiagram& o) const;

    // Pair list in reading order; a straight strand bi-ti prints as "(i)",
    // anything else with named endpoints, e.g. "(b1 b2)(t1 t2)".
    std::string str() const;
};

// A finite linear combination of planar diagrams sharing one boundary shape
// and one loop value delta.  Coefficients and delta live in a common
// cyclotomic field; mixed-conductor inputs are lifted on combination.
struct TLMorphism {
    int bottom = 0;
    int top = 0;
    Scalar delta;
    std::map<PlanarDiagram, Scalar> terms;

    static TLMorphism of(const PlanarDiagram& d, const Scalar& delta);
    static TLMorphism zero(int bottom, int top, const Scalar& delta);

    TLMorphism scaled(const Scalar& s) const;
    TLMorphism operator+(const TLMorphism& o) const;
    TLMorphism operator-(const TLMorphism& o) const;
    bool operator==(const TLMorphism& o) const;
    bool operator!=(const TLMorphism& o) const { return !(*this == o); }
    std::string str() const;
};

// All planar pairings with the given boundary counts, in a deterministic
// order; empty when bottom+top is odd.  |tl_basis(k, k)| is the k-th
// Catalan number.
std::vector<PlanarDiagram> tl_basis(int bottom, int top);

// Inverse of PlanarDiagram::str(): a sequence of arc groups "(i)" (strand
// bi-ti) or "(p q)" with named points, e.g. "(b1 b2)(3)(t1 t2)".  The point
// counts are the largest indices mentioned; every point must be covered.
// "()" is the empty diagram.
PlanarDiagram parse_planar(const std::string& text);

// f stacked above g: glue f's bottom row onto g's top row, trace every
// strand through the seam, and multiply by delta once per closed loop.
TLMorphism tl_compose(const TLMorphism& f, const TLMorphism& g);

// f placed to the left of g.
TLMorphism tl_tensor(const TLMorphism& f, const TLMorphism& g);

// Cup over cap on columns i, i+1 (1-based) with straight strands elsewhere:
// the multiplicative generators of the width-k endomorphism algebra.
TLMorphism e_generator(int i, int k, const Scalar& delta);

// Exact matrix on tensor powers of a 2-dimensional space with ordered basis
// e1, e2 (first tensor factor most significant): a straight strand copies
// its index, a bottom arc applies the alternating form e1(x)e2 -> 1,
// e2(x)e1 -> -1, and a top arc emits e1(x)e2 - e2(x)e1.  A closed loop then
// evaluates to 2, so this model requires delta == 2.
ExactMatrix tl_to_matrix(const TLMorphism& m);

// Diagrammatic checks of the defining relations of the width-k algebra
// (squares scale by delta, neighbor sandwiches collapse, distant generators
// commute) plus, when delta == 2, the same identities on exact matrices.
RelationReport check_tl_presentation(int k, const Scalar& delta);

}  // namespace repcat
