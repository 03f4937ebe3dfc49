#pragma once
/* Syntax of the diagrammatic categories: object words, generator cells,
 * layered diagrams, and formal linear combinations.  Semantics (evaluation
 * to matrices) lives elsewhere; this unit only knows shapes and boundaries. */

#include "repcat/exactfield.hpp"
#include "repcat/repgraph.hpp"

#include <map>
#include <string>
#include <vector>

namespace repcat {

// The reserved label for the star object of the generalized graph category.
inline const std::string kStarLabel = "*";

struct Cell {
    enum class Kind {
        Id,        // one strand
        MergeCn,   // [a,b] -> [a+b mod n]
        SplitCn,   // [c] -> [a,b], target labels carried explicitly
        MergeG,    // [1,a] -> [b], b adjacent to a in the graph
        SplitG,    // [b] -> [1,a]
        StarDown,  // [*] -> [c], c adjacent to the unit node
        StarUp,    // [c] -> [*]
    };
    Kind kind;
    ObjectWord in, out;

    static Cell id(const std::string& a) { return {Kind::Id, {a}, {a}}; }
    static Cell merge_cn(const std::string& a, const std::string& b,
                         const std::string& c) {
        return {Kind::MergeCn, {a, b}, {c}};
    }
    static Cell split_cn(const std::string& c, const std::string& a,
                         const std::string& b) {
        return {Kind::SplitCn, {c}, {a, b}};
    }
    static Cell merge_g(const std::string& gen, const std::string& a,
                        const std::string& b) {
        return {Kind::MergeG, {gen, a}, {b}};
    }
    static Cell split_g(const std::string& b, const std::string& gen,
                        const std::string& a) {
        return {Kind::SplitG, {b}, {gen, a}};
    }
    static Cell star_down(const std::string& c) {
        return {Kind::StarDown, {kStarLabel}, {c}};
    }
    static Cell star_up(const std::string& c) {
        return {Kind::StarUp, {c}, {kStarLabel}};
    }

    bool is_id() const { return kind == Kind::Id; }
    bool operator==(const Cell& o) const {
        return kind == o.kind && in == o.in && out == o.out;
    }
    bool operator<(const Cell& o) const;
    std::string str() const;
};

// A layered diagram: slices run bottom to top, each slice is a left-to-right
// row of cells whose input word equals the previous boundary word.
struct Diagram {
    ObjectWord source, target;
    std::vector<std::vector<Cell>> slices;

    static Diagram identity(const ObjectWord& w) { return {w, w, {}}; }

    int cell_count() const;  // non-identity cells

    // Canonical repacking: every cell sinks to the earliest slice its inputs
    // allow, empty slices vanish.  Two diagrams are syntactically equal iff
    // their packed forms agree, so slice padding never matters.
    Diagram packed() const;
    bool operator==(const Diagram& o) const;
    bool operator<(const Diagram& o) const;  // total order for term maps

    std::string str() const;
};

Diagram compose_diagrams(const Diagram& f, const Diagram& g);  // f after g
Diagram tensor_diagrams(const Diagram& f, const Diagram& g);

// A finite Scalar-linear combination of diagrams with a common boundary.
struct Morphism {
    ObjectWord source, target;
    std::map<Diagram, Scalar> terms;  // keys packed, coefficients nonzero

    static Morphism zero(const ObjectWord& src, const ObjectWord& tgt,
                         int conductor);
    static Morphism of(const Diagram& d, int conductor);
    static Morphism identity(const ObjectWord& w, int conductor);

    bool is_zero() const { return terms.empty(); }
    int conductor() const { return conductor_; }

    Morphism operator+(const Morphism& o) const;
    Morphism scaled(const Scalar& s) const;
    bool operator==(const Morphism& o) const;

    std::string str() const;

    int conductor_ = 1;
};

Morphism compose(const Morphism& f, const Morphism& g);  // f after g
Morphism tensor(const Morphism& f, const Morphism& g);

// Builders for the path diagrams: u_path folds 1^(x)(k+1) down to the path's
// endpoint with k merges, marching right to left; d_path is its vertical
// mirror.  The length-0 path gives the single identity strand.
Diagram u_path(const Path& p, const RepGraph& g);
Diagram d_path(const Path& p, const RepGraph& g);

// The C_n staircase: merge the word down to a single strand, then split it
// into all-ones of length (sum of the residues' integer representatives).
// Words summing to 0 stop at the strand [0]; the empty word gives the empty
// diagram.
Diagram funnel_cn(const ObjectWord& word, int n);

// Merge-comb then split-comb funnel from source to target (same residue sum
// required); the shape normalize_cn reduces to before suffix cancellation.
Diagram funnel_between_cn(const ObjectWord& source, const ObjectWord& target,
                          int n);

// Count of split cells minus merge cells; for valid C_n diagrams this must
// equal |target| - |source|.
int tensor_factor_delta(const Diagram& d);

// Which category a diagram is validated against.
struct CategoryContext {
    enum class Kind { CnIrr, Dgrams, Star };
    Kind kind;
    int n = 0;                       // CnIrr modulus
    const RepGraph* graph = nullptr; // Dgrams / Star
    static CategoryContext cn_irr(int n) { return {Kind::CnIrr, n, nullptr}; }
    static CategoryContext dgrams(const RepGraph& g) {
        return {Kind::Dgrams, 0, &g};
    }
    static CategoryContext star(const RepGraph& g) {
        return {Kind::Star, 0, &g};
    }
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> problems;
    void fail(const std::string& why) {
        pass = false;
        problems.push_back(why);
    }
    std::string str() const;
};

// Boundary compatibility of all slices plus every cell's side conditions for
// the category (congruence mod n, graph adjacency, star adjacency).
ValidationReport validate(const Diagram& d, const CategoryContext& ctx);
ValidationReport validate(const Morphism& m, const CategoryContext& ctx);

}  // namespace repcat
