#pragma once
/* Evaluation of diagrams to exact matrices: builtin group data, merge/split
 * matrix systems derived by stacked inversion, the evaluation functor for
 * each category flavor, relation suites, and the Schur scalar extractor. */

#include "repcat/diagram.hpp"
#include "repcat/repgraph.hpp"

#include <utility>

namespace repcat {

// The binary tetrahedral group: generators X, Y, A acting on the seven
// simples 0,1,2,3,3',4,4' (dims 1,2,3,2,2,1,1), defining module the
// 2-dimensional simple "1", conductor 24.
GroupData make_group_t();

// Cyclic group of order n: simples 0..n-1, the generator g acts on module a
// by zeta_n^a; defining module "1"; conductor lcm(n,4).
GroupData make_group_cn(int n);

// Cyclic group of order n with the non-simple 2-dimensional defining module
// V = G^(1) (+) G^(n-1) (a restriction of the natural 2-dim module); its
// representation graph is the n-cycle with edges in both directions.
GroupData make_group_cn_double(int n);

// sl2 with simples of highest weight 0..budget (dims 1..budget+1), Lie-type
// action (E, F, H), defining module "1".  The graph is the path truncated at
// the budget node.
GroupData make_group_su2(int budget);

// JSON group file: {conductor, generators:[names], simples:[{id, dim,
// action:{gen: matrix of scalar literals}}], defining: id (optional; the
// second listed simple by default)}.
GroupData load_group_data(const std::string& file);

// "T" or "t_binary_tetrahedral" -> make_group_t(); "cn<N>" -> make_group_cn;
// "cnd<N>" -> make_group_cn_double; "su2:<budget>" -> make_group_su2;
// anything else is treated as a group file path.
GroupData resolve_group(const std::string& spec);

// Merge and split matrices for every directed edge of the representation
// graph.  merge(a,b) realizes [1,a] -> [b]; split(a,b) realizes the section
// [b] -> [1,a].  Keys are (a,b) directed edges.
struct MergeSystem {
    GroupData group;
    RepGraph graph;
    std::map<std::pair<std::string, std::string>, ExactMatrix> merge_mat;
    std::map<std::pair<std::string, std::string>, ExactMatrix> split_mat;

    const ExactMatrix& merge(const std::string& a, const std::string& b) const;
    const ExactMatrix& split(const std::string& a, const std::string& b) const;
};

// Fix one nonzero intertwiner per edge.  For the builtin binary tetrahedral
// data the maps are pinned to the classical explicit ones (tests assert the
// full defining tables); otherwise the basis element is scaled so its first
// nonzero entry in row-major order is 1.
MergeSystem choose_merge_maps(const GroupData& group, const RepGraph& graph);

// Derive the splits out of node a: stack the merges over all out-neighbors
// into a square matrix and take column blocks of its inverse.  Afterwards
// merge(a,b) * split(a,b') = delta_{bb'} id and sum_b split*merge = id hold
// exactly by construction.  Skipped (with no splits recorded) when the
// stacked matrix is not square, which only happens at a truncated boundary.
void derive_split_maps(MergeSystem& ms, const std::string& a);

// choose_merge_maps followed by derive_split_maps on every node.
MergeSystem build_merge_system(const GroupData& group);

// Star-category data: the merge system plus projections (down: * -> c) and
// inclusions (up: c -> *) for every summand c of the defining module,
// normalized so that sum_c up_c * down_c = id exactly.
struct StarSystem {
    MergeSystem ms;
    std::map<std::string, ExactMatrix> down_mat;
    std::map<std::string, ExactMatrix> up_mat;

    const ExactMatrix& down(const std::string& c) const;
    const ExactMatrix& up(const std::string& c) const;
};

StarSystem build_star_system(const GroupData& group);

// Which evaluation functor to apply.
struct EvalContext {
    CategoryContext::Kind kind;
    int n = 0;                              // cyclic-residue category
    const MergeSystem* ms = nullptr;        // graph category
    const StarSystem* star = nullptr;       // star category

    static EvalContext cn_irr(int n) {
        return {CategoryContext::Kind::CnIrr, n, nullptr, nullptr};
    }
    static EvalContext dgrams(const MergeSystem& ms) {
        return {CategoryContext::Kind::Dgrams, 0, &ms, nullptr};
    }
    static EvalContext star_cat(const StarSystem& s) {
        return {CategoryContext::Kind::Star, 0, &s.ms, &s};
    }

    CategoryContext category() const;
    int conductor() const;
    // Dimension of the module a word evaluates to (1 for every cyclic word).
    int word_dimension(const ObjectWord& w) const;
};

ExactMatrix eval_diagram(const Diagram& d, const EvalContext& ctx);
ExactMatrix eval_morphism(const Morphism& m, const EvalContext& ctx);

struct RelationReport {
    struct Row {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Row> rows;
    bool all_pass() const;
    std::string str() const;
};

// The defining relation suite of the active category, verified as exact
// matrix identities:
//  - graph category: merge-over-split bubble per directed edge, the split
//    sum per node, and the resolution of identity on widths 2..5;
//  - cyclic-residue category: slide, cancel/pop, and (co)associativity
//    families over all residue combinations;
//  - star category: the three star relation families.
RelationReport check_category_relations(const EvalContext& ctx);

// For a morphism between single-letter words: (source==target, scalar).
// If the letters differ the evaluation must be the zero matrix; if they
// agree it must be an exact scalar multiple of the identity.  Anything else
// throws domain_error (inconsistent module data).
std::pair<bool, Scalar> schur_scalar(const Morphism& m, const EvalContext& ctx);

}  // namespace repcat
