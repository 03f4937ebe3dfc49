#pragma once
/* Representation graphs: build them from explicit module data, load fusion
 * graphs from files, enumerate paths, and run graph-level consistency
 * checks.  Nodes are simple-object labels; the distinguished generator node
 * carries the tensoring object V. */

#include "repcat/exactfield.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace repcat {

using ObjectWord = std::vector<std::string>;

std::string word_str(const ObjectWord& w);

// Numeric-aware label order: digit runs compare as numbers, so "3" < "3'"
// and "9" < "10".  Used for path enumeration and neighbor lists.
bool natural_less(const std::string& a, const std::string& b);

// A module given by explicit generator matrices.  "Simple" is the normal
// case; the same struct also carries the defining object V when V is not
// itself simple (for example a 2-dimensional restriction to a cyclic group).
struct SimpleModule {
    std::string label;
    int dim = 0;
    std::map<std::string, ExactMatrix> gen_action;  // generator name -> dim x dim
};

// A finite group (or Lie algebra) with a fixed list of simple modules and a
// defining module V.  When `lie` is set, generators act on tensor products
// by the coproduct x(x)1 + 1(x)x instead of x(x)x.
struct GroupData {
    std::string name;
    std::vector<std::string> generator_names;
    std::vector<SimpleModule> simples;
    SimpleModule defining;
    int conductor = 1;
    bool lie = false;
    std::optional<int> truncation;  // node budget for infinite families

    const SimpleModule* find(const std::string& label) const;
    const SimpleModule& simple(const std::string& label) const;  // throws
    // Label of the module all generators fix (act by 1, or by 0 when lie).
    std::string unit_label() const;
};

struct Path {
    std::vector<std::string> nodes;  // (b_0, ..., b_k), b_0 = generator label
    int length() const { return static_cast<int>(nodes.size()) - 1; }
    std::string str() const;
    bool operator==(const Path& o) const { return nodes == o.nodes; }
};

struct RepGraph {
    struct Node {
        std::string label;
        Scalar dim;
    };
    std::vector<Node> nodes;  // construction/file order; nodes[0] is the unit
    std::set<std::pair<std::string, std::string>> edges;  // directed, no dups
    std::string generator;
    Scalar generator_dim;     // dim V (equals the generator node's dim when V
                              // is simple; may differ otherwise)
    int conductor = 1;
    bool truncated = false;   // some tensor decomposition was clipped

    bool has_node(const std::string& label) const;
    const Node& node(const std::string& label) const;  // throws on unknown
    bool has_edge(const std::string& from, const std::string& to) const;
    // Targets of edges out of `from`, in natural label order.
    std::vector<std::string> out_neighbors(const std::string& from) const;
    bool connected_from_generator() const;
    std::string str() const;
};

// Exact basis of Hom_G(source word, target word), deterministic order.
// Words are lists of simple labels; the tensor action uses the group's
// tensor rule.  Letters equal to the defining module's label (or the star
// placeholder "*") resolve to the defining module even when it is not in
// the simples list.
std::vector<ExactMatrix> intertwiner_basis(const ObjectWord& source,
                                           const ObjectWord& target,
                                           const GroupData& group);

// Action of one named generator on a tensor word (Kronecker product, or the
// coproduct sum for Lie-type data).  The empty word gives the 1x1 identity
// (zero for Lie type).
ExactMatrix word_action_matrix(const ObjectWord& word,
                               const std::string& generator_name,
                               const GroupData& group);

// dim Hom_G(source, target); the independent oracle used by the test suites.
int hom_dim_oracle(const ObjectWord& source, const ObjectWord& target,
                   const GroupData& group);

// Multiplicity of each simple in v (x) a.  Checks dimension conservation
// unless the group is truncated (then a clipped boundary is tolerated and
// reported via the second member).
struct TensorDecomposition {
    std::map<std::string, int> multiplicity;
    bool clipped = false;
};
TensorDecomposition decompose_tensor(const SimpleModule& v,
                                     const SimpleModule& a,
                                     const GroupData& group);

// Representation graph of (V = group.defining, group.simples).  Aborts with
// a diagnostic if any multiplicity is >= 2.
RepGraph build_rep_graph(const GroupData& group);

std::vector<Path> enumerate_paths(const RepGraph& g, const std::string& a,
                                  const std::string& b, int k);

// Adjacency-matrix count of paths a -> b of length k (transfer matrix).
long count_paths_adjacency(const RepGraph& g, const std::string& a,
                           const std::string& b, int k);

// Shortest k with |P(generator, b)_k| >= 1, plus the unique witness path at
// that length.  Errors if the node is unreachable or the witness ambiguous.
std::pair<int, Path> minimal_inclusion_length(const RepGraph& g,
                                              const std::string& b);

// Fusion-graph file I/O (JSON): {conductor, generator, nodes:[{id,dim}],
// edges:[{from,to}]}.  Dims may be integers or scalar literals.
RepGraph load_fusion_graph(const std::string& file);

// Resolve a bundled data name ("fibonacci") or a path to an existing file.
// Search order: $REPCAT_DATA_DIR, ./data, the build-time source data dir.
std::string locate_data_file(const std::string& name_or_path);

struct DimensionReport {
    struct Row {
        std::string label;
        Scalar expected;  // dim(V) * dim(a)
        Scalar actual;    // sum of neighbor dims
        bool pass;
    };
    std::vector<Row> rows;
    bool all_pass() const;
    std::string str() const;
};
// Per-node check of dim(V) * dim(a) = sum of dims over edges a -> b.
DimensionReport check_dimension_identity(const RepGraph& g);

}  // namespace repcat
