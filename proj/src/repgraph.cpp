#include "repcat/repgraph.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>

namespace repcat {

std::string word_str(const ObjectWord& w) {
    std::string out = "[";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ",";
        out += w[i];
    }
    return out + "]";
}

bool natural_less(const std::string& a, const std::string& b) {
    size_t i = 0, j = 0;
    auto digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)); };
    while (i < a.size() && j < b.size()) {
        if (digit(a[i]) && digit(b[j])) {
            size_t i2 = i, j2 = j;
            while (i2 < a.size() && digit(a[i2])) ++i2;
            while (j2 < b.size() && digit(b[j2])) ++j2;
            // Compare the digit runs numerically (no leading-zero subtleties
            // in our label sets, but longer runs are larger anyway).
            std::string da = a.substr(i, i2 - i), db = b.substr(j, j2 - j);
            da.erase(0, std::min(da.find_first_not_of('0'), da.size() - 1));
            db.erase(0, std::min(db.find_first_not_of('0'), db.size() - 1));
            if (da.size() != db.size()) return da.size() < db.size();
            if (da != db) return da < db;
            i = i2;
            j = j2;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    return a.size() - i < b.size() - j;
}

const SimpleModule* GroupData::find(const std::string& label) const {
    for (const auto& s : simples)
        if (s.label == label) return &s;
    return nullptr;
}

const SimpleModule& GroupData::simple(const std::string& label) const {
    const SimpleModule* s = find(label);
    if (!s)
        throw std::invalid_argument("unknown simple module label \"" + label +
                                    "\" in group " + name);
    return *s;
}

std::string GroupData::unit_label() const {
    for (const auto& s : simples) {
        if (s.dim != 1) continue;
        bool trivial = true;
        for (const auto& g : generator_names) {
            auto it = s.gen_action.find(g);
            Scalar want(lie ? 0L : 1L, conductor);
            if (it == s.gen_action.end() || it->second.at(0, 0) != want) {
                trivial = false;
                break;
            }
        }
        if (trivial) return s.label;
    }
    throw std::logic_error("group " + name + " has no trivial module");
}

std::string Path::str() const {
    std::string out = "(";
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (i) out += ",";
        out += nodes[i];
    }
    return out + ")";
}

bool RepGraph::has_node(const std::string& label) const {
    return std::any_of(nodes.begin(), nodes.end(),
                       [&](const Node& n) { return n.label == label; });
}

const RepGraph::Node& RepGraph::node(const std::string& label) const {
    for (const auto& n : nodes)
        if (n.label == label) return n;
    throw std::invalid_argument("unknown node label \"" + label + "\"");
}

bool RepGraph::has_edge(const std::string& from, const std::string& to) const {
    return edges.count({from, to}) > 0;
}

std::vector<std::string> RepGraph::out_neighbors(const std::string& from) const {
    node(from);
    std::vector<std::string> out;
    for (const auto& [a, b] : edges)
        if (a == from) out.push_back(b);
    std::sort(out.begin(), out.end(), natural_less);
    return out;
}

bool RepGraph::connected_from_generator() const {
    if (nodes.empty()) return true;
    // Connectedness of the underlying undirected graph, explored from the
    // generator node.
    std::set<std::string> seen{generator};
    std::queue<std::string> todo;
    todo.push(generator);
    while (!todo.empty()) {
        std::string cur = todo.front();
        todo.pop();
        for (const auto& [a, b] : edges) {
            if (a == cur && !seen.count(b)) seen.insert(b), todo.push(b);
            if (b == cur && !seen.count(a)) seen.insert(a), todo.push(a);
        }
    }
    return seen.size() == nodes.size();
}

std::string RepGraph::str() const {
    std::ostringstream os;
    os << "nodes:";
    for (const auto& n : nodes) os << " " << n.label << "(" << n.dim.str() << ")";
    os << "\ngenerator: " << generator << " (dim " << generator_dim.str() << ")";
    os << "\nedges:";
    std::vector<std::pair<std::string, std::string>> sorted(edges.begin(), edges.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return natural_less(x.first, y.first);
        return natural_less(x.second, y.second);
    });
    for (const auto& [a, b] : sorted) os << " " << a << "->" << b;
    os << "\nconnected: " << (connected_from_generator() ? "yes" : "no");
    if (truncated) os << "\ntruncated: yes";
    return os.str();
}

namespace {

using Mods = std::vector<const SimpleModule*>;

Mods resolve_word(const ObjectWord& w, const GroupData& g) {
    Mods mods;
    for (const auto& label : w) {
        const SimpleModule* m = g.find(label);
        if (!m && (g.defining.label == label || label == "*")) m = &g.defining;
        if (!m)
            throw std::invalid_argument("unknown module label \"" + label +
                                        "\" in word " + word_str(w));
        mods.push_back(m);
    }
    return mods;
}

int word_dim(const Mods& mods) {
    int d = 1;
    for (const auto* m : mods) d *= m->dim;
    return d;
}

/// Action of one generator on a tensor word: plain Kronecker product for
// group elements, coproduct sum (x(x)1(x)...(x)1 + ... + 1(x)...(x)x) for
// Lie generators.  The empty word acts as the 1x1 identity resp. zero.
ExactMatrix word_action(const Mods& mods, const std::string& gen,
                        const GroupData& g) {
    if (!g.lie) {
        ExactMatrix act = ExactMatrix::identity(1, g.conductor);
        for (const auto* m : mods) act = act.kron(m->gen_action.at(gen));
        return act;
    }
    int total = word_dim(mods);
    ExactMatrix act(total, total, g.conductor);
    for (size_t i = 0; i < mods.size(); ++i) {
        ExactMatrix term = ExactMatrix::identity(1, g.conductor);
        for (size_t j = 0; j < mods.size(); ++j)
            term = term.kron(j == i ? mods[j]->gen_action.at(gen)
                                    : ExactMatrix::identity(mods[j]->dim, g.conductor));
        act = act + term;
    }
    return act;
}

bool is_diagonal(const ExactMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (i != j && !m.at(i, j).is_zero()) return false;
    return true;
}

std::vector<ExactMatrix> intertwiners(const Mods& src, const Mods& tgt,
                                      const GroupData& g) {
    int ds = word_dim(src), dt = word_dim(tgt);
    std::vector<ExactMatrix> rho_s, rho_t;
    for (const auto& gen : g.generator_names) {
        rho_s.push_back(word_action(src, gen, g));
        rho_t.push_back(word_action(tgt, gen, g));
    }

    // Unknowns are the entries of f (dt x ds).  Generators whose source and
    // target actions are both diagonal cut the unknown set down directly:
    // f[i][j] can only be nonzero when the two eigenvalues agree.  This is
    // what keeps End(V^(x)5) computations at a few hundred unknowns instead
    // of a few thousand.
    std::vector<std::pair<int, int>> allowed;
    std::vector<int> dense_gens;
    std::vector<bool> diag(g.generator_names.size());
    for (size_t k = 0; k < g.generator_names.size(); ++k) {
        diag[k] = is_diagonal(rho_s[k]) && is_diagonal(rho_t[k]);
        if (!diag[k]) dense_gens.push_back(static_cast<int>(k));
    }
    for (int i = 0; i < dt; ++i)
        for (int j = 0; j < ds; ++j) {
            bool ok = true;
            for (size_t k = 0; k < g.generator_names.size(); ++k)
                if (diag[k] && rho_t[k].at(i, i) != rho_s[k].at(j, j)) {
                    ok = false;
                    break;
                }
            if (ok) allowed.emplace_back(i, j);
        }

    auto unknown_index = [&](int i, int j) -> int {
        auto it = std::lower_bound(allowed.begin(), allowed.end(),
                                   std::make_pair(i, j));
        if (it == allowed.end() || *it != std::make_pair(i, j)) return -1;
        return static_cast<int>(it - allowed.begin());
    };

    std::vector<ExactMatrix> solutions;
    int n_unknown = static_cast<int>(allowed.size());
    if (dense_gens.empty()) {
        // Purely diagonal actions: every allowed entry is free.
        for (auto [i, j] : allowed) {
            ExactMatrix f(dt, ds, g.conductor);
            f.set(i, j, Scalar(1L, g.conductor));
            solutions.push_back(std::move(f));
        }
        return solutions;
    }

    // Equivariance rows: for each dense generator and each matrix position
    // (i,j), sum_s f[i][s] rho_s[s][j] - sum_t rho_t[i][t] f[t][j] = 0.
    std::vector<std::vector<Scalar>> rows;
    for (int k : dense_gens) {
        for (int i = 0; i < dt; ++i)
            for (int j = 0; j < ds; ++j) {
                std::vector<Scalar> row(n_unknown, Scalar(0L, g.conductor));
                bool nonzero = false;
                for (int s = 0; s < ds; ++s) {
                    int u = unknown_index(i, s);
                    if (u < 0 || rho_s[k].at(s, j).is_zero()) continue;
                    row[u] = row[u] + rho_s[k].at(s, j);
                    nonzero = true;
                }
                for (int t = 0; t < dt; ++t) {
                    int u = unknown_index(t, j);
                    if (u < 0 || rho_t[k].at(i, t).is_zero()) continue;
                    row[u] = row[u] - rho_t[k].at(i, t);
                    nonzero = true;
                }
                if (nonzero) rows.push_back(std::move(row));
            }
    }

    ExactMatrix system = ExactMatrix(static_cast<int>(rows.size()), n_unknown,
                                     g.conductor);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int c = 0; c < n_unknown; ++c) system.set(static_cast<int>(r), c, rows[r][c]);

    for (const auto& x : system.nullspace_basis()) {
        ExactMatrix f(dt, ds, g.conductor);
        for (int u = 0; u < n_unknown; ++u)
            f.set(allowed[u].first, allowed[u].second, x.at(u, 0));
        solutions.push_back(std::move(f));
    }
    return solutions;
}

}  // namespace

std::vector<ExactMatrix> intertwiner_basis(const ObjectWord& source,
                                           const ObjectWord& target,
                                           const GroupData& group) {
    return intertwiners(resolve_word(source, group),
                        resolve_word(target, group), group);
}

ExactMatrix word_action_matrix(const ObjectWord& word,
                               const std::string& generator_name,
                               const GroupData& group) {
    return word_action(resolve_word(word, group), generator_name, group);
}

int hom_dim_oracle(const ObjectWord& source, const ObjectWord& target,
                   const GroupData& group) {
    return static_cast<int>(intertwiner_basis(source, target, group).size());
}

TensorDecomposition decompose_tensor(const SimpleModule& v,
                                     const SimpleModule& a,
                                     const GroupData& group) {
    TensorDecomposition out;
    int covered = 0;
    for (const auto& b : group.simples) {
        int mult = static_cast<int>(intertwiners({&v, &a}, {&b}, group).size());
        if (mult > 0) {
            out.multiplicity[b.label] = mult;
            covered += mult * b.dim;
        }
    }
    int total = v.dim * a.dim;
    if (covered == total) return out;
    if (covered < total && group.truncation) {
        out.clipped = true;  // summands beyond the node budget were dropped
        return out;
    }
    throw std::runtime_error(
        "tensor decomposition of " + v.label + " (x) " + a.label +
        " accounts for dimension " + std::to_string(covered) + " of " +
        std::to_string(total) + "; module data is inconsistent");
}

RepGraph build_rep_graph(const GroupData& group) {
    RepGraph g;
    g.conductor = group.conductor;
    g.generator_dim = Scalar(static_cast<long>(group.defining.dim), group.conductor);
    for (const auto& s : group.simples)
        g.nodes.push_back({s.label, Scalar(static_cast<long>(s.dim), group.conductor)});
    for (const auto& a : group.simples) {
        TensorDecomposition dec = decompose_tensor(group.defining, a, group);
        if (dec.clipped) g.truncated = true;
        for (const auto& [b, mult] : dec.multiplicity) {
            if (mult >= 2)
                throw std::runtime_error(
                    "V (x) G^(" + a.label + ") contains G^(" + b +
                    ") with multiplicity " + std::to_string(mult) +
                    "; only multiplicity-free representation graphs (no "
                    "multiple parallel edges) are supported");
            g.edges.insert({a.label, b});
        }
    }
    // When V is itself one of the simples its node is the generator;
    // otherwise the unit node stands in (walks from the unit then count
    // tensor multiplicities directly).
    g.generator = group.find(group.defining.label) ? group.defining.label
                                                   : group.unit_label();
    return g;
}

std::vector<Path> enumerate_paths(const RepGraph& g, const std::string& a,
                                  const std::string& b, int k) {
    g.node(a);
    g.node(b);
    if (k < 0) throw std::invalid_argument("negative path length");
    std::vector<Path> out;
    Path cur{{a}};
    // Depth-first over natural-ordered neighbors; same-length paths come out
    // in lexicographic order because prefixes are explored in order.
    std::function<void()> walk = [&] {
        if (cur.length() == k) {
            if (cur.nodes.back() == b) out.push_back(cur);
            return;
        }
        for (const auto& next : g.out_neighbors(cur.nodes.back())) {
            cur.nodes.push_back(next);
            walk();
            cur.nodes.pop_back();
        }
    };
    walk();
    return out;
}

long count_paths_adjacency(const RepGraph& g, const std::string& a,
                           const std::string& b, int k) {
    size_t n = g.nodes.size();
    std::map<std::string, size_t> idx;
    for (size_t i = 0; i < n; ++i) idx[g.nodes[i].label] = i;
    std::vector<std::vector<long>> adj(n, std::vector<long>(n, 0)),
        acc(n, std::vector<long>(n, 0));
    for (const auto& [x, y] : g.edges) adj[idx.at(x)][idx.at(y)] = 1;
    for (size_t i = 0; i < n; ++i) acc[i][i] = 1;
    for (int e = 0; e < k; ++e) {
        std::vector<std::vector<long>> next(n, std::vector<long>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t l = 0; l < n; ++l) {
                if (!acc[i][l]) continue;
                for (size_t j = 0; j < n; ++j)
                    next[i][j] += acc[i][l] * adj[l][j];
            }
        acc = std::move(next);
    }
    return acc[idx.at(a)][idx.at(b)];
}

std::pair<int, Path> minimal_inclusion_length(const RepGraph& g,
                                              const std::string& b) {
    g.node(b);
    // Breadth-first distance from the generator node.
    std::map<std::string, int> dist{{g.generator, 0}};
    std::queue<std::string> todo;
    todo.push(g.generator);
    while (!todo.empty()) {
        std::string cur = todo.front();
        todo.pop();
        for (const auto& next : g.out_neighbors(cur))
            if (!dist.count(next)) {
                dist[next] = dist[cur] + 1;
                todo.push(next);
            }
    }
    auto it = dist.find(b);
    if (it == dist.end())
        throw std::runtime_error("node " + b + " is not reachable from the "
                                 "generator node; the graph is disconnected");
    std::vector<Path> witnesses = enumerate_paths(g, g.generator, b, it->second);
    if (witnesses.size() != 1)
        throw std::runtime_error(
            "minimal inclusion length for " + b + " is " +
            std::to_string(it->second) + " but the witness path is not unique (" +
            std::to_string(witnesses.size()) + " found)");
    return {it->second, witnesses[0]};
}

std::string locate_data_file(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    if (fs::exists(name_or_path)) return name_or_path;
    std::vector<std::string> dirs;
    if (const char* env = std::getenv("REPCAT_DATA_DIR")) dirs.push_back(env);
    dirs.push_back("data");
#ifdef REPCAT_SOURCE_DATA_DIR
    dirs.push_back(REPCAT_SOURCE_DATA_DIR);
#endif
    std::vector<std::string> tried{name_or_path};
    for (const auto& d : dirs)
        for (const auto& suffix : {std::string(""), std::string(".json")}) {
            std::string candidate = d + "/" + name_or_path + suffix;
            if (fs::exists(candidate)) return candidate;
            tried.push_back(candidate);
        }
    std::string msg = "data file not found; tried:";
    for (const auto& t : tried) msg += " " + t;
    throw std::runtime_error(msg);
}

RepGraph load_fusion_graph(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open graph file " + file);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("malformed graph file " + file + ": " + e.what());
    }
    auto need = [&](const char* key) {
        if (!j.contains(key))
            throw std::runtime_error("graph file " + file + " lacks \"" +
                                     key + "\"");
    };
    need("conductor");
    need("generator");
    need("nodes");
    need("edges");

    RepGraph g;
    g.conductor = j["conductor"].get<int>();
    g.generator = j["generator"].get<std::string>();
    for (const auto& n : j["nodes"]) {
        std::string id = n.at("id").get<std::string>();
        if (g.has_node(id))
            throw std::runtime_error("duplicate node \"" + id + "\" in " + file);
        Scalar dim = n.at("dim").is_number()
                         ? Scalar(n.at("dim").get<long>(), g.conductor)
                         : Scalar::parse(n.at("dim").get<std::string>(), g.conductor);
        g.nodes.push_back({id, dim});
    }
    for (const auto& e : j["edges"]) {
        std::string from = e.at("from").get<std::string>();
        std::string to = e.at("to").get<std::string>();
        for (const auto& end : {from, to})
            if (!g.has_node(end))
                throw std::runtime_error("edge endpoint \"" + end +
                                         "\" is not a node in " + file);
        if (!g.edges.insert({from, to}).second)
            throw std::runtime_error("duplicate edge " + from + "->" + to +
                                     " in " + file);
    }
    if (!g.has_node(g.generator))
        throw std::runtime_error("generator \"" + g.generator +
                                 "\" is not a node in " + file);
    g.generator_dim = g.node(g.generator).dim;
    return g;
}

bool DimensionReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const Row& r) { return r.pass; });
}

std::string DimensionReport::str() const {
    std::ostringstream os;
    for (const auto& r : rows)
        os << (r.pass ? "pass" : "FAIL") << "  node " << r.label
           << ": dim(V)*dim = " << r.expected.str()
           << ", neighbor sum = " << r.actual.str() << "\n";
    return os.str();
}

DimensionReport check_dimension_identity(const RepGraph& g) {
    DimensionReport rep;
    for (const auto& n : g.nodes) {
        Scalar expected = g.generator_dim * n.dim;
        Scalar actual(0L, g.conductor);
        for (const auto& b : g.out_neighbors(n.label))
            actual = actual + g.node(b).dim;
        rep.rows.push_back({n.label, expected, actual, expected == actual});
    }
    return rep;
}

}  // namespace repcat
