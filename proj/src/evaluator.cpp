#include "repcat/evaluator.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace repcat {

namespace {

ExactMatrix mat24(const std::vector<std::vector<std::string>>& lit) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& r : lit) {
        std::vector<Scalar> row;
        for (const auto& s : r) row.push_back(Scalar::parse(s, 24));
        rows.push_back(std::move(row));
    }
    return ExactMatrix::from_rows(rows, 24);
}

SimpleModule simple_of(const std::string& label, ExactMatrix x, ExactMatrix y,
                       ExactMatrix a) {
    SimpleModule s;
    s.label = label;
    s.dim = x.rows();
    s.gen_action["X"] = std::move(x);
    s.gen_action["Y"] = std::move(y);
    s.gen_action["A"] = std::move(a);
    return s;
}

}  // namespace

GroupData make_group_t() {
    GroupData g;
    g.name = "T";
    g.generator_names = {"X", "Y", "A"};
    g.conductor = 24;

    ExactMatrix one = mat24({{"1"}});
    ExactMatrix x2 = mat24({{"z^6", "0"}, {"0", "-z^6"}});
    ExactMatrix y2 = mat24({{"0", "1"}, {"-1", "0"}});

    g.simples.push_back(simple_of("0", one, one, one));
    g.simples.push_back(simple_of(
        "1", x2, y2,
        mat24({{"1/2 + 1/2 z^6", "1/2 + 1/2 z^6"},
               {"-1/2 + 1/2 z^6", "1/2 - 1/2 z^6"}})));
    g.simples.push_back(simple_of(
        "2", mat24({{"-1", "0", "0"}, {"0", "-1", "0"}, {"0", "0", "1"}}),
        mat24({{"0", "1", "0"}, {"1", "0", "0"}, {"0", "0", "-1"}}),
        mat24({{"1/2 z^6", "1/2 z^6", "z^6"},
               {"-1/2 z^6", "-1/2 z^6", "z^6"},
               {"-1/2", "1/2", "0"}})));
    {
        Scalar al = Scalar::parse(
            "-1/4 + 1/4 z^2 - 1/4 z^4 - 1/4 z^6 - 1/4 z^8 + 1/4 z^22", 24);
        Scalar be = Scalar::parse(
            "1/4 + 1/4 z^2 + 1/4 z^4 - 1/4 z^6 + 1/4 z^8 + 1/4 z^22", 24);
        g.simples.push_back(simple_of(
            "3", x2, y2,
            ExactMatrix::from_rows({{al, al}, {be, -be}}, 24)));
    }
    {
        Scalar ga = Scalar::parse(
            "-1/4 - 1/4 z^2 + 1/4 z^4 - 1/4 z^6 + 1/4 z^8 - 1/4 z^22", 24);
        Scalar de = Scalar::parse(
            "1/4 - 1/4 z^2 - 1/4 z^4 - 1/4 z^6 - 1/4 z^8 - 1/4 z^22", 24);
        g.simples.push_back(simple_of(
            "3'", x2, y2,
            ExactMatrix::from_rows({{ga, ga}, {de, -de}}, 24)));
    }
    g.simples.push_back(
        simple_of("4", one, one, mat24({{"-1/2 - 1/2 z^4 - 1/2 z^8"}})));
    g.simples.push_back(
        simple_of("4'", one, one, mat24({{"-1/2 + 1/2 z^4 + 1/2 z^8"}})));

    g.defining = g.simples[1];
    return g;
}

GroupData make_group_cn(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
    int cond = std::lcm(n, 4);
    GroupData g;
    g.name = "cn" + std::to_string(n);
    g.generator_names = {"g"};
    g.conductor = cond;
    for (int a = 0; a < n; ++a) {
        SimpleModule s;
        s.label = std::to_string(a);
        s.dim = 1;
        ExactMatrix m(1, 1, cond);
        m.set(0, 0, Scalar::root_of_unity(cond, static_cast<long>(cond / n) * a));
        s.gen_action["g"] = std::move(m);
        g.simples.push_back(std::move(s));
    }
    g.defining = g.simples[n > 1 ? 1 : 0];
    return g;
}

GroupData make_group_cn_double(int n) {
    if (n < 2)
        throw std::invalid_argument(
            "the two-summand cyclic module needs order at least 2");
    GroupData g = make_group_cn(n);
    g.name = "cnd" + std::to_string(n);
    SimpleModule v;
    v.label = "V";
    v.dim = 2;
    ExactMatrix m(2, 2, g.conductor);
    m.set(0, 0, Scalar::root_of_unity(g.conductor, g.conductor / n));
    m.set(1, 1, Scalar::root_of_unity(
                    g.conductor, static_cast<long>(g.conductor / n) * (n - 1)));
    v.gen_action["g"] = std::move(m);
    g.defining = std::move(v);
    return g;
}

GroupData make_group_su2(int budget) {
    if (budget < 1)
        throw std::invalid_argument("the weight budget must be at least 1");
    GroupData g;
    g.name = "su2";
    g.generator_names = {"E", "F", "H"};
    g.conductor = 1;
    g.lie = true;
    g.truncation = budget;
    for (int a = 0; a <= budget; ++a) {
        SimpleModule s;
        s.label = std::to_string(a);
        s.dim = a + 1;
        ExactMatrix e(s.dim, s.dim, 1), f(s.dim, s.dim, 1), h(s.dim, s.dim, 1);
        for (int i = 0; i <= a; ++i) {
            h.set(i, i, Scalar(a - 2 * i));
            if (i >= 1) e.set(i - 1, i, Scalar(static_cast<long>(i) * (a - i + 1)));
            if (i < a) f.set(i + 1, i, Scalar(1L));
        }
        s.gen_action["E"] = std::move(e);
        s.gen_action["F"] = std::move(f);
        s.gen_action["H"] = std::move(h);
        g.simples.push_back(std::move(s));
    }
    g.defining = g.simples[1];
    return g;
}

GroupData load_group_data(const std::string& file) {
    std::string path = locate_data_file(file);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open group file " + path);
    GroupData g;
    try {
        nlohmann::json j;
        in >> j;
        g.name = std::filesystem::path(path).stem().string();
        g.conductor = j.at("conductor").get<int>();
        if (g.conductor < 1)
            throw std::runtime_error(path + ": conductor must be positive");
        for (const auto& s : j.at("generators"))
            g.generator_names.push_back(s.get<std::string>());
        auto id_of = [](const nlohmann::json& v) {
            return v.is_string() ? v.get<std::string>()
                                 : std::to_string(v.get<long>());
        };
        for (const auto& js : j.at("simples")) {
            SimpleModule s;
            s.label = id_of(js.at("id"));
            s.dim = js.at("dim").get<int>();
            if (s.dim < 1)
                throw std::runtime_error(path + ": module " + s.label +
                                         " has nonpositive dimension");
            for (const auto& gen : g.generator_names) {
                if (!js.at("action").contains(gen))
                    throw std::runtime_error(path + ": module " + s.label +
                                             " has no action for generator " +
                                             gen);
                const auto& jm = js.at("action").at(gen);
                if (static_cast<int>(jm.size()) != s.dim)
                    throw std::runtime_error(
                        path + ": module " + s.label + " action for " + gen +
                        " has " + std::to_string(jm.size()) + " rows, expected " +
                        std::to_string(s.dim));
                std::vector<std::vector<Scalar>> rows;
                for (const auto& jr : jm) {
                    if (static_cast<int>(jr.size()) != s.dim)
                        throw std::runtime_error(
                            path + ": module " + s.label + " action for " + gen +
                            " has a row of length " + std::to_string(jr.size()) +
                            ", expected " + std::to_string(s.dim));
                    std::vector<Scalar> row;
                    for (const auto& je : jr) {
                        if (je.is_string())
                            row.push_back(
                                Scalar::parse(je.get<std::string>(), g.conductor));
                        else if (je.is_number_integer())
                            row.push_back(Scalar(je.get<long>(), g.conductor));
                        else
                            throw std::runtime_error(
                                path + ": matrix entries must be integers or "
                                       "scalar literals");
                    }
                    rows.push_back(std::move(row));
                }
                s.gen_action[gen] = ExactMatrix::from_rows(rows, g.conductor);
            }
            g.simples.push_back(std::move(s));
        }
        if (g.simples.empty())
            throw std::runtime_error(path + ": no simples listed");
        std::string def;
        if (j.contains("defining")) {
            def = id_of(j.at("defining"));
        } else if (g.simples.size() > 1) {
            def = g.simples[1].label;
        } else {
            throw std::runtime_error(path +
                                     ": a single-module file needs an explicit "
                                     "\"defining\" entry");
        }
        const SimpleModule* d = g.find(def);
        if (!d)
            throw std::runtime_error(path + ": defining module \"" + def +
                                     "\" is not a listed simple");
        g.defining = *d;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return g;
}

GroupData resolve_group(const std::string& spec) {
    auto digits = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
                   return std::isdigit(c);
               });
    };
    if (spec == "T" || spec == "t_binary_tetrahedral") return make_group_t();
    if (spec.rfind("cnd", 0) == 0 && digits(spec.substr(3)))
        return make_group_cn_double(std::stoi(spec.substr(3)));
    if (spec.rfind("cn", 0) == 0 && digits(spec.substr(2)))
        return make_group_cn(std::stoi(spec.substr(2)));
    if (spec.rfind("su2:", 0) == 0 && digits(spec.substr(4)))
        return make_group_su2(std::stoi(spec.substr(4)));
    return load_group_data(spec);
}

const ExactMatrix& MergeSystem::merge(const std::string& a,
                                      const std::string& b) const {
    auto it = merge_mat.find({a, b});
    if (it == merge_mat.end())
        throw std::out_of_range("no merge map for edge " + a + " -> " + b);
    return it->second;
}

const ExactMatrix& MergeSystem::split(const std::string& a,
                                      const std::string& b) const {
    auto it = split_mat.find({a, b});
    if (it == split_mat.end())
        throw std::out_of_range("no split map for edge " + a + " -> " + b);
    return it->second;
}

namespace {

ExactMatrix first_entry_one(const ExactMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero())
                return m.scaled(m.at(i, j).inverse());
    throw std::runtime_error("a zero matrix cannot be normalized");
}

// The classical explicit merge maps for the binary tetrahedral group, pinned
// by one input/output pair each (input in the lexicographic tensor basis).
// z^4 + z^8 is i sqrt(3) at conductor 24.
struct MergePin {
    const char *a, *b;
    std::vector<const char*> in, out;
};

const std::vector<MergePin>& t_merge_pins() {
    static const std::vector<MergePin> pins = {
        {"0", "1", {"1", "0"}, {"1", "0"}},
        {"1", "0", {"0", "1", "-1", "0"}, {"1"}},
        {"1", "2", {"1", "0", "0", "0"}, {"1", "0", "0"}},
        {"2", "1", {"0", "0", "-1/2", "1", "0", "0"}, {"1", "0"}},
        {"2", "3", {"0", "0", "-1", "-1", "z^4 + z^8", "0"}, {"1", "0"}},
        {"3", "2", {"0", "0", "0", "1"}, {"-z^4 - z^8", "1", "0"}},
        {"2", "3'", {"0", "0", "-1", "-1", "-z^4 - z^8", "0"}, {"1", "0"}},
        {"3'", "2", {"0", "0", "0", "1"}, {"z^4 + z^8", "1", "0"}},
        {"3", "4", {"0", "1", "-1", "0"}, {"1"}},
        {"4", "3", {"1", "0"}, {"1", "0"}},
        {"3'", "4'", {"0", "1", "-1", "0"}, {"1"}},
        {"4'", "3'", {"1", "0"}, {"1", "0"}},
    };
    return pins;
}

ExactMatrix apply_pin(const ExactMatrix& basis, const MergePin& pin, int cond) {
    std::vector<Scalar> x, y;
    for (const char* s : pin.in) x.push_back(Scalar::parse(s, cond));
    for (const char* s : pin.out) y.push_back(Scalar::parse(s, cond));
    if (static_cast<int>(x.size()) != basis.cols() ||
        static_cast<int>(y.size()) != basis.rows())
        throw std::logic_error(std::string("pin shape mismatch for edge ") +
                               pin.a + " -> " + pin.b);
    std::vector<Scalar> v(basis.rows(), Scalar(0L, cond));
    for (int i = 0; i < basis.rows(); ++i)
        for (int j = 0; j < basis.cols(); ++j)
            v[i] = v[i] + basis.at(i, j) * x[j];
    int j0 = -1;
    for (size_t j = 0; j < y.size(); ++j)
        if (!y[j].is_zero()) {
            j0 = static_cast<int>(j);
            break;
        }
    if (j0 < 0 || v[j0].is_zero())
        throw std::runtime_error(std::string("pinned pair for edge ") + pin.a +
                                 " -> " + pin.b +
                                 " does not lie on the merge line");
    return basis.scaled(y[j0] * v[j0].inverse());
}

}  // namespace

MergeSystem choose_merge_maps(const GroupData& group, const RepGraph& graph) {
    MergeSystem ms{group, graph, {}, {}};
    bool pinned = (group.name == "T");
    for (const auto& [a, b] : graph.edges) {
        auto basis = intertwiner_basis({group.defining.label, a}, {b}, group);
        if (basis.size() != 1)
            throw std::runtime_error(
                "merge space for edge " + a + " -> " + b + " has dimension " +
                std::to_string(basis.size()) + ", expected 1");
        const MergePin* pin = nullptr;
        if (pinned)
            for (const auto& p : t_merge_pins())
                if (a == p.a && b == p.b) pin = &p;
        ms.merge_mat[{a, b}] = pin ? apply_pin(basis[0], *pin, group.conductor)
                                   : first_entry_one(basis[0]);
    }
    return ms;
}

void derive_split_maps(MergeSystem& ms, const std::string& a) {
    auto nbrs = ms.graph.out_neighbors(a);
    if (nbrs.empty()) return;
    std::vector<ExactMatrix> blocks;
    for (const auto& b : nbrs) blocks.push_back(ms.merge(a, b));
    ExactMatrix stacked = ExactMatrix::vstack(blocks);
    if (stacked.rows() != stacked.cols()) {
        if (ms.graph.truncated) return;
        throw std::runtime_error(
            "stacked merges out of node " + a + " form a " +
            std::to_string(stacked.rows()) + " x " +
            std::to_string(stacked.cols()) +
            " matrix; the graph violates the dimension identity");
    }
    ExactMatrix inv;
    try {
        inv = stacked.inverse();
    } catch (const std::domain_error&) {
        throw std::runtime_error("stacked merges out of node " + a +
                                 " are singular; the module data is "
                                 "inconsistent");
    }
    int off = 0;
    for (size_t i = 0; i < nbrs.size(); ++i) {
        int db = blocks[i].rows();
        ExactMatrix s(inv.rows(), db, inv.conductor());
        for (int r = 0; r < inv.rows(); ++r)
            for (int c = 0; c < db; ++c) s.set(r, c, inv.at(r, off + c));
        ms.split_mat[{a, nbrs[i]}] = std::move(s);
        off += db;
    }
}

MergeSystem build_merge_system(const GroupData& group) {
    RepGraph graph = build_rep_graph(group);
    MergeSystem ms = choose_merge_maps(group, graph);
    for (const auto& node : graph.nodes) derive_split_maps(ms, node.label);
    return ms;
}

const ExactMatrix& StarSystem::down(const std::string& c) const {
    auto it = down_mat.find(c);
    if (it == down_mat.end())
        throw std::out_of_range("no projection onto summand " + c);
    return it->second;
}

const ExactMatrix& StarSystem::up(const std::string& c) const {
    auto it = up_mat.find(c);
    if (it == up_mat.end())
        throw std::out_of_range("no inclusion of summand " + c);
    return it->second;
}

StarSystem build_star_system(const GroupData& group) {
    StarSystem st{build_merge_system(group), {}, {}};
    const RepGraph& g = st.ms.graph;
    std::string unit = g.nodes[0].label;
    auto cs = g.out_neighbors(unit);
    if (cs.empty())
        throw std::runtime_error(
            "the unit node has no neighbors, so the defining module has no "
            "simple summands");
    std::vector<ExactMatrix> blocks;
    for (const auto& c : cs) {
        auto basis = intertwiner_basis({kStarLabel}, {c}, group);
        if (basis.size() != 1)
            throw std::runtime_error("projection space onto summand " + c +
                                     " has dimension " +
                                     std::to_string(basis.size()) +
                                     ", expected 1");
        ExactMatrix d = first_entry_one(basis[0]);
        blocks.push_back(d);
        st.down_mat[c] = std::move(d);
    }
    ExactMatrix stacked = ExactMatrix::vstack(blocks);
    if (stacked.rows() != stacked.cols())
        throw std::runtime_error(
            "summand dimensions do not add up to the defining module's "
            "dimension");
    ExactMatrix inv;
    try {
        inv = stacked.inverse();
    } catch (const std::domain_error&) {
        throw std::runtime_error(
            "stacked projections are singular; the module data is "
            "inconsistent");
    }
    int off = 0;
    for (size_t i = 0; i < cs.size(); ++i) {
        int dc = blocks[i].rows();
        ExactMatrix u(inv.rows(), dc, inv.conductor());
        for (int r = 0; r < inv.rows(); ++r)
            for (int c = 0; c < dc; ++c) u.set(r, c, inv.at(r, off + c));
        st.up_mat[cs[i]] = std::move(u);
        off += dc;
    }
    return st;
}

CategoryContext EvalContext::category() const {
    switch (kind) {
        case CategoryContext::Kind::CnIrr:
            return CategoryContext::cn_irr(n);
        case CategoryContext::Kind::Dgrams:
            return CategoryContext::dgrams(ms->graph);
        case CategoryContext::Kind::Star:
            return CategoryContext::star(ms->graph);
    }
    throw std::logic_error("unknown category kind");
}

int EvalContext::conductor() const {
    return kind == CategoryContext::Kind::CnIrr ? 1 : ms->group.conductor;
}

int EvalContext::word_dimension(const ObjectWord& w) const {
    if (kind == CategoryContext::Kind::CnIrr) return 1;
    const GroupData& g = ms->group;
    long d = 1;
    for (const auto& l : w)
        d *= (l == kStarLabel || l == g.defining.label) ? g.defining.dim
                                                        : g.simple(l).dim;
    return static_cast<int>(d);
}

namespace {

ExactMatrix cell_matrix(const Cell& c, const EvalContext& ctx) {
    switch (c.kind) {
        case Cell::Kind::Id:
            return ExactMatrix::identity(ctx.word_dimension(c.in),
                                         ctx.conductor());
        case Cell::Kind::MergeG:
            return ctx.ms->merge(c.in[1], c.out[0]);
        case Cell::Kind::SplitG:
            return ctx.ms->split(c.out[1], c.in[0]);
        case Cell::Kind::StarDown:
            return ctx.star->down(c.out[0]);
        case Cell::Kind::StarUp:
            return ctx.star->up(c.in[0]);
        default:
            throw std::logic_error("cell " + c.str() +
                                   " has no matrix semantics in this category");
    }
}

}  // namespace

ExactMatrix eval_diagram(const Diagram& d, const EvalContext& ctx) {
    ValidationReport rep = validate(d, ctx.category());
    if (!rep.pass)
        throw std::invalid_argument("cannot evaluate invalid diagram: " +
                                    rep.problems.front());
    int cond = ctx.conductor();
    if (ctx.kind == CategoryContext::Kind::CnIrr)
        return ExactMatrix::identity(1, 1);
    ExactMatrix acc = ExactMatrix::identity(ctx.word_dimension(d.source), cond);
    for (const auto& slice : d.slices) {
        ExactMatrix sm = ExactMatrix::identity(1, cond);
        for (const auto& cell : slice) sm = sm.kron(cell_matrix(cell, ctx));
        acc = sm * acc;
    }
    return acc;
}

ExactMatrix eval_morphism(const Morphism& m, const EvalContext& ctx) {
    int cond = std::lcm(ctx.conductor(), m.conductor());
    ExactMatrix acc(ctx.word_dimension(m.target), ctx.word_dimension(m.source),
                    cond);
    for (const auto& [d, coeff] : m.terms)
        acc = acc + eval_diagram(d, ctx).lifted(cond).scaled(coeff.lifted(cond));
    return acc;
}

bool RelationReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const Row& r) { return r.pass; });
}

std::string RelationReport::str() const {
    std::ostringstream os;
    for (const auto& r : rows) {
        os << (r.pass ? "pass" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) os << ": " << r.detail;
        os << "\n";
    }
    return os.str();
}

namespace {

// One aggregated report row per relation family: the instance count when all
// instances hold, the first failing instance otherwise.
struct Family {
    std::string name;
    long count = 0;
    bool pass = true;
    std::string detail;

    explicit Family(std::string n) : name(std::move(n)) {}

    void record(bool ok, const std::string& what) {
        ++count;
        if (!ok && pass) {
            pass = false;
            detail = "first failure: " + what;
        }
    }
    RelationReport::Row row(const std::string& note) const {
        return {name, pass,
                pass ? std::to_string(count) + " instances" + note : detail};
    }
};

RelationReport cn_relations(const EvalContext& ctx) {
    int n = ctx.n;
    if (n < 1) throw std::invalid_argument("the modulus must be positive");
    auto lbl = [n](long v) {
        long r = v % n;
        if (r < 0) r += n;
        return std::to_string(r);
    };
    auto check = [&ctx](Family& f, const Diagram& lhs, const Diagram& rhs,
                        const std::string& what) {
        try {
            f.record(eval_diagram(lhs, ctx) == eval_diagram(rhs, ctx), what);
        } catch (const std::exception& e) {
            f.record(false, what + ": " + e.what());
        }
    };

    Family slide_l{"slide a merge past a split (left)"};
    Family slide_r{"slide a merge past a split (right)"};
    Family cancel{"cancel a split over its merge"};
    Family pop{"pop a merge under its split"};
    Family massoc{"merge associativity"};
    Family scoassoc{"split coassociativity"};

    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
            std::string la = lbl(a), lb = lbl(b), lc = lbl(a + b);
            Diagram staircase{{la, lb},
                              {la, lb},
                              {{Cell::merge_cn(la, lb, lc)},
                               {Cell::split_cn(lc, la, lb)}}};
            check(cancel, staircase, Diagram::identity({la, lb}),
                  "residues " + la + "," + lb);
            Diagram bubble{{lc},
                           {lc},
                           {{Cell::split_cn(lc, la, lb)},
                            {Cell::merge_cn(la, lb, lc)}}};
            check(pop, bubble, Diagram::identity({lc}),
                  "residue " + lc + " split as " + la + "," + lb);
        }

    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            for (long x = 0; x < n; ++x) {
                std::string la = lbl(a), lb = lbl(b), lx = lbl(x);
                std::string lc = lbl(a + b);
                std::string what = "residues " + la + "," + lb + " across " + lx;
                Diagram rhs{{la, lb},
                            {lbl(a + x), lbl(b - x)},
                            {{Cell::merge_cn(la, lb, lc)},
                             {Cell::split_cn(lc, lbl(a + x), lbl(b - x))}}};
                Diagram left{{la, lb},
                             {lbl(a + x), lbl(b - x)},
                             {{Cell::id(la), Cell::split_cn(lb, lx, lbl(b - x))},
                              {Cell::merge_cn(la, lx, lbl(a + x)),
                               Cell::id(lbl(b - x))}}};
                check(slide_l, left, rhs, what);
                Diagram rhs2{{la, lb},
                             {lbl(a - x), lbl(b + x)},
                             {{Cell::merge_cn(la, lb, lc)},
                              {Cell::split_cn(lc, lbl(a - x), lbl(b + x))}}};
                Diagram right{
                    {la, lb},
                    {lbl(a - x), lbl(b + x)},
                    {{Cell::split_cn(la, lbl(a - x), lx), Cell::id(lb)},
                     {Cell::id(lbl(a - x)), Cell::merge_cn(lx, lb, lbl(b + x))}}};
                check(slide_r, right, rhs2, what);

                std::string ls = lbl(a + b + x);
                Diagram mleft{{la, lb, lx},
                              {ls},
                              {{Cell::merge_cn(la, lb, lc), Cell::id(lx)},
                               {Cell::merge_cn(lc, lx, ls)}}};
                Diagram mright{{la, lb, lx},
                               {ls},
                               {{Cell::id(la), Cell::merge_cn(lb, lx, lbl(b + x))},
                                {Cell::merge_cn(la, lbl(b + x), ls)}}};
                check(massoc, mleft, mright,
                      "residues " + la + "," + lb + "," + lx);
                Diagram sleft{{ls},
                              {la, lb, lx},
                              {{Cell::split_cn(ls, lc, lx)},
                               {Cell::split_cn(lc, la, lb), Cell::id(lx)}}};
                Diagram sright{{ls},
                               {la, lb, lx},
                               {{Cell::split_cn(ls, la, lbl(b + x))},
                                {Cell::id(la), Cell::split_cn(lbl(b + x), lb, lx)}}};
                check(scoassoc, sleft, sright,
                      "residue " + ls + " into " + la + "," + lb + "," + lx);
            }

    std::string note = " (n = " + std::to_string(n) + ")";
    RelationReport rep;
    for (const Family* f :
         {&slide_l, &slide_r, &cancel, &pop, &massoc, &scoassoc})
        rep.rows.push_back(f->row(note));
    return rep;
}

RelationReport graph_relations(const EvalContext& ctx) {
    const MergeSystem& ms = *ctx.ms;
    const RepGraph& g = ms.graph;
    bool star = (ctx.kind == CategoryContext::Kind::Star);
    std::string leg = star ? kStarLabel : g.generator;
    int cond = ctx.conductor();
    RelationReport rep;
    std::vector<std::string> skipped;
    auto has_split = [&ms](const std::string& a, const std::string& b) {
        return ms.split_mat.count({a, b}) > 0;
    };

    for (const auto& [a, b] : g.edges) {
        if (!has_split(a, b)) {
            skipped.push_back(a + " -> " + b);
            continue;
        }
        Diagram bubble{{b},
                       {b},
                       {{Cell::split_g(b, leg, a)}, {Cell::merge_g(leg, a, b)}}};
        ExactMatrix got = eval_diagram(bubble, ctx);
        bool ok = got == ExactMatrix::identity(ctx.word_dimension({b}), cond);
        rep.rows.push_back({"bubble " + a + " -> " + b, ok,
                            ok ? "" : "evaluates to\n" + got.str()});
    }

    for (const auto& node : g.nodes) {
        auto nbrs = g.out_neighbors(node.label);
        if (nbrs.size() < 2) continue;
        if (!std::all_of(nbrs.begin(), nbrs.end(), [&](const std::string& b) {
                return has_split(node.label, b);
            }))
            continue;
        bool ok = true;
        std::string detail;
        long pairs = 0;
        for (const auto& b : nbrs)
            for (const auto& b2 : nbrs) {
                if (b == b2) continue;
                ++pairs;
                Diagram cross{{b},
                              {b2},
                              {{Cell::split_g(b, leg, node.label)},
                               {Cell::merge_g(leg, node.label, b2)}}};
                if (ok && !eval_diagram(cross, ctx).is_zero()) {
                    ok = false;
                    detail = "split toward " + b + " then merge toward " + b2 +
                             " is nonzero";
                }
            }
        rep.rows.push_back({"orthogonality at " + node.label, ok,
                            ok ? std::to_string(pairs) + " ordered pairs"
                               : detail});
    }

    for (const auto& node : g.nodes) {
        auto nbrs = g.out_neighbors(node.label);
        if (nbrs.empty()) continue;
        if (!std::all_of(nbrs.begin(), nbrs.end(), [&](const std::string& b) {
                return has_split(node.label, b);
            }))
            continue;
        ObjectWord w{leg, node.label};
        Morphism sum = Morphism::zero(w, w, cond);
        for (const auto& b : nbrs)
            sum = sum + Morphism::of(Diagram{w,
                                             w,
                                             {{Cell::merge_g(leg, node.label, b)},
                                              {Cell::split_g(b, leg,
                                                             node.label)}}},
                                     cond);
        ExactMatrix got = eval_morphism(sum, ctx);
        bool ok = got == ExactMatrix::identity(ctx.word_dimension(w), cond);
        rep.rows.push_back({"split sum at " + node.label, ok,
                            ok ? std::to_string(nbrs.size()) + " terms"
                               : "evaluates to\n" + got.str()});
    }

    if (star) {
        const StarSystem& st = *ctx.star;
        auto cs = g.out_neighbors(g.nodes[0].label);
        bool ok = true;
        std::string detail;
        long pairs = 0;
        for (const auto& c : cs)
            for (const auto& c2 : cs) {
                ++pairs;
                Diagram d{{c},
                          {c2},
                          {{Cell::star_up(c)}, {Cell::star_down(c2)}}};
                ExactMatrix got = eval_diagram(d, ctx);
                bool want_id = (c == c2);
                bool fine = want_id
                                ? got == ExactMatrix::identity(
                                             ctx.word_dimension({c}), cond)
                                : got.is_zero();
                if (ok && !fine) {
                    ok = false;
                    detail = "inclusion of " + c + " then projection onto " +
                             c2 + " is wrong";
                }
            }
        rep.rows.push_back({"summand bubbles", ok,
                            ok ? std::to_string(pairs) + " ordered pairs"
                               : detail});
        (void)st;
        ObjectWord w{kStarLabel};
        Morphism sum = Morphism::zero(w, w, cond);
        for (const auto& c : cs)
            sum = sum + Morphism::of(
                            Diagram{w,
                                    w,
                                    {{Cell::star_down(c)}, {Cell::star_up(c)}}},
                            cond);
        ExactMatrix got = eval_morphism(sum, ctx);
        bool sum_ok =
            got == ExactMatrix::identity(ctx.word_dimension(w), cond);
        rep.rows.push_back({"defining strand resolution", sum_ok,
                            sum_ok ? std::to_string(cs.size()) + " summands"
                                   : "evaluates to\n" + got.str()});
    } else {
        int wmax = 5;
        if (ms.group.truncation) wmax = std::min(wmax, *ms.group.truncation);
        for (int w = 2; w <= wmax; ++w) {
            int k = w - 1;
            ObjectWord word(w, g.generator);
            Morphism sum = Morphism::zero(word, word, cond);
            long npaths = 0;
            for (const auto& node : g.nodes)
                for (const auto& p :
                     enumerate_paths(g, g.generator, node.label, k)) {
                    sum = sum +
                          Morphism::of(compose_diagrams(d_path(p, g),
                                                        u_path(p, g)),
                                       cond);
                    ++npaths;
                }
            ExactMatrix got = eval_morphism(sum, ctx);
            bool ok =
                got == ExactMatrix::identity(ctx.word_dimension(word), cond);
            rep.rows.push_back(
                {"resolution of identity at width " + std::to_string(w), ok,
                 ok ? std::to_string(npaths) + " paths of length " +
                          std::to_string(k)
                    : "evaluates to\n" + got.str()});
        }
    }

    if (!skipped.empty()) {
        std::string names;
        for (const auto& s : skipped) names += " " + s + ";";
        rep.rows.push_back({"truncated boundary", g.truncated,
                            "edges without split data:" + names});
    }
    return rep;
}

}  // namespace

RelationReport check_category_relations(const EvalContext& ctx) {
    if (ctx.kind == CategoryContext::Kind::CnIrr) return cn_relations(ctx);
    return graph_relations(ctx);
}

std::pair<bool, Scalar> schur_scalar(const Morphism& m, const EvalContext& ctx) {
    if (m.source.size() != 1 || m.target.size() != 1)
        throw std::invalid_argument(
            "the scalar extractor needs single-letter boundary words, got " +
            word_str(m.source) + " -> " + word_str(m.target));
    ExactMatrix got = eval_morphism(m, ctx);
    if (m.source[0] != m.target[0]) {
        if (!got.is_zero())
            throw std::domain_error(
                "a morphism between distinct simples evaluated to a nonzero "
                "matrix; the module data is inconsistent");
        return {false, Scalar(0L, got.conductor())};
    }
    auto alpha = got.scalar_multiple_of_identity();
    if (!alpha)
        throw std::domain_error(
            "an endomorphism of a simple did not evaluate to a scalar "
            "multiple of the identity; the module data is inconsistent");
    return {true, *alpha};
}

}  // namespace repcat
