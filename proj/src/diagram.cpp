#include "repcat/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace repcat {

namespace {

ObjectWord concat_inputs(const std::vector<Cell>& slice) {
    ObjectWord w;
    for (const auto& c : slice) w.insert(w.end(), c.in.begin(), c.in.end());
    return w;
}

ObjectWord concat_outputs(const std::vector<Cell>& slice) {
    ObjectWord w;
    for (const auto& c : slice) w.insert(w.end(), c.out.begin(), c.out.end());
    return w;
}

long parse_residue(const std::string& label, int n, ValidationReport* rep) {
    try {
        size_t used = 0;
        long v = std::stol(label, &used);
        // The spelling must be canonical ("3", never "03" or "+3") so that
        // syntactic diagram comparison coincides with residue equality.
        if (used == label.size() && v >= 0 && v < n &&
            std::to_string(v) == label)
            return v;
    } catch (...) {
    }
    if (rep)
        rep->fail("label \"" + label + "\" is not a residue mod " +
                  std::to_string(n));
    else
        throw std::invalid_argument("label \"" + label +
                                    "\" is not a residue mod " +
                                    std::to_string(n));
    return -1;
}

}  // namespace

bool Cell::operator<(const Cell& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (in != o.in) return in < o.in;
    return out < o.out;
}

std::string Cell::str() const {
    auto join = [](const ObjectWord& w) {
        std::string s;
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) s += ",";
            s += w[i];
        }
        return s;
    };
    switch (kind) {
        case Kind::Id:
            return "id[" + join(in) + "]";
        case Kind::MergeCn:
        case Kind::MergeG:
            return "m[" + join(in) + "->" + join(out) + "]";
        case Kind::SplitCn:
        case Kind::SplitG:
            return "s[" + join(in) + "->" + join(out) + "]";
        case Kind::StarDown:
            return "down[" + join(out) + "]";
        case Kind::StarUp:
            return "up[" + join(in) + "]";
    }
    return "?";
}

int Diagram::cell_count() const {
    int n = 0;
    for (const auto& s : slices)
        for (const auto& c : s)
            if (!c.is_id()) ++n;
    return n;
}

Diagram Diagram::packed() const {
    // Greedy interchange sinking: repeatedly move a cell one slice down when
    // it sits directly on identity wires, then drop slices containing only
    // identities.  Every presentation of the same planar pasting reaches the
    // same fixpoint (each cell ends at its earliest possible slice, and the
    // horizontal order within a slice is forced by wire positions), so packed
    // forms compare by plain slice equality.
    ObjectWord word = source;
    for (const auto& s : slices) {
        if (concat_inputs(s) != word)
            throw std::logic_error("packed(): slice boundary mismatch");
        word = concat_outputs(s);
    }
    if (word != target)
        throw std::logic_error("packed(): diagram does not end at its target");

    std::vector<std::vector<Cell>> rows = slices;
    bool moved = true;
    while (moved) {
        moved = false;
        for (size_t t = 1; t < rows.size() && !moved; ++t) {
            std::vector<size_t> below_start(rows[t - 1].size() + 1, 0);
            for (size_t j = 0; j < rows[t - 1].size(); ++j)
                below_start[j + 1] = below_start[j] + rows[t - 1][j].out.size();
            size_t p = 0;
            for (size_t i = 0; i < rows[t].size(); ++i) {
                const Cell c = rows[t][i];
                size_t w = c.in.size();
                if (!c.is_id()) {
                    size_t j = 0;
                    while (j < rows[t - 1].size() && below_start[j] < p) ++j;
                    bool all_id = below_start[j] == p && j + w <= rows[t - 1].size();
                    for (size_t k = 0; all_id && k < w; ++k)
                        all_id = rows[t - 1][j + k].is_id();
                    if (all_id) {
                        rows[t - 1].erase(rows[t - 1].begin() + j,
                                          rows[t - 1].begin() + j + w);
                        rows[t - 1].insert(rows[t - 1].begin() + j, c);
                        rows[t].erase(rows[t].begin() + i);
                        std::vector<Cell> ids;
                        for (const auto& label : c.out)
                            ids.push_back(Cell::id(label));
                        rows[t].insert(rows[t].begin() + i, ids.begin(),
                                       ids.end());
                        moved = true;
                        break;
                    }
                }
                p += w;
            }
        }
    }

    Diagram out;
    out.source = source;
    out.target = target;
    for (auto& row : rows) {
        bool all_id = true;
        for (const auto& c : row) all_id = all_id && c.is_id();
        if (!all_id) out.slices.push_back(std::move(row));
    }
    return out;
}

bool Diagram::operator==(const Diagram& o) const {
    if (source != o.source || target != o.target) return false;
    Diagram a = packed(), b = o.packed();
    return a.slices == b.slices;
}

bool Diagram::operator<(const Diagram& o) const {
    if (source != o.source) return source < o.source;
    if (target != o.target) return target < o.target;
    return slices < o.slices;
}

std::string Diagram::str() const {
    Diagram p = packed();
    if (p.slices.empty()) return "id" + word_str(source);
    std::string out;
    for (size_t t = 0; t < p.slices.size(); ++t) {
        if (t) out += " ; ";
        for (size_t i = 0; i < p.slices[t].size(); ++i) {
            if (i) out += "*";
            out += p.slices[t][i].str();
        }
    }
    return out;
}

Diagram compose_diagrams(const Diagram& f, const Diagram& g) {
    if (g.target != f.source)
        throw std::invalid_argument("compose boundary mismatch: upper source " +
                                    word_str(f.source) + " vs lower target " +
                                    word_str(g.target));
    Diagram r;
    r.source = g.source;
    r.target = f.target;
    r.slices = g.slices;
    r.slices.insert(r.slices.end(), f.slices.begin(), f.slices.end());
    return r;
}

Diagram tensor_diagrams(const Diagram& f, const Diagram& g) {
    Diagram r;
    r.source = f.source;
    r.source.insert(r.source.end(), g.source.begin(), g.source.end());
    r.target = f.target;
    r.target.insert(r.target.end(), g.target.begin(), g.target.end());
    size_t h = std::max(f.slices.size(), g.slices.size());
    auto id_row = [](const ObjectWord& w) {
        std::vector<Cell> row;
        for (const auto& label : w) row.push_back(Cell::id(label));
        return row;
    };
    for (size_t t = 0; t < h; ++t) {
        std::vector<Cell> row = t < f.slices.size() ? f.slices[t]
                                                    : id_row(f.target);
        std::vector<Cell> right = t < g.slices.size() ? g.slices[t]
                                                      : id_row(g.target);
        row.insert(row.end(), right.begin(), right.end());
        r.slices.push_back(std::move(row));
    }
    return r;
}

Morphism Morphism::zero(const ObjectWord& src, const ObjectWord& tgt,
                        int conductor) {
    Morphism m;
    m.source = src;
    m.target = tgt;
    m.conductor_ = conductor;
    return m;
}

Morphism Morphism::of(const Diagram& d, int conductor) {
    Morphism m = zero(d.source, d.target, conductor);
    m.terms[d.packed()] = Scalar(1L, conductor);
    return m;
}

Morphism Morphism::identity(const ObjectWord& w, int conductor) {
    return of(Diagram::identity(w), conductor);
}

Morphism Morphism::operator+(const Morphism& o) const {
    if (source != o.source || target != o.target)
        throw std::invalid_argument("sum boundary mismatch: " +
                                    word_str(source) + "->" + word_str(target) +
                                    " vs " + word_str(o.source) + "->" +
                                    word_str(o.target));
    Morphism r = *this;
    if (r.conductor_ == 1) r.conductor_ = o.conductor_;
    for (const auto& [d, c] : o.terms) {
        auto it = r.terms.find(d);
        if (it == r.terms.end()) {
            r.terms[d] = c;
        } else {
            Scalar s = it->second + c;
            if (s.is_zero())
                r.terms.erase(it);
            else
                it->second = s;
        }
    }
    return r;
}

Morphism Morphism::scaled(const Scalar& s) const {
    Morphism r = zero(source, target, conductor_);
    if (s.conductor() != 1) r.conductor_ = s.conductor();
    if (s.is_zero()) return r;
    for (const auto& [d, c] : terms) r.terms[d] = c * s;
    return r;
}

bool Morphism::operator==(const Morphism& o) const {
    return source == o.source && target == o.target && terms == o.terms;
}

std::string Morphism::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [d, coeff] : terms) {
        // One printed term per monomial of the coefficient, so the printed
        // form stays inside the DSL grammar (whose scalars are single
        // products) and re-parses to the same morphism.
        const auto& c = coeff.coeffs();
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            bool neg = c[k] < 0;
            Rational mag = neg ? Rational(-c[k]) : c[k];
            std::string prefix;
            if (mag != 1) prefix = mag.get_str() + " ";
            if (k > 0) prefix += (k == 1 ? std::string("z") : "z^" + std::to_string(k)) + " ";
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            out += prefix + d.str();
        }
    }
    return out;
}

Morphism compose(const Morphism& f, const Morphism& g) {
    if (g.target != f.source)
        throw std::invalid_argument("compose boundary mismatch: upper source " +
                                    word_str(f.source) + " vs lower target " +
                                    word_str(g.target));
    Morphism r = Morphism::zero(g.source, f.target,
                                f.conductor_ == 1 ? g.conductor_ : f.conductor_);
    for (const auto& [df, cf] : f.terms)
        for (const auto& [dg, cg] : g.terms) {
            Diagram d = compose_diagrams(df, dg).packed();
            auto it = r.terms.find(d);
            Scalar add = cf * cg;
            if (it == r.terms.end()) {
                if (!add.is_zero()) r.terms[d] = add;
            } else {
                Scalar s = it->second + add;
                if (s.is_zero())
                    r.terms.erase(it);
                else
                    it->second = s;
            }
        }
    return r;
}

Morphism tensor(const Morphism& f, const Morphism& g) {
    ObjectWord src = f.source, tgt = f.target;
    src.insert(src.end(), g.source.begin(), g.source.end());
    tgt.insert(tgt.end(), g.target.begin(), g.target.end());
    Morphism r = Morphism::zero(src, tgt,
                                f.conductor_ == 1 ? g.conductor_ : f.conductor_);
    for (const auto& [df, cf] : f.terms)
        for (const auto& [dg, cg] : g.terms) {
            Diagram d = tensor_diagrams(df, dg).packed();
            auto it = r.terms.find(d);
            Scalar add = cf * cg;
            if (it == r.terms.end()) {
                if (!add.is_zero()) r.terms[d] = add;
            } else {
                Scalar s = it->second + add;
                if (s.is_zero())
                    r.terms.erase(it);
                else
                    it->second = s;
            }
        }
    return r;
}

namespace {
void check_path(const Path& p, const RepGraph& g) {
    if (p.nodes.empty() || p.nodes[0] != g.generator)
        throw std::invalid_argument("path " + p.str() +
                                    " does not start at the generator node " +
                                    g.generator);
    for (size_t i = 0; i + 1 < p.nodes.size(); ++i)
        if (!g.has_edge(p.nodes[i], p.nodes[i + 1]))
            throw std::invalid_argument("path " + p.str() + " uses missing edge " +
                                        p.nodes[i] + "->" + p.nodes[i + 1]);
}
}  // namespace

Diagram u_path(const Path& p, const RepGraph& g) {
    check_path(p, g);
    int k = p.length();
    const std::string& gen = g.generator;
    Diagram d;
    d.source.assign(k + 1, gen);
    d.target = {p.nodes.back()};
    // Slice j merges the accumulated strand (rightmost) with the generator
    // strand to its left: id^(k-1-j) (x) m[gen,p_j -> p_{j+1}].
    for (int j = 0; j < k; ++j) {
        std::vector<Cell> row;
        for (int i = 0; i < k - 1 - j; ++i) row.push_back(Cell::id(gen));
        row.push_back(Cell::merge_g(gen, p.nodes[j], p.nodes[j + 1]));
        d.slices.push_back(std::move(row));
    }
    return d;
}

Diagram d_path(const Path& p, const RepGraph& g) {
    check_path(p, g);
    int k = p.length();
    const std::string& gen = g.generator;
    Diagram d;
    d.source = {p.nodes.back()};
    d.target.assign(k + 1, gen);
    // Vertical mirror of u_path: slice j splits at position j,
    // id^(x)j (x) s[p_{k-j} -> gen,p_{k-1-j}].
    for (int j = 0; j < k; ++j) {
        std::vector<Cell> row;
        for (int i = 0; i < j; ++i) row.push_back(Cell::id(gen));
        row.push_back(Cell::split_g(p.nodes[k - j], gen, p.nodes[k - j - 1]));
        d.slices.push_back(std::move(row));
    }
    return d;
}

namespace {
std::string residue_label(long v, int n) {
    long r = v % n;
    if (r < 0) r += n;
    return std::to_string(r);
}
}  // namespace

Diagram funnel_between_cn(const ObjectWord& source, const ObjectWord& target,
                          int n) {
    long ssum = 0, tsum = 0;
    for (const auto& l : source) ssum += parse_residue(l, n, nullptr);
    for (const auto& l : target) tsum += parse_residue(l, n, nullptr);
    if ((ssum - tsum) % n != 0)
        throw std::invalid_argument("no funnel from " + word_str(source) +
                                    " to " + word_str(target) +
                                    ": residue sums differ mod " +
                                    std::to_string(n));
    if (source.empty() != target.empty())
        throw std::invalid_argument(
            "no diagram connects the empty word with a nonempty word");
    Diagram d;
    d.source = source;
    d.target = target;
    if (source.empty()) return d;

    // Left-nested merges always consuming positions (0,1).
    ObjectWord cur = source;
    while (cur.size() > 1) {
        long a = parse_residue(cur[0], n, nullptr);
        long b = parse_residue(cur[1], n, nullptr);
        std::string c = residue_label(a + b, n);
        std::vector<Cell> row{Cell::merge_cn(cur[0], cur[1], c)};
        for (size_t i = 2; i < cur.size(); ++i) row.push_back(Cell::id(cur[i]));
        d.slices.push_back(std::move(row));
        cur.erase(cur.begin());
        cur[0] = c;
    }
    // Left-nested splits peeling the last remaining target letter, so the
    // target is built right to left and every split stays at position 0.
    // Strands already peeled ride along as identities to the right.
    ObjectWord remaining = target;
    while (remaining.size() > 1) {
        std::string last = remaining.back();
        remaining.pop_back();
        long rest = 0;
        for (const auto& l : remaining) rest += parse_residue(l, n, nullptr);
        long peel = parse_residue(last, n, nullptr);
        std::vector<Cell> row{Cell::split_cn(residue_label(rest + peel, n),
                                             residue_label(rest, n), last)};
        size_t peeled = target.size() - remaining.size() - 1;
        for (size_t i = 0; i < peeled; ++i)
            row.push_back(Cell::id(target[remaining.size() + 1 + i]));
        d.slices.push_back(std::move(row));
    }
    return d;
}

Diagram funnel_cn(const ObjectWord& word, int n) {
    long total = 0;
    for (const auto& l : word) total += parse_residue(l, n, nullptr);
    if (word.empty()) return Diagram::identity({});
    ObjectWord target;
    if (total == 0)
        target = {"0"};
    else
        target.assign(static_cast<size_t>(total), "1");
    return funnel_between_cn(word, target, n);
}

int tensor_factor_delta(const Diagram& d) {
    int delta = 0;
    for (const auto& slice : d.slices)
        for (const auto& c : slice) {
            if (c.kind == Cell::Kind::SplitCn || c.kind == Cell::Kind::SplitG)
                ++delta;
            if (c.kind == Cell::Kind::MergeCn || c.kind == Cell::Kind::MergeG)
                --delta;
        }
    return delta;
}

std::string ValidationReport::str() const {
    if (pass) return "valid";
    std::string out = "invalid:";
    for (const auto& p : problems) out += "\n  " + p;
    return out;
}

ValidationReport validate(const Diagram& d, const CategoryContext& ctx) {
    ValidationReport rep;
    auto check_label = [&](const std::string& label) {
        switch (ctx.kind) {
            case CategoryContext::Kind::CnIrr:
                parse_residue(label, ctx.n, &rep);
                break;
            case CategoryContext::Kind::Dgrams:
                if (!ctx.graph->has_node(label))
                    rep.fail("label \"" + label + "\" is not a graph node");
                break;
            case CategoryContext::Kind::Star:
                if (label != kStarLabel && !ctx.graph->has_node(label))
                    rep.fail("label \"" + label +
                             "\" is neither a graph node nor " + kStarLabel);
                break;
        }
    };
    auto check_cell = [&](const Cell& c) {
        for (const auto& l : c.in) check_label(l);
        for (const auto& l : c.out) check_label(l);
        if (!rep.pass) return;
        switch (c.kind) {
            case Cell::Kind::Id:
                break;
            case Cell::Kind::MergeCn:
            case Cell::Kind::SplitCn: {
                if (ctx.kind != CategoryContext::Kind::CnIrr) {
                    rep.fail("cell " + c.str() +
                             " only exists in the cyclic-residue category");
                    break;
                }
                const ObjectWord& pair =
                    c.kind == Cell::Kind::MergeCn ? c.in : c.out;
                const ObjectWord& single =
                    c.kind == Cell::Kind::MergeCn ? c.out : c.in;
                long a = parse_residue(pair[0], ctx.n, nullptr);
                long b = parse_residue(pair[1], ctx.n, nullptr);
                long s = parse_residue(single[0], ctx.n, nullptr);
                if ((a + b - s) % ctx.n != 0)
                    rep.fail("cell " + c.str() + " violates " + pair[0] + "+" +
                             pair[1] + " = " + single[0] + " (mod " +
                             std::to_string(ctx.n) + ")");
                break;
            }
            case Cell::Kind::MergeG:
            case Cell::Kind::SplitG: {
                if (ctx.kind == CategoryContext::Kind::CnIrr) {
                    rep.fail("cell " + c.str() +
                             " only exists in the graph categories");
                    break;
                }
                const ObjectWord& pair = c.kind == Cell::Kind::MergeG ? c.in : c.out;
                const ObjectWord& single =
                    c.kind == Cell::Kind::MergeG ? c.out : c.in;
                std::string expected_first =
                    ctx.kind == CategoryContext::Kind::Star ? kStarLabel
                                                            : ctx.graph->generator;
                if (pair[0] != expected_first) {
                    rep.fail("cell " + c.str() + " must have first leg " +
                             expected_first);
                    break;
                }
                if (!ctx.graph->has_edge(pair[1], single[0]))
                    rep.fail("cell " + c.str() + " needs edge " + pair[1] +
                             "->" + single[0]);
                break;
            }
            case Cell::Kind::StarDown:
            case Cell::Kind::StarUp: {
                if (ctx.kind != CategoryContext::Kind::Star) {
                    rep.fail("cell " + c.str() +
                             " only exists in the star category");
                    break;
                }
                const std::string& c_label =
                    c.kind == Cell::Kind::StarDown ? c.out[0] : c.in[0];
                std::string unit = ctx.graph->nodes.at(0).label;
                if (!ctx.graph->has_edge(unit, c_label))
                    rep.fail("cell " + c.str() + " needs node " + c_label +
                             " adjacent to the unit node " + unit);
                break;
            }
        }
    };

    ObjectWord word = d.source;
    for (size_t t = 0; t < d.slices.size(); ++t) {
        ObjectWord in = concat_inputs(d.slices[t]);
        if (in != word) {
            rep.fail("slice " + std::to_string(t) + " expects " + word_str(in) +
                     " but the boundary is " + word_str(word));
            return rep;
        }
        for (const auto& c : d.slices[t]) check_cell(c);
        word = concat_outputs(d.slices[t]);
    }
    if (word != d.target)
        rep.fail("diagram ends at " + word_str(word) + " but declares target " +
                 word_str(d.target));
    for (const auto& l : d.source) check_label(l);
    return rep;
}

ValidationReport validate(const Morphism& m, const CategoryContext& ctx) {
    ValidationReport rep;
    for (const auto& [d, c] : m.terms) {
        (void)c;
        if (d.source != m.source || d.target != m.target)
            rep.fail("term boundary " + word_str(d.source) + "->" +
                     word_str(d.target) + " differs from morphism boundary");
        ValidationReport inner = validate(d, ctx);
        if (!inner.pass)
            for (const auto& p : inner.problems) rep.fail(p);
    }
    return rep;
}

}  // namespace repcat
