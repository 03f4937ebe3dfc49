#include "repcat/tl.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace repcat {

namespace {

std::string point_name(const PlanarDiagram& d, int circ) {
    if (circ < d.bottom) return "b" + std::to_string(circ + 1);
    return "t" + std::to_string(d.bottom + d.top - circ);
}

int parse_point(const std::string& name, int bottom, int top) {
    bool ok = name.size() >= 2 && (name[0] == 'b' || name[0] == 't');
    int idx = 0;
    if (ok) {
        try {
            size_t used = 0;
            idx = std::stoi(name.substr(1), &used);
            ok = used == name.size() - 1;
        } catch (...) {
            ok = false;
        }
    }
    if (!ok)
        throw std::invalid_argument("boundary point \"" + name +
                                    "\" must look like b3 or t1");
    int count = name[0] == 'b' ? bottom : top;
    if (idx < 1 || idx > count)
        throw std::invalid_argument(
            "boundary point \"" + name + "\" is out of range for " +
            std::to_string(bottom) + " bottom and " + std::to_string(top) +
            " top points");
    return name[0] == 'b' ? idx - 1 : bottom + top - idx;
}

void require_planar(const PlanarDiagram& d) {
    int n = d.bottom + d.top;
    if (n % 2 != 0)
        throw std::invalid_argument(
            "a perfect pairing needs an even number of boundary points, got " +
            std::to_string(n));
    if (static_cast<int>(d.pair_with.size()) != n)
        throw std::invalid_argument("pairing covers " +
                                    std::to_string(d.pair_with.size()) +
                                    " points but the boundary has " +
                                    std::to_string(n));
    for (int p = 0; p < n; ++p) {
        int q = d.pair_with[p];
        if (q < 0 || q >= n || q == p || d.pair_with[q] != p)
            throw std::invalid_argument("point " + point_name(d, p) +
                                        " is not in exactly one pair");
    }
    std::vector<int> open;
    for (int p = 0; p < n; ++p) {
        if (d.pair_with[p] > p) {
            open.push_back(p);
            continue;
        }
        if (open.empty() || open.back() != d.pair_with[p])
            throw std::invalid_argument(
                "pairing is not planar: the arc ending at " +
                point_name(d, p) + " crosses an open arc");
        open.pop_back();
    }
}

// All perfect non-crossing matchings of the index range [lo, hi).
std::vector<std::vector<std::pair<int, int>>> segment_matchings(int lo,
                                                                int hi) {
    std::vector<std::vector<std::pair<int, int>>> out;
    if (lo >= hi) {
        out.push_back({});
        return out;
    }
    for (int m = lo + 1; m < hi; m += 2) {
        auto inner = segment_matchings(lo + 1, m);
        auto outer = segment_matchings(m + 1, hi);
        for (const auto& in : inner)
            for (const auto& os : outer) {
                std::vector<std::pair<int, int>> comb{{lo, m}};
                comb.insert(comb.end(), in.begin(), in.end());
                comb.insert(comb.end(), os.begin(), os.end());
                out.push_back(std::move(comb));
            }
    }
    return out;
}

TLMorphism lifted_morphism(const TLMorphism& x, int conductor) {
    if (x.delta.conductor() == conductor) return x;
    TLMorphism out;
    out.bottom = x.bottom;
    out.top = x.top;
    out.delta = x.delta.lifted(conductor);
    for (const auto& [d, c] : x.terms) out.terms.emplace(d, c.lifted(conductor));
    return out;
}

int common_conductor(const TLMorphism& a, const TLMorphism& b) {
    return std::lcm(a.delta.conductor(), b.delta.conductor());
}

// Glue `above` onto `below` along the shared row and trace the strands;
// returns the composite pairing and the number of closed loops removed.
std::pair<PlanarDiagram, int> glue(const PlanarDiagram& above,
                                   const PlanarDiagram& below) {
    PlanarDiagram out;
    out.bottom = below.bottom;
    out.top = above.top;
    out.pair_with.assign(out.bottom + out.top, -1);
    std::vector<char> seen_above(above.bottom + above.top, 0);
    std::vector<char> seen_below(below.bottom + below.top, 0);
    auto below_top_circ = [&](int j) {
        return below.bottom + below.top - 1 - j;
    };
    // Follow the strand leaving an endpoint until it exits the composite
    // boundary; returns the exit as a composite circular index.
    auto walk = [&](bool in_above, int p) {
        while (true) {
            (in_above ? seen_above : seen_below)[p] = 1;
            int q = (in_above ? above : below).pair_with[p];
            (in_above ? seen_above : seen_below)[q] = 1;
            if (in_above) {
                if (q >= above.bottom) {
                    int j = above.bottom + above.top - 1 - q;
                    return out.bottom + out.top - 1 - j;
                }
                p = below_top_circ(q);
                in_above = false;
            } else {
                if (q < below.bottom) return q;
                p = below.bottom + below.top - 1 - q;
                in_above = true;
            }
        }
    };
    for (int i = 0; i < below.bottom; ++i) {
        if (seen_below[i]) continue;
        int far = walk(false, i);
        out.pair_with[i] = far;
        out.pair_with[far] = i;
    }
    for (int j = 0; j < above.top; ++j) {
        int start = above.bottom + above.top - 1 - j;
        if (seen_above[start]) continue;
        int self = out.bottom + out.top - 1 - j;
        int far = walk(true, start);
        out.pair_with[self] = far;
        out.pair_with[far] = self;
    }
    int loops = 0;
    for (int j = 0; j < below.top; ++j) {
        int cur = below_top_circ(j);
        if (seen_below[cur]) continue;
        ++loops;
        bool in_above = false;
        while (!(in_above ? seen_above : seen_below)[cur]) {
            (in_above ? seen_above : seen_below)[cur] = 1;
            int q = (in_above ? above : below).pair_with[cur];
            (in_above ? seen_above : seen_below)[q] = 1;
            if (in_above) {
                cur = below_top_circ(q);
                in_above = false;
            } else {
                cur = below.bottom + below.top - 1 - q;
                in_above = true;
            }
        }
    }
    require_planar(out);
    return {out, loops};
}

}  // namespace

PlanarDiagram PlanarDiagram::from_pairs(
    int bottom, int top,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    if (bottom < 0 || top < 0)
        throw std::invalid_argument("boundary point counts cannot be negative");
    PlanarDiagram d;
    d.bottom = bottom;
    d.top = top;
    d.pair_with.assign(bottom + top, -1);
    for (const auto& [pn, qn] : pairs) {
        int p = parse_point(pn, bottom, top);
        int q = parse_point(qn, bottom, top);
        if (p == q)
            throw std::invalid_argument("point " + pn +
                                        " cannot pair with itself");
        if (d.pair_with[p] != -1 || d.pair_with[q] != -1)
            throw std::invalid_argument("point " + (d.pair_with[p] != -1 ? pn : qn) +
                                        " appears in two pairs");
        d.pair_with[p] = q;
        d.pair_with[q] = p;
    }
    require_planar(d);
    return d;
}

PlanarDiagram PlanarDiagram::identity(int k) {
    if (k < 0)
        throw std::invalid_argument("boundary point counts cannot be negative");
    PlanarDiagram d;
    d.bottom = k;
    d.top = k;
    d.pair_with.assign(2 * k, -1);
    for (int i = 0; i < k; ++i) {
        d.pair_with[i] = 2 * k - 1 - i;
        d.pair_with[2 * k - 1 - i] = i;
    }
    return d;
}

PlanarDiagram PlanarDiagram::cup() {
    PlanarDiagram d;
    d.bottom = 0;
    d.top = 2;
    d.pair_with = {1, 0};
    return d;
}

PlanarDiagram PlanarDiagram::cap() {
    PlanarDiagram d;
    d.bottom = 2;
    d.top = 0;
    d.pair_with = {1, 0};
    return d;
}

PlanarDiagram PlanarDiagram::mirrored() const {
    PlanarDiagram d;
    d.bottom = top;
    d.top = bottom;
    d.pair_with.assign(bottom + top, -1);
    // Reflecting swaps bi with ti while keeping the left-to-right order, so
    // old circular index c maps to bottom + top - 1 - c.
    int n = bottom + top;
    for (int p = 0; p < n; ++p) d.pair_with[n - 1 - p] = n - 1 - pair_with[p];
    return d;
}

bool PlanarDiagram::operator<(const PlanarDiagram& o) const {
    return std::tie(bottom, top, pair_with) <
           std::tie(o.bottom, o.top, o.pair_with);
}

std::string PlanarDiagram::str() const {
    int n = bottom + top;
    std::vector<char> done(n, 0);
    std::string out;
    auto emit = [&](int p) {
        if (done[p]) return;
        int q = pair_with[p];
        done[p] = done[q] = 1;
        if (p < bottom && q == n - 1 - p && q >= bottom) {
            out += "(" + std::to_string(p + 1) + ")";
            return;
        }
        out += "(" + point_name(*this, p) + " " + point_name(*this, q) + ")";
    };
    for (int i = 0; i < bottom; ++i) emit(i);
    for (int j = 1; j <= top; ++j) emit(n - j);
    return out.empty() ? "()" : out;
}

TLMorphism TLMorphism::of(const PlanarDiagram& d, const Scalar& delta) {
    TLMorphism m;
    m.bottom = d.bottom;
    m.top = d.top;
    m.delta = delta;
    m.terms.emplace(d, Scalar(1, delta.conductor()));
    return m;
}

TLMorphism TLMorphism::zero(int bottom, int top, const Scalar& delta) {
    TLMorphism m;
    m.bottom = bottom;
    m.top = top;
    m.delta = delta;
    return m;
}

TLMorphism TLMorphism::scaled(const Scalar& s) const {
    int cond = std::lcm(delta.conductor(), s.conductor());
    TLMorphism out = lifted_morphism(*this, cond);
    Scalar f = s.lifted(cond);
    for (auto it = out.terms.begin(); it != out.terms.end();) {
        it->second = it->second * f;
        it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
    }
    return out;
}

TLMorphism TLMorphism::operator+(const TLMorphism& o) const {
    if (bottom != o.bottom || top != o.top)
        throw std::invalid_argument(
            "sum shape mismatch: " + std::to_string(bottom) + " -> " +
            std::to_string(top) + " vs " + std::to_string(o.bottom) + " -> " +
            std::to_string(o.top));
    int cond = common_conductor(*this, o);
    TLMorphism a = lifted_morphism(*this, cond);
    TLMorphism b = lifted_morphism(o, cond);
    if (a.delta != b.delta)
        throw std::invalid_argument("loop values differ: " + delta.str() +
                                    " vs " + o.delta.str());
    for (const auto& [d, c] : b.terms) {
        auto [it, fresh] = a.terms.emplace(d, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) a.terms.erase(it);
        }
    }
    return a;
}

TLMorphism TLMorphism::operator-(const TLMorphism& o) const {
    return *this + o.scaled(Scalar(-1, o.delta.conductor()));
}

bool TLMorphism::operator==(const TLMorphism& o) const {
    int cond = common_conductor(*this, o);
    TLMorphism a = lifted_morphism(*this, cond);
    TLMorphism b = lifted_morphism(o, cond);
    return a.bottom == b.bottom && a.top == b.top && a.delta == b.delta &&
           a.terms == b.terms;
}

std::string TLMorphism::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [d, coeff] : terms) {
        const auto& c = coeff.coeffs();
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            bool neg = c[k] < 0;
            Rational mag = neg ? Rational(-c[k]) : c[k];
            std::string prefix;
            if (mag != 1) prefix = mag.get_str() + " ";
            if (k > 0)
                prefix +=
                    (k == 1 ? std::string("z") : "z^" + std::to_string(k)) +
                    " ";
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            out += prefix + d.str();
        }
    }
    return out;
}

std::vector<PlanarDiagram> tl_basis(int bottom, int top) {
    if (bottom < 0 || top < 0)
        throw std::invalid_argument("boundary point counts cannot be negative");
    std::vector<PlanarDiagram> out;
    if ((bottom + top) % 2 != 0) return out;
    for (const auto& pairs : segment_matchings(0, bottom + top)) {
        PlanarDiagram d;
        d.bottom = bottom;
        d.top = top;
        d.pair_with.assign(bottom + top, -1);
        for (const auto& [p, q] : pairs) {
            d.pair_with[p] = q;
            d.pair_with[q] = p;
        }
        out.push_back(std::move(d));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PlanarDiagram parse_planar(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> pairs;
    int bottom = 0, top = 0;
    auto bump = [&](const std::string& tok) {
        bool named = tok.size() >= 2 && (tok[0] == 'b' || tok[0] == 't');
        std::string digits = named ? tok.substr(1) : tok;
        size_t used = 0;
        int idx = 0;
        try {
            idx = std::stoi(digits, &used);
        } catch (...) {
            used = 0;
        }
        if (used != digits.size() || idx < 1)
            throw std::invalid_argument("pairing token \"" + tok +
                                        "\" must be a strand number or look "
                                        "like b3 or t1");
        if (!named || tok[0] == 'b') bottom = std::max(bottom, idx);
        if (!named || tok[0] == 't') top = std::max(top, idx);
    };
    size_t pos = 0;
    bool empty_marker = false;
    while (true) {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
        if (pos == text.size()) break;
        if (text[pos] != '(')
            throw std::invalid_argument("expected '(' in pairing \"" + text +
                                        "\"");
        size_t close = text.find(')', ++pos);
        if (close == std::string::npos)
            throw std::invalid_argument("missing ')' in pairing \"" + text +
                                        "\"");
        std::istringstream group(text.substr(pos, close - pos));
        pos = close + 1;
        std::vector<std::string> toks;
        for (std::string t; group >> t;) toks.push_back(t);
        if (toks.empty()) {
            empty_marker = true;
            continue;
        }
        if (toks.size() == 1) {
            if (!std::isdigit(static_cast<unsigned char>(toks[0][0])))
                throw std::invalid_argument(
                    "a through strand group reads (i), got \"(" + toks[0] +
                    ")\"");
            bump(toks[0]);
            pairs.push_back({"b" + toks[0], "t" + toks[0]});
            continue;
        }
        if (toks.size() != 2)
            throw std::invalid_argument("an arc joins exactly two points, got "
                                        "\"(" + text + ")\" group with " +
                                        std::to_string(toks.size()));
        bump(toks[0]);
        bump(toks[1]);
        pairs.push_back({toks[0], toks[1]});
    }
    if (pairs.empty() && !empty_marker)
        throw std::invalid_argument("empty pairing; the empty diagram is ()");
    return PlanarDiagram::from_pairs(bottom, top, pairs);
}

TLMorphism tl_compose(const TLMorphism& f, const TLMorphism& g) {
    if (f.bottom != g.top)
        throw std::invalid_argument(
            "compose boundary mismatch: upper diagram reads " +
            std::to_string(f.bottom) + " points vs lower top " +
            std::to_string(g.top));
    int cond = common_conductor(f, g);
    TLMorphism a = lifted_morphism(f, cond);
    TLMorphism b = lifted_morphism(g, cond);
    if (a.delta != b.delta)
        throw std::invalid_argument("loop values differ: " + f.delta.str() +
                                    " vs " + g.delta.str());
    TLMorphism out = TLMorphism::zero(b.bottom, a.top, a.delta);
    for (const auto& [da, ca] : a.terms)
        for (const auto& [db, cb] : b.terms) {
            auto [comp, loops] = glue(da, db);
            Scalar c = ca * cb;
            for (int i = 0; i < loops; ++i) c = c * a.delta;
            auto [it, fresh] = out.terms.emplace(comp, c);
            if (!fresh) {
                it->second = it->second + c;
                if (it->second.is_zero()) out.terms.erase(it);
            }
        }
    return out;
}

TLMorphism tl_tensor(const TLMorphism& f, const TLMorphism& g) {
    int cond = common_conductor(f, g);
    TLMorphism a = lifted_morphism(f, cond);
    TLMorphism b = lifted_morphism(g, cond);
    if (a.delta != b.delta)
        throw std::invalid_argument("loop values differ: " + f.delta.str() +
                                    " vs " + g.delta.str());
    TLMorphism out =
        TLMorphism::zero(a.bottom + b.bottom, a.top + b.top, a.delta);
    int n = out.bottom + out.top;
    // Composite circular index of a point of the left (resp. right) factor.
    auto remap_left = [&](const PlanarDiagram& d, int p) {
        if (p < d.bottom) return p;
        int j = d.bottom + d.top - 1 - p;
        return n - 1 - j;
    };
    auto remap_right = [&](const PlanarDiagram& d, int p) {
        if (p < d.bottom) return a.bottom + p;
        int j = d.bottom + d.top - 1 - p;
        return n - 1 - (a.top + j);
    };
    for (const auto& [da, ca] : a.terms)
        for (const auto& [db, cb] : b.terms) {
            PlanarDiagram comp;
            comp.bottom = out.bottom;
            comp.top = out.top;
            comp.pair_with.assign(n, -1);
            for (int p = 0; p < da.bottom + da.top; ++p) {
                int u = remap_left(da, p), v = remap_left(da, da.pair_with[p]);
                comp.pair_with[u] = v;
            }
            for (int p = 0; p < db.bottom + db.top; ++p) {
                int u = remap_right(db, p), v = remap_right(db, db.pair_with[p]);
                comp.pair_with[u] = v;
            }
            require_planar(comp);
            Scalar c = ca * cb;
            auto [it, fresh] = out.terms.emplace(comp, c);
            if (!fresh) {
                it->second = it->second + c;
                if (it->second.is_zero()) out.terms.erase(it);
            }
        }
    return out;
}

TLMorphism e_generator(int i, int k, const Scalar& delta) {
    if (i < 1 || i > k - 1)
        throw std::out_of_range("generator index " + std::to_string(i) +
                                " does not fit width " + std::to_string(k));
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.push_back({"b" + std::to_string(i), "b" + std::to_string(i + 1)});
    pairs.push_back({"t" + std::to_string(i), "t" + std::to_string(i + 1)});
    for (int j = 1; j <= k; ++j) {
        if (j == i || j == i + 1) continue;
        pairs.push_back({"b" + std::to_string(j), "t" + std::to_string(j)});
    }
    return TLMorphism::of(PlanarDiagram::from_pairs(k, k, pairs), delta);
}

ExactMatrix tl_to_matrix(const TLMorphism& m) {
    if (!m.delta.is_rational() || m.delta.rational_value() != 2)
        throw std::invalid_argument(
            "the matrix model fixes the loop value at 2, got " +
            m.delta.str());
    int cond = m.delta.conductor();
    ExactMatrix out(1 << m.top, 1 << m.bottom, cond);
    for (const auto& [d, coeff] : m.terms) {
        // Classify each pair once: through strands copy a bit, bottom arcs
        // weight the input, top arcs range over their two spin states.
        struct Through { int i, j; };
        struct Arc { int first, second; };
        std::vector<Through> throughs;
        std::vector<Arc> caps, cups;
        int n = d.bottom + d.top;
        for (int p = 0; p < n; ++p) {
            int q = d.pair_with[p];
            if (q < p) continue;
            if (p < d.bottom && q < d.bottom)
                caps.push_back({p, q});
            else if (p >= d.bottom && q >= d.bottom)
                cups.push_back({n - 1 - q, n - 1 - p});
            else
                throughs.push_back({p, n - 1 - q});
        }
        for (long col = 0; col < (1L << m.bottom); ++col) {
            auto bit_in = [&](int i) { return (col >> (m.bottom - 1 - i)) & 1L; };
            bool dead = false;
            bool neg0 = false;
            for (const auto& c : caps) {
                if (bit_in(c.first) == bit_in(c.second)) {
                    dead = true;
                    break;
                }
                if (bit_in(c.first) == 1) neg0 = !neg0;
            }
            if (dead) continue;
            long base_row = 0;
            for (const auto& t : throughs)
                base_row |= bit_in(t.i) << (m.top - 1 - t.j);
            for (long mask = 0; mask < (1L << cups.size()); ++mask) {
                long row = base_row;
                bool neg = neg0;
                for (size_t c = 0; c < cups.size(); ++c) {
                    if ((mask >> c) & 1L) {
                        row |= 1L << (m.top - 1 - cups[c].first);
                        neg = !neg;
                    } else {
                        row |= 1L << (m.top - 1 - cups[c].second);
                    }
                }
                Scalar v = neg ? -coeff : coeff;
                out.set(row, col, out.at(row, col) + v);
            }
        }
    }
    return out;
}

RelationReport check_tl_presentation(int k, const Scalar& delta) {
    if (k < 2)
        throw std::invalid_argument(
            "presentation check needs width at least 2, got " +
            std::to_string(k));
    RelationReport rep;
    auto e = [&](int i) { return e_generator(i, k, delta); };

    bool ok = true;
    for (int i = 1; i < k; ++i)
        ok = ok && tl_compose(e(i), e(i)) == e(i).scaled(delta);
    rep.rows.push_back({"generator squares", ok,
                        std::to_string(k - 1) + " generators at width " +
                            std::to_string(k)});

    ok = true;
    int sandwiches = 0;
    for (int i = 1; i < k; ++i)
        for (int j : {i - 1, i + 1}) {
            if (j < 1 || j > k - 1) continue;
            ok = ok && tl_compose(e(i), tl_compose(e(j), e(i))) == e(i);
            ++sandwiches;
        }
    rep.rows.push_back({"neighbor sandwiches", ok,
                        std::to_string(sandwiches) + " instances"});

    ok = true;
    int pairs = 0;
    for (int i = 1; i < k; ++i)
        for (int j = i + 2; j < k; ++j) {
            ok = ok && tl_compose(e(i), e(j)) == tl_compose(e(j), e(i));
            ++pairs;
        }
    rep.rows.push_back({"distant commuting", ok,
                        std::to_string(pairs) + " pairs"});

    if (delta.is_rational() && delta.rational_value() == 2) {
        std::vector<ExactMatrix> me;
        me.push_back(ExactMatrix());
        for (int i = 1; i < k; ++i) me.push_back(tl_to_matrix(e(i)));
        Scalar two(2, delta.conductor());

        ok = true;
        for (int i = 1; i < k; ++i)
            ok = ok && me[i] * me[i] == me[i].scaled(two);
        rep.rows.push_back({"matrix generator squares", ok,
                            "on " + std::to_string(1 << k) + " coordinates"});

        ok = true;
        for (int i = 1; i < k; ++i)
            for (int j : {i - 1, i + 1}) {
                if (j < 1 || j > k - 1) continue;
                ok = ok && me[i] * me[j] * me[i] == me[i];
            }
        rep.rows.push_back({"matrix neighbor sandwiches", ok,
                            "on " + std::to_string(1 << k) + " coordinates"});

        ok = true;
        for (int i = 1; i < k; ++i)
            for (int j = i + 2; j < k; ++j)
                ok = ok && me[i] * me[j] == me[j] * me[i];
        rep.rows.push_back({"matrix distant commuting", ok,
                            "on " + std::to_string(1 << k) + " coordinates"});
    }
    return rep;
}

}  // namespace repcat
