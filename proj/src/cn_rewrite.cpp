#include "repcat/cn_rewrite.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace repcat {

namespace {

long residue(const std::string& label, int n) {
    try {
        size_t used = 0;
        long v = std::stol(label, &used);
        if (used == label.size() && v >= 0 && v < n &&
            std::to_string(v) == label)
            return v;
    } catch (...) {
    }
    throw std::invalid_argument("label \"" + label + "\" is not a residue mod " +
                                std::to_string(n));
}

// One non-identity cell with its strand position; a diagram is a sequence of
// these applied bottom to top.  Merges read (a,b) -> c, splits c -> (a,b).
struct Item {
    bool is_merge;
    int pos;
    long a, b, c;

    int width_in() const { return is_merge ? 2 : 1; }
    int width_out() const { return is_merge ? 1 : 2; }
    bool operator==(const Item&) const = default;
};

std::vector<Item> to_items(const Diagram& d, int n) {
    std::vector<Item> items;
    for (const auto& slice : d.slices) {
        int pos = 0;
        for (const auto& cell : slice) {
            switch (cell.kind) {
                case Cell::Kind::Id:
                    pos += 1;
                    break;
                case Cell::Kind::MergeCn:
                    items.push_back({true, pos, residue(cell.in[0], n),
                                     residue(cell.in[1], n),
                                     residue(cell.out[0], n)});
                    pos += 1;
                    break;
                case Cell::Kind::SplitCn:
                    items.push_back({false, pos, residue(cell.out[0], n),
                                     residue(cell.out[1], n),
                                     residue(cell.in[0], n)});
                    pos += 2;
                    break;
                default:
                    throw std::invalid_argument(
                        "cell " + cell.str() +
                        " does not belong to the cyclic-residue category");
            }
        }
    }
    return items;
}

Diagram from_items(const ObjectWord& source, const ObjectWord& target,
                   const std::vector<Item>& items, int n) {
    Diagram d;
    d.source = source;
    d.target = target;
    std::vector<long> cur;
    for (const auto& l : source) cur.push_back(residue(l, n));
    for (const auto& it : items) {
        std::vector<Cell> row;
        for (int i = 0; i < it.pos; ++i)
            row.push_back(Cell::id(std::to_string(cur[i])));
        if (it.is_merge)
            row.push_back(Cell::merge_cn(std::to_string(it.a),
                                         std::to_string(it.b),
                                         std::to_string(it.c)));
        else
            row.push_back(Cell::split_cn(std::to_string(it.c),
                                         std::to_string(it.a),
                                         std::to_string(it.b)));
        for (size_t i = it.pos + it.width_in(); i < cur.size(); ++i)
            row.push_back(Cell::id(std::to_string(cur[i])));
        d.slices.push_back(std::move(row));
        if (it.is_merge) {
            cur[it.pos] = it.c;
            cur.erase(cur.begin() + it.pos + 1);
        } else {
            cur[it.pos] = it.a;
            cur.insert(cur.begin() + it.pos + 1, it.b);
        }
    }
    return d;
}

enum class MoveKind {
    Pop,            // split then merge over both outputs -> nothing
    Cancel,         // merge then matching split -> nothing
    ZigRight,       // merge eats the right split output -> merge below split
    ZigLeft,        // merge eats the left split output -> merge below split
    ReassocMerge,   // right-nested merge pair -> left-nested
    ReassocSplit,   // right-peeling split pair -> left-peeling
    Sink,           // disjoint cells with the left one on top -> swap
    Hoist,          // disjoint cells with the right one on top -> swap
};

struct Move {
    MoveKind kind;
    size_t at;
};

// Every move below rewrites an adjacent pair (x below, y above).  The three
// collectors each admit only moves that strictly shrink a stage measure, so
// reduction terminates no matter which applicable move fires first.

// Stage one: each split sitting below a merge is popped, zig-zagged, or slid
// past it.  Measure: number of (split, merge) pairs in that vertical order.
std::vector<Move> sort_moves(const std::vector<Item>& seq) {
    std::vector<Move> out;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        const Item& x = seq[i];
        const Item& y = seq[i + 1];
        if (x.is_merge || !y.is_merge) continue;
        if (y.pos == x.pos)
            out.push_back({MoveKind::Pop, i});
        else if (y.pos == x.pos + 1)
            out.push_back({MoveKind::ZigRight, i});
        else if (y.pos + 1 == x.pos)
            out.push_back({MoveKind::ZigLeft, i});
        else if (y.pos >= x.pos + 2)
            out.push_back({MoveKind::Hoist, i});
        else
            out.push_back({MoveKind::Sink, i});
    }
    return out;
}

// Stage two, merge block: right-nested pairs reassociate and left strands
// sink, pushing every merge toward position zero.  Measure: sum of merge
// positions.
std::vector<Move> comb_merge_moves(const std::vector<Item>& seq) {
    std::vector<Move> out;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        const Item& x = seq[i];
        const Item& y = seq[i + 1];
        if (!x.is_merge || !y.is_merge) continue;
        if (y.pos + 1 == x.pos)
            out.push_back({MoveKind::ReassocMerge, i});
        else if (y.pos + 2 <= x.pos)
            out.push_back({MoveKind::Sink, i});
    }
    return out;
}

// Stage two, split block: the mirror image, pushing every split toward
// position zero.  Measure: sum of split positions.
std::vector<Move> comb_split_moves(const std::vector<Item>& seq) {
    std::vector<Move> out;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        const Item& x = seq[i];
        const Item& y = seq[i + 1];
        if (x.is_merge || y.is_merge) continue;
        if (y.pos == x.pos + 1)
            out.push_back({MoveKind::ReassocSplit, i});
        else if (y.pos >= x.pos + 2)
            out.push_back({MoveKind::Hoist, i});
    }
    return out;
}

void apply_move(std::vector<Item>& seq, const Move& mv, int n) {
    size_t i = mv.at;
    Item x = seq[i], y = seq[i + 1];
    switch (mv.kind) {
        case MoveKind::Pop:
        case MoveKind::Cancel:
            seq.erase(seq.begin() + i, seq.begin() + i + 2);
            break;
        case MoveKind::ZigRight: {
            long u = (x.c + y.b) % n;
            seq[i] = {true, x.pos, x.c, y.b, u};
            seq[i + 1] = {false, x.pos, x.a, y.c, u};
            break;
        }
        case MoveKind::ZigLeft: {
            long u = (y.a + x.c) % n;
            seq[i] = {true, y.pos, y.a, x.c, u};
            seq[i + 1] = {false, y.pos, y.c, x.b, u};
            break;
        }
        case MoveKind::ReassocMerge: {
            long u = (y.a + x.a) % n;
            seq[i] = {true, y.pos, y.a, x.a, u};
            seq[i + 1] = {true, y.pos, u, x.b, y.c};
            break;
        }
        case MoveKind::ReassocSplit: {
            long u = (x.a + y.a) % n;
            seq[i] = {false, x.pos, u, y.b, x.c};
            seq[i + 1] = {false, x.pos, x.a, y.a, u};
            break;
        }
        case MoveKind::Sink: {
            Item lowered = y;
            Item raised = x;
            raised.pos = x.pos + (y.width_out() - y.width_in());
            seq[i] = lowered;
            seq[i + 1] = raised;
            break;
        }
        case MoveKind::Hoist: {
            Item lowered = y;
            lowered.pos = y.pos - (x.width_out() - x.width_in());
            seq[i] = lowered;
            seq[i + 1] = x;
            break;
        }
    }
}

}  // namespace

int hom_dim_cn(const ObjectWord& source, const ObjectWord& target, int n) {
    if (n <= 0)
        throw std::invalid_argument("modulus must be positive, got " +
                                    std::to_string(n));
    long s = 0, t = 0;
    for (const auto& l : source) s += residue(l, n);
    for (const auto& l : target) t += residue(l, n);
    return (s - t) % n == 0 ? 1 : 0;
}

Diagram canonical_funnel_cn(const ObjectWord& source, const ObjectWord& target,
                            int n) {
    for (const auto& l : source) residue(l, n);
    for (const auto& l : target) residue(l, n);
    size_t k = 0;
    while (k < source.size() && k < target.size() &&
           source[source.size() - 1 - k] == target[target.size() - 1 - k])
        ++k;
    if (k == source.size() && k == target.size())
        return Diagram::identity(source);
    if (k > 0 && (k == source.size() || k == target.size())) --k;
    ObjectWord src_rest(source.begin(), source.end() - k);
    ObjectWord tgt_rest(target.begin(), target.end() - k);
    ObjectWord suffix(source.end() - k, source.end());
    return tensor_diagrams(funnel_between_cn(src_rest, tgt_rest, n),
                           Diagram::identity(suffix));
}

Diagram normalize_cn(const Diagram& d, int n, unsigned long seed, int budget) {
    ValidationReport rep = validate(d, CategoryContext::cn_irr(n));
    if (!rep.pass)
        throw std::invalid_argument("cannot normalize invalid diagram: " +
                                    rep.problems.front());
    Diagram canon = canonical_funnel_cn(d.source, d.target, n).packed();
    std::vector<Item> seq = to_items(d.packed(), n);
    if (from_items(d.source, d.target, seq, n).packed() == canon) return canon;
    std::mt19937_64 rng(seed);
    int steps = 0;
    auto guard = [&]() {
        if (++steps > budget)
            throw std::runtime_error(
                "normalize_cn exhausted its budget of " +
                std::to_string(budget) + " rewrite steps on a diagram " +
                word_str(d.source) + " -> " + word_str(d.target));
    };
    // The seed only controls which applicable move fires first; every stage
    // shrinks its own measure with each step, so any order reaches the same
    // fixpoint shape and the result below is seed independent.
    auto reduce = [&](std::vector<Move> (*collect)(const std::vector<Item>&)) {
        while (true) {
            std::vector<Move> moves = collect(seq);
            if (moves.empty()) break;
            guard();
            apply_move(seq, moves[rng() % moves.size()], n);
        }
    };

    reduce(sort_moves);

    // Comb both blocks toward the left edge.  While the waist word between
    // the merge block and the split block keeps two or more strands, graft a
    // bubble joining its two leftmost strands and comb again; each graft
    // grows the merge block by one, so the waist shrinks to a single strand
    // and both blocks comb into the full funnel over the boundary words.
    while (true) {
        reduce(comb_merge_moves);
        reduce(comb_split_moves);
        size_t merges = 0;
        while (merges < seq.size() && seq[merges].is_merge) ++merges;
        if (d.source.size() <= merges + 1) break;
        std::vector<long> waist;
        for (const auto& l : d.source) waist.push_back(residue(l, n));
        for (size_t i = 0; i < merges; ++i) {
            waist[seq[i].pos] = seq[i].c;
            waist.erase(waist.begin() + seq[i].pos + 1);
        }
        long u = (waist[0] + waist[1]) % n;
        guard();
        seq.insert(seq.begin() + merges, {false, 0, waist[0], waist[1], u});
        seq.insert(seq.begin() + merges, {true, 0, waist[0], waist[1], u});
    }

    // Cancel mirrored pairs at the waist; this peels the longest common
    // suffix of the boundary words back off the funnel.
    while (true) {
        size_t b = 0;
        while (b < seq.size() && seq[b].is_merge) ++b;
        if (b == 0 || b == seq.size()) break;
        const Item& x = seq[b - 1];
        const Item& y = seq[b];
        if (y.pos != x.pos || y.a != x.a || y.b != x.b) break;
        guard();
        apply_move(seq, {MoveKind::Cancel, b - 1}, n);
    }

    Diagram cur = from_items(d.source, d.target, seq, n).packed();
    if (cur != canon)
        throw std::logic_error(
            "normalize_cn: reduced diagram differs from the canonical funnel "
            "for " + word_str(d.source) + " -> " + word_str(d.target));
    return cur;
}

Morphism normalize_cn(const Morphism& m, int n, unsigned long seed,
                      int budget) {
    Morphism out = Morphism::zero(m.source, m.target, m.conductor());
    for (const auto& [d, coeff] : m.terms)
        out = out +
              Morphism::of(normalize_cn(d, n, seed, budget), m.conductor())
                  .scaled(coeff);
    return out;
}

}  // namespace repcat
