#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repcat/evaluator.hpp"

#include <random>

using namespace repcat;

namespace {

const MergeSystem& t_system() {
    static MergeSystem ms = build_merge_system(make_group_t());
    return ms;
}

ExactMatrix column(const std::vector<const char*>& entries, int cond) {
    ExactMatrix v(static_cast<int>(entries.size()), 1, cond);
    for (size_t i = 0; i < entries.size(); ++i)
        v.set(static_cast<int>(i), 0, Scalar::parse(entries[i], cond));
    return v;
}

bool has_row(const RelationReport& rep, const std::string& name) {
    for (const auto& r : rep.rows)
        if (r.name == name) return true;
    return false;
}

const RelationReport::Row& row_named(const RelationReport& rep,
                                     const std::string& name) {
    for (const auto& r : rep.rows)
        if (r.name == name) return r;
    throw std::out_of_range("no relation row named " + name);
}

}  // namespace

TEST_CASE("defining merge tables of the binary tetrahedral system") {
    // Frozen input/output pairs for every directed edge, in the tensor basis
    // v_i (x) w_j with the left factor most significant.  Each input spans
    // the edge's merge map together with the kernel vectors around it.
    struct PairCase {
        const char *a, *b;
        std::vector<const char*> in, out;
    };
    const std::vector<PairCase> cases = {
        {"0", "1", {"1", "0"}, {"1", "0"}},
        {"0", "1", {"0", "1"}, {"0", "1"}},
        {"1", "2", {"1", "0", "0", "0"}, {"1", "0", "0"}},
        {"1", "2", {"0", "0", "0", "1"}, {"0", "1", "0"}},
        {"1", "2", {"0", "1", "1", "0"}, {"0", "0", "1"}},
        {"1", "0", {"0", "1", "-1", "0"}, {"1"}},
        {"2", "1", {"0", "0", "-1/2", "1", "0", "0"}, {"1", "0"}},
        {"2", "1", {"0", "-1", "0", "0", "0", "1/2"}, {"0", "1"}},
        {"3", "2", {"0", "0", "0", "1"}, {"-z^4 - z^8", "1", "0"}},
        {"3", "2", {"1", "0", "0", "0"}, {"1", "-z^4 - z^8", "0"}},
        {"3", "2", {"0", "1", "1", "0"}, {"0", "0", "-2"}},
        {"2", "3", {"0", "0", "-1", "-1", "z^4 + z^8", "0"}, {"1", "0"}},
        {"2", "3", {"-z^4 - z^8", "1", "0", "0", "0", "1"}, {"0", "1"}},
        {"3'", "2", {"0", "0", "0", "1"}, {"z^4 + z^8", "1", "0"}},
        {"3'", "2", {"1", "0", "0", "0"}, {"1", "z^4 + z^8", "0"}},
        {"3'", "2", {"0", "1", "1", "0"}, {"0", "0", "-2"}},
        {"2", "3'", {"0", "0", "-1", "-1", "-z^4 - z^8", "0"}, {"1", "0"}},
        {"2", "3'", {"z^4 + z^8", "1", "0", "0", "0", "1"}, {"0", "1"}},
        {"3", "4", {"0", "1", "-1", "0"}, {"1"}},
        {"3'", "4'", {"0", "1", "-1", "0"}, {"1"}},
        {"4", "3", {"1", "0"}, {"1", "0"}},
        {"4", "3", {"0", "1"}, {"0", "1"}},
        {"4'", "3'", {"1", "0"}, {"1", "0"}},
        {"4'", "3'", {"0", "1"}, {"0", "1"}},
    };
    const MergeSystem& ms = t_system();
    for (const auto& c : cases) {
        INFO("edge ", c.a, " -> ", c.b);
        const ExactMatrix& m = ms.merge(c.a, c.b);
        REQUIRE(static_cast<size_t>(m.cols()) == c.in.size());
        REQUIRE(static_cast<size_t>(m.rows()) == c.out.size());
        CHECK(m * column(c.in, 24) == column(c.out, 24));
    }
    CHECK(ms.merge_mat.size() == 12);
    CHECK(ms.split_mat.size() == 12);
    CHECK_THROWS_AS(ms.merge("0", "2"), std::out_of_range);
    CHECK_THROWS_AS(ms.split("0", "2"), std::out_of_range);
}

TEST_CASE("merge maps intertwine the group action on every edge") {
    const MergeSystem& ms = t_system();
    for (const auto& [edge, m] : ms.merge_mat)
        for (const auto& gen : ms.group.generator_names) {
            ExactMatrix lower =
                word_action_matrix({"1", edge.first}, gen, ms.group);
            ExactMatrix upper = word_action_matrix({edge.second}, gen, ms.group);
            CHECK(m * lower == upper * m);
            CHECK(ms.split(edge.first, edge.second) * upper ==
                  lower * ms.split(edge.first, edge.second));
        }
}

TEST_CASE("splits are exact sections of the merges") {
    const MergeSystem& ms = t_system();
    const RepGraph& g = ms.graph;
    for (const auto& n : g.nodes) {
        int total = 0;
        ExactMatrix sum(2 * 0, 2 * 0, 24);
        bool first = true;
        for (const auto& b : g.out_neighbors(n.label)) {
            const ExactMatrix& m = ms.merge(n.label, b);
            const ExactMatrix& s = ms.split(n.label, b);
            CHECK(m * s == ExactMatrix::identity(m.rows(), 24));
            for (const auto& b2 : g.out_neighbors(n.label))
                if (b2 != b)
                    CHECK((ms.merge(n.label, b2) * s).is_zero());
            ExactMatrix proj = s * m;
            if (first)
                sum = proj, first = false;
            else
                sum = sum + proj;
            total += m.rows();
        }
        CHECK(sum == ExactMatrix::identity(sum.rows(), 24));
        // The neighbor dimensions exhaust dim V * dim a, so the stacked
        // merge matrix really was square.
        CHECK(total == sum.rows());
    }
}

TEST_CASE("diagram evaluation is functorial") {
    const MergeSystem& ms = t_system();
    EvalContext ctx = EvalContext::dgrams(ms);
    const RepGraph& g = ms.graph;

    CHECK(eval_diagram(Diagram::identity({"1", "2"}), ctx) ==
          ExactMatrix::identity(6, 24));
    CHECK(ctx.word_dimension({"1", "2"}) == 6);
    CHECK(ctx.word_dimension({}) == 1);
    CHECK(eval_diagram(Diagram::identity({}), ctx) ==
          ExactMatrix::identity(1, 24));

    std::vector<Diagram> pool;
    for (int k = 1; k <= 3; ++k)
        for (const auto& n : g.nodes)
            for (const auto& p : enumerate_paths(g, "1", n.label, k)) {
                pool.push_back(u_path(p, g));
                pool.push_back(d_path(p, g));
            }
    std::mt19937_64 rng(11);
    int composed = 0, tensored = 0;
    for (int trial = 0; trial < 2000 && (composed < 100 || tensored < 100);
         ++trial) {
        const Diagram& f = pool[rng() % pool.size()];
        const Diagram& h = pool[rng() % pool.size()];
        if (tensored < 100) {
            ++tensored;
            CHECK(eval_diagram(tensor_diagrams(f, h), ctx) ==
                  eval_diagram(f, ctx).kron(eval_diagram(h, ctx)));
        }
        if (h.target == f.source && composed < 100) {
            ++composed;
            CHECK(eval_diagram(compose_diagrams(f, h), ctx) ==
                  eval_diagram(f, ctx) * eval_diagram(h, ctx));
        }
    }
    CHECK(composed == 100);
    CHECK(tensored == 100);

    Diagram invalid{{"1", "1"}, {"4"}, {{Cell::merge_g("1", "1", "4")}}};
    CHECK_THROWS_AS(eval_diagram(invalid, ctx), std::invalid_argument);
}

TEST_CASE("morphism evaluation is linear and lifts conductors") {
    const MergeSystem& ms = t_system();
    EvalContext ctx = EvalContext::dgrams(ms);
    const RepGraph& g = ms.graph;
    Diagram u = u_path(Path{{"1", "2"}}, g);
    Morphism m = Morphism::of(u, 24);

    CHECK(eval_morphism(m + m, ctx) == eval_diagram(u, ctx).scaled(Scalar(2L, 24)));
    CHECK(eval_morphism(m + m.scaled(Scalar(-1L, 24)), ctx).is_zero());
    Morphism twisted = m.scaled(Scalar::root_of_unity(24, 5));
    CHECK(eval_morphism(twisted, ctx) ==
          eval_diagram(u, ctx).scaled(Scalar::root_of_unity(24, 5)));

    // A rational-conductor morphism lifts into the system's field.
    Morphism plain = Morphism::of(u, 1);
    CHECK(eval_morphism(plain, ctx) == eval_diagram(u, ctx));
}

TEST_CASE("the affine E6 relation suite passes in full") {
    RelationReport rep =
        check_category_relations(EvalContext::dgrams(t_system()));
    CHECK(rep.all_pass());
    CHECK(has_row(rep, "bubble 1 -> 2"));
    CHECK(has_row(rep, "bubble 3' -> 4'"));
    CHECK(has_row(rep, "orthogonality at 1"));
    CHECK(has_row(rep, "split sum at 2"));
    for (int w = 2; w <= 5; ++w)
        CHECK(has_row(rep, "resolution of identity at width " +
                               std::to_string(w)));
    // The path counts double with each width on this graph.
    CHECK(row_named(rep, "resolution of identity at width 2").detail ==
          "2 paths of length 1");
    CHECK(row_named(rep, "resolution of identity at width 5").detail ==
          "16 paths of length 4");
    CHECK(!has_row(rep, "truncated boundary"));
    CHECK(rep.str().find("FAIL") == std::string::npos);
}

TEST_CASE("relation suites pass for cyclic residue categories") {
    for (int n : {2, 3, 5, 7, 12}) {
        RelationReport rep = check_category_relations(EvalContext::cn_irr(n));
        INFO("n = ", n);
        CHECK(rep.all_pass());
        CHECK(has_row(rep, "slide a merge past a split (left)"));
        CHECK(has_row(rep, "slide a merge past a split (right)"));
        CHECK(has_row(rep, "cancel a split over its merge"));
        CHECK(has_row(rep, "pop a merge under its split"));
        CHECK(has_row(rep, "merge associativity"));
        CHECK(has_row(rep, "split coassociativity"));
    }
    RelationReport rep5 = check_category_relations(EvalContext::cn_irr(5));
    CHECK(row_named(rep5, "merge associativity").detail ==
          "125 instances (n = 5)");
}

TEST_CASE("cyclic diagrams evaluate to their coefficient sum") {
    EvalContext ctx = EvalContext::cn_irr(5);
    Diagram f = funnel_cn({"2", "3"}, 5);
    CHECK(eval_diagram(f, ctx) == ExactMatrix::identity(1, 1));
    CHECK(ctx.word_dimension({"2", "3", "4"}) == 1);

    Morphism m = Morphism::of(f, 1).scaled(Scalar(3L)) +
                 Morphism::of(funnel_between_cn({"2", "3"}, f.target, 5), 1)
                     .scaled(Scalar(-3L));
    CHECK(eval_morphism(m, ctx).is_zero());
    Morphism id = Morphism::identity({"1", "4"}, 1);
    ExactMatrix one = eval_morphism(id, ctx);
    CHECK(one.rows() == 1);
    CHECK(one.at(0, 0) == Scalar(1L));
}

TEST_CASE("the star category suite passes for the doubled cyclic group") {
    StarSystem star = build_star_system(make_group_cn_double(5));
    CHECK(star.down_mat.size() == 2);
    CHECK(star.up_mat.size() == 2);
    const ExactMatrix& d1 = star.down("1");
    CHECK(d1.rows() == 1);
    CHECK(d1.cols() == 2);
    const ExactMatrix& u1 = star.up("1");
    CHECK(u1.rows() == 2);
    CHECK(u1.cols() == 1);
    CHECK(d1 * u1 == ExactMatrix::identity(1, star.ms.group.conductor));
    CHECK((star.down("4") * u1).is_zero());
    ExactMatrix resolved = star.up("1") * star.down("1") +
                           star.up("4") * star.down("4");
    CHECK(resolved == ExactMatrix::identity(2, star.ms.group.conductor));

    // The projections intertwine the group action.
    for (const auto& gen : star.ms.group.generator_names)
        for (const auto& c : {"1", "4"}) {
            ExactMatrix on_v =
                word_action_matrix({kStarLabel}, gen, star.ms.group);
            ExactMatrix on_c = word_action_matrix({c}, gen, star.ms.group);
            CHECK(star.down(c) * on_v == on_c * star.down(c));
        }

    EvalContext ctx = EvalContext::star_cat(star);
    CHECK(ctx.word_dimension({kStarLabel, "2"}) == 2);
    RelationReport rep = check_category_relations(ctx);
    CHECK(rep.all_pass());
    CHECK(has_row(rep, "summand bubbles"));
    CHECK(has_row(rep, "defining strand resolution"));

    Diagram down{{kStarLabel}, {"1"}, {{Cell::star_down("1")}}};
    CHECK(eval_diagram(down, ctx) == star.down("1"));
}

TEST_CASE("group files evaluate like the builtin construction") {
    // The file normalization differs from the pinned tables by one scalar
    // per edge, and the relation suite holds either way.
    MergeSystem filed = build_merge_system(load_group_data("t_binary_tetrahedral"));
    const MergeSystem& built = t_system();
    for (const auto& [edge, m] : built.merge_mat) {
        const ExactMatrix& f = filed.merge(edge.first, edge.second);
        Scalar ratio(0L, 24);
        bool found = false;
        for (int i = 0; i < m.rows() && !found; ++i)
            for (int j = 0; j < m.cols() && !found; ++j)
                if (!(m.at(i, j) == Scalar(0L, 24))) {
                    ratio = f.at(i, j) * m.at(i, j).inverse();
                    found = true;
                }
        REQUIRE(found);
        CHECK(!ratio.is_zero());
        CHECK(f == m.scaled(ratio));
    }
    CHECK(check_category_relations(EvalContext::dgrams(filed)).all_pass());
}

TEST_CASE("truncated families stop the suite at the weight budget") {
    MergeSystem su2 = build_merge_system(make_group_su2(4));
    CHECK(su2.graph.truncated);
    CHECK(su2.merge_mat.count({"3", "4"}) == 1);
    CHECK(su2.merge_mat.count({"4", "3"}) == 1);
    // No splits out of the clipped boundary node.
    CHECK(su2.split_mat.count({"4", "3"}) == 0);
    CHECK(su2.split_mat.count({"3", "4"}) == 1);

    RelationReport rep = check_category_relations(EvalContext::dgrams(su2));
    CHECK(rep.all_pass());
    const auto& edge_row = row_named(rep, "truncated boundary");
    CHECK(edge_row.pass);
    CHECK(has_row(rep, "resolution of identity at width 4"));
    CHECK(!has_row(rep, "resolution of identity at width 5"));

    // Fusion with sl2 oracle: walk counts equal intertwiner dimensions.
    GroupData wide = make_group_su2(8);
    RepGraph g = build_rep_graph(wide);
    for (int k = 0; k <= 5; ++k)
        for (const auto& n : g.nodes) {
            if (std::stoi(n.label) > k) continue;
            ObjectWord word(static_cast<size_t>(k), "1");
            CHECK(hom_dim_oracle(word, {n.label}, wide) ==
                  count_paths_adjacency(g, "0", n.label, k));
        }
}

TEST_CASE("a corrupted merge map is caught by the relation suite") {
    MergeSystem broken = t_system();
    auto it = broken.merge_mat.find({"1", "2"});
    REQUIRE(it != broken.merge_mat.end());
    it->second = it->second.scaled(Scalar(2L, 24));
    RelationReport rep = check_category_relations(EvalContext::dgrams(broken));
    CHECK(!rep.all_pass());
    CHECK(!row_named(rep, "bubble 1 -> 2").pass);
    CHECK(rep.str().find("FAIL") != std::string::npos);
}

TEST_CASE("the scalar extractor reads off endomorphism coefficients") {
    const MergeSystem& ms = t_system();
    EvalContext ctx = EvalContext::dgrams(ms);
    const RepGraph& g = ms.graph;

    for (const auto& p : enumerate_paths(g, "1", "3", 4)) {
        Morphism sandwich =
            compose(Morphism::of(u_path(p, g), 24),
                    Morphism::of(d_path(p, g), 24));
        auto [same, value] = schur_scalar(sandwich, ctx);
        CHECK(same);
        CHECK(!value.is_zero());
    }

    // A one-edge sandwich is exactly the identity by the bubble relation.
    Morphism bubble = compose(Morphism::of(u_path(Path{{"1", "0"}}, g), 24),
                              Morphism::of(d_path(Path{{"1", "0"}}, g), 24));
    auto [same0, val0] = schur_scalar(bubble, ctx);
    CHECK(same0);
    CHECK(val0 == Scalar(1L, 24));
    auto [same2, val2] = schur_scalar(bubble + bubble, ctx);
    CHECK(same2);
    CHECK(val2 == Scalar(2L, 24));

    // Distinct simple endpoints force the zero matrix.
    Morphism crossed = compose(Morphism::of(u_path(Path{{"1", "2", "3'"}}, g), 24),
                               Morphism::of(d_path(Path{{"1", "2", "3"}}, g), 24));
    auto [same3, val3] = schur_scalar(crossed, ctx);
    CHECK(!same3);
    CHECK(val3.is_zero());

    Morphism wide = Morphism::identity({"1", "1"}, 24);
    CHECK_THROWS_AS(schur_scalar(wide, ctx), std::invalid_argument);

    // Non-intertwiner data trips the Schur checks.
    MergeSystem broken = ms;
    ExactMatrix junk(3, 4, 24);
    junk.set(0, 0, Scalar(1L, 24));
    broken.merge_mat[{"1", "2"}] = junk;
    EvalContext bctx = EvalContext::dgrams(broken);
    Morphism bad = compose(Morphism::of(u_path(Path{{"1", "2"}}, g), 24),
                           Morphism::of(d_path(Path{{"1", "2"}}, g), 24));
    CHECK_THROWS_AS(schur_scalar(bad, bctx), std::domain_error);
}

TEST_CASE("group resolution feeds every construction path") {
    CHECK(build_merge_system(resolve_group("cnd5")).merge_mat.size() == 10);
    MergeSystem cn = build_merge_system(resolve_group("cn7"));
    CHECK(cn.merge_mat.size() == 7);
    RelationReport rep = check_category_relations(EvalContext::dgrams(cn));
    CHECK(rep.all_pass());
}
