#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repcat/diagram.hpp"
#include "repcat/evaluator.hpp"

#include <random>

using namespace repcat;

namespace {

const RepGraph& t_graph() {
    static RepGraph g = build_rep_graph(make_group_t());
    return g;
}

// A small pool of composable diagrams on the affine E6 graph for
// property-style checks.
std::vector<Diagram> diagram_pool() {
    const RepGraph& g = t_graph();
    std::vector<Diagram> pool;
    for (int k = 1; k <= 4; ++k)
        for (const auto& n : g.nodes)
            for (const auto& p : enumerate_paths(g, "1", n.label, k)) {
                pool.push_back(u_path(p, g));
                pool.push_back(d_path(p, g));
            }
    return pool;
}

}  // namespace

TEST_CASE("cells record their boundary words") {
    Cell m = Cell::merge_cn("2", "3", "0");
    CHECK(m.in == ObjectWord{"2", "3"});
    CHECK(m.out == ObjectWord{"0"});
    CHECK(m.str() == "m[2,3->0]");

    Cell s = Cell::split_cn("0", "2", "3");
    CHECK(s.in == ObjectWord{"0"});
    CHECK(s.out == ObjectWord{"2", "3"});
    CHECK(s.str() == "s[0->2,3]");

    Cell mg = Cell::merge_g("1", "2", "3'");
    CHECK(mg.in == ObjectWord{"1", "2"});
    CHECK(mg.out == ObjectWord{"3'"});
    CHECK(mg.str() == "m[1,2->3']");

    Cell sg = Cell::split_g("3'", "1", "2");
    CHECK(sg.in == ObjectWord{"3'"});
    CHECK(sg.out == ObjectWord{"1", "2"});
    CHECK(sg.str() == "s[3'->1,2]");

    Cell dn = Cell::star_down("V");
    CHECK(dn.in == ObjectWord{kStarLabel});
    CHECK(dn.out == ObjectWord{"V"});
    CHECK(dn.str() == "down[V]");

    Cell up = Cell::star_up("V");
    CHECK(up.in == ObjectWord{"V"});
    CHECK(up.out == ObjectWord{kStarLabel});
    CHECK(up.str() == "up[V]");

    CHECK(Cell::id("7(1)").str() == "id[7(1)]");
    CHECK(Cell::id("7(1)").is_id());
    CHECK(!mg.is_id());
}

TEST_CASE("identity diagrams have no slices and compose as units") {
    Diagram id = Diagram::identity({"1", "2"});
    CHECK(id.source == ObjectWord{"1", "2"});
    CHECK(id.target == ObjectWord{"1", "2"});
    CHECK(id.slices.empty());
    CHECK(id.cell_count() == 0);
    CHECK(id.str() == "id[1,2]");

    const RepGraph& g = t_graph();
    Diagram u = u_path(Path{{"1", "2", "3"}}, g);
    CHECK(compose_diagrams(u, Diagram::identity(u.source)) == u);
    CHECK(compose_diagrams(Diagram::identity(u.target), u) == u);
    CHECK_THROWS_AS(compose_diagrams(u, u), std::invalid_argument);
}

TEST_CASE("composition stacks slices and tensor pads with identities") {
    const RepGraph& g = t_graph();
    Diagram u = u_path(Path{{"1", "0"}}, g);   // [1,1] -> [0]
    Diagram d = d_path(Path{{"1", "0"}}, g);   // [0] -> [1,1]
    Diagram bubble = compose_diagrams(u, d);   // [0] -> [0]
    CHECK(bubble.source == ObjectWord{"0"});
    CHECK(bubble.target == ObjectWord{"0"});
    CHECK(bubble.slices.size() == 2);
    CHECK(bubble.cell_count() == 2);

    Diagram t = tensor_diagrams(bubble, u);
    CHECK(t.source == ObjectWord{"0", "1", "1"});
    CHECK(t.target == ObjectWord{"0", "0"});
    // The single-slice factor is padded to the height of the two-slice one.
    REQUIRE(t.slices.size() == 2);
    CHECK(t.slices[1][1].is_id());
    CHECK(tensor_diagrams(u, Diagram::identity({})) == u);
}

TEST_CASE("packing gives one canonical presentation per pasting") {
    const RepGraph& g = t_graph();
    Cell left = Cell::merge_g("1", "1", "2");
    Cell right = Cell::merge_g("1", "0", "1");

    // The same two disjoint merges stacked in either order.
    Diagram a{{"1", "1", "1", "0"},
              {"2", "1"},
              {{left, Cell::id("1"), Cell::id("0")}, {Cell::id("2"), right}}};
    Diagram b{{"1", "1", "1", "0"},
              {"2", "1"},
              {{Cell::id("1"), Cell::id("1"), right}, {left, Cell::id("1")}}};
    CHECK(a == b);
    CHECK(a.packed().slices.size() == 1);
    CHECK(a.str() == b.str());
    CHECK(a.str() == "m[1,1->2]*m[1,0->1]");
    CHECK(validate(a, CategoryContext::dgrams(g)).pass);

    // Composing with identities never changes the packed form.
    Diagram u = u_path(Path{{"1", "2", "3", "4"}}, g);
    Diagram padded = compose_diagrams(
        compose_diagrams(Diagram::identity(u.target), u),
        Diagram::identity(u.source));
    CHECK(padded == u);
    CHECK(padded.packed().slices == u.packed().slices);

    // Genuinely different pastings stay different.
    Diagram v = u_path(Path{{"1", "2", "3", "2"}}, g);
    CHECK(u != v);
    CHECK((u < v) != (v < u));
}

TEST_CASE("path diagrams fold the generator strand step by step") {
    const RepGraph& g = t_graph();
    Path p{{"1", "2", "3"}};
    Diagram u = u_path(p, g);
    CHECK(u.source == ObjectWord{"1", "1", "1"});
    CHECK(u.target == ObjectWord{"3"});
    REQUIRE(u.slices.size() == 2);
    CHECK(u.slices[0] ==
          std::vector<Cell>{Cell::id("1"), Cell::merge_g("1", "1", "2")});
    CHECK(u.slices[1] == std::vector<Cell>{Cell::merge_g("1", "2", "3")});
    CHECK(validate(u, CategoryContext::dgrams(g)).pass);

    Diagram d = d_path(p, g);
    CHECK(d.source == ObjectWord{"3"});
    CHECK(d.target == ObjectWord{"1", "1", "1"});
    REQUIRE(d.slices.size() == 2);
    CHECK(d.slices[0] == std::vector<Cell>{Cell::split_g("3", "1", "2")});
    CHECK(d.slices[1] ==
          std::vector<Cell>{Cell::id("1"), Cell::split_g("2", "1", "1")});
    CHECK(validate(d, CategoryContext::dgrams(g)).pass);

    // d_path is the vertical mirror of u_path: reverse the slices and swap
    // each merge for the split over the same edge.
    for (int k = 1; k <= 4; ++k)
        for (const auto& q : enumerate_paths(g, "1", "3", k)) {
            Diagram uu = u_path(q, g), dd = d_path(q, g);
            REQUIRE(uu.slices.size() == dd.slices.size());
            for (size_t t = 0; t < uu.slices.size(); ++t) {
                const auto& mrow = uu.slices[uu.slices.size() - 1 - t];
                const auto& srow = dd.slices[t];
                REQUIRE(mrow.size() == srow.size());
                for (size_t i = 0; i < mrow.size(); ++i) {
                    const Cell& mc = mrow[i];
                    const Cell& sc = srow[i];
                    if (mc.is_id())
                        CHECK(sc == mc);
                    else
                        CHECK(sc == Cell::split_g(mc.out[0], mc.in[0],
                                                  mc.in[1]));
                }
            }
        }

    CHECK_THROWS_AS(u_path(Path{{"1", "4"}}, g), std::invalid_argument);
    Diagram point = u_path(Path{{"1"}}, g);
    CHECK(point == Diagram::identity({"1"}));
}

TEST_CASE("funnels reduce residue words to a canonical target") {
    Diagram f = funnel_cn({"2", "3"}, 5);
    CHECK(f.source == ObjectWord{"2", "3"});
    CHECK(f.target == ObjectWord{"1", "1", "1", "1", "1"});
    CHECK(validate(f, CategoryContext::cn_irr(5)).pass);
    CHECK(tensor_factor_delta(f) == 3);

    Diagram z = funnel_cn({"0", "0"}, 5);
    CHECK(z.target == ObjectWord{"0"});
    CHECK(funnel_cn({}, 5) == Diagram::identity({}));
    CHECK(funnel_cn({"1"}, 5) == Diagram::identity({"1"}));

    Diagram between = funnel_between_cn({"2", "3"}, {"4", "1"}, 5);
    CHECK(between.source == ObjectWord{"2", "3"});
    CHECK(between.target == ObjectWord{"4", "1"});
    CHECK(validate(between, CategoryContext::cn_irr(5)).pass);
    CHECK(funnel_between_cn({"2"}, {"2"}, 5) == Diagram::identity({"2"}));
    CHECK_THROWS_AS(funnel_between_cn({"2", "3"}, {"1"}, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(funnel_between_cn({"0"}, {}, 5), std::invalid_argument);
    CHECK_THROWS_AS(funnel_cn({"7"}, 5), std::invalid_argument);
}

TEST_CASE("the split-minus-merge count tracks the boundary widths") {
    for (const auto& d : diagram_pool())
        CHECK(tensor_factor_delta(d) ==
              static_cast<int>(d.target.size()) -
                  static_cast<int>(d.source.size()));
    std::mt19937_64 rng(7);
    auto pool = diagram_pool();
    int paired = 0;
    for (int trial = 0; trial < 400 && paired < 50; ++trial) {
        const Diagram& f = pool[rng() % pool.size()];
        const Diagram& g = pool[rng() % pool.size()];
        if (g.target != f.source) continue;
        ++paired;
        Diagram c = compose_diagrams(f, g);
        CHECK(tensor_factor_delta(c) ==
              tensor_factor_delta(f) + tensor_factor_delta(g));
        Diagram t = tensor_diagrams(f, g);
        CHECK(tensor_factor_delta(t) ==
              tensor_factor_delta(f) + tensor_factor_delta(g));
    }
    CHECK(paired == 50);
}

TEST_CASE("validation rejects malformed diagrams with a reason") {
    const RepGraph& g = t_graph();
    CategoryContext dg = CategoryContext::dgrams(g);
    CategoryContext cn = CategoryContext::cn_irr(5);

    Diagram bad_sum{{"2", "2"}, {"3"}, {{Cell::merge_cn("2", "2", "3")}}};
    ValidationReport r1 = validate(bad_sum, cn);
    CHECK(!r1.pass);
    CHECK(r1.problems.at(0).find("violates") != std::string::npos);
    CHECK(r1.str().find("invalid:") == 0);

    Diagram wrong_cat{{"2", "2"}, {"4"}, {{Cell::merge_cn("2", "2", "4")}}};
    CHECK(validate(wrong_cat, cn).pass);
    CHECK(!validate(wrong_cat, dg).pass);

    Diagram graph_merge{{"1", "2"}, {"3"}, {{Cell::merge_g("1", "2", "3")}}};
    CHECK(validate(graph_merge, dg).pass);
    CHECK(!validate(graph_merge, cn).pass);

    Diagram bad_leg{{"2", "1"}, {"3"}, {{Cell::merge_g("2", "1", "3")}}};
    ValidationReport r2 = validate(bad_leg, dg);
    CHECK(!r2.pass);
    CHECK(r2.problems.at(0).find("first leg") != std::string::npos);

    Diagram no_edge{{"1", "1"}, {"4"}, {{Cell::merge_g("1", "1", "4")}}};
    ValidationReport r3 = validate(no_edge, dg);
    CHECK(!r3.pass);
    CHECK(r3.problems.at(0).find("needs edge") != std::string::npos);

    Diagram bad_boundary{{"1", "1"}, {"2"},
                         {{Cell::merge_g("1", "0", "1")}}};
    ValidationReport r4 = validate(bad_boundary, dg);
    CHECK(!r4.pass);
    CHECK(r4.problems.at(0).find("slice 0") != std::string::npos);

    Diagram bad_target{{"1", "1"}, {"0"}, {{Cell::merge_g("1", "1", "2")}}};
    ValidationReport r5 = validate(bad_target, dg);
    CHECK(!r5.pass);
    CHECK(r5.problems.at(0).find("declares target") != std::string::npos);

    Diagram stray_label{{"8"}, {"8"}, {}};
    CHECK(!validate(stray_label, dg).pass);
}

TEST_CASE("star cells need the star context and a unit neighbor") {
    GroupData cnd = make_group_cn_double(5);
    RepGraph g = build_rep_graph(cnd);
    CategoryContext star = CategoryContext::star(g);
    CategoryContext dg = CategoryContext::dgrams(g);

    Diagram down{{kStarLabel}, {"1"}, {{Cell::star_down("1")}}};
    CHECK(validate(down, star).pass);
    CHECK(!validate(down, dg).pass);

    Diagram up{{"4"}, {kStarLabel}, {{Cell::star_up("4")}}};
    CHECK(validate(up, star).pass);

    Diagram far{{kStarLabel}, {"2"}, {{Cell::star_down("2")}}};
    ValidationReport r = validate(far, star);
    CHECK(!r.pass);
    CHECK(r.problems.at(0).find("adjacent to the unit node") !=
          std::string::npos);

    // Graph merges in the star category lead with the star strand.
    Diagram sm{{kStarLabel, "1"}, {"2"},
               {{Cell::merge_g(kStarLabel, "1", "2")}}};
    CHECK(validate(sm, star).pass);
    Diagram gm{{kStarLabel, "1"}, {"2"}, {{Cell::merge_g("0", "1", "2")}}};
    CHECK(!validate(gm, star).pass);
}

TEST_CASE("morphisms collect packed diagrams with exact coefficients") {
    const RepGraph& g = t_graph();
    Diagram u = u_path(Path{{"1", "2"}}, g);
    Morphism m = Morphism::of(u, 24);
    CHECK(m.source == u.source);
    CHECK(m.target == u.target);
    CHECK(m.terms.size() == 1);

    Morphism doubled = m + m;
    REQUIRE(doubled.terms.size() == 1);
    CHECK(doubled.terms.begin()->second == Scalar(2L, 24));
    CHECK(doubled == m.scaled(Scalar(2L, 24)));

    Morphism cancel = m + m.scaled(Scalar(-1L, 24));
    CHECK(cancel.terms.empty());
    CHECK(cancel == Morphism::zero(u.source, u.target, 24));
    CHECK(cancel.str() == "0");

    // Coefficients attach to the packed diagram, so differently sliced
    // presentations of one pasting pool their coefficients.
    Diagram padded = compose_diagrams(Diagram::identity(u.target), u);
    CHECK(Morphism::of(padded, 24) + m == m.scaled(Scalar(2L, 24)));

    CHECK(Morphism::identity({"1"}, 24).str() == "id[1]");
    CHECK(m.str() == "m[1,1->2]");
    Morphism mix = m + m.scaled(Scalar::root_of_unity(24, 3));
    CHECK(mix.str() == "m[1,1->2] + z^3 m[1,1->2]");
    CHECK(m.scaled(Scalar(-1L, 24)).str() == "-m[1,1->2]");
}

TEST_CASE("morphism composition and tensor are bilinear") {
    const RepGraph& g = t_graph();
    Diagram u1 = u_path(Path{{"1", "2"}}, g);
    Diagram u2 = u_path(Path{{"1", "0"}}, g);
    Diagram d1 = d_path(Path{{"1", "2"}}, g);

    Morphism a = Morphism::of(u1, 24) + Morphism::of(u1, 24);  // 2 u1
    Morphism b = Morphism::of(d1, 24).scaled(Scalar(3L, 24));
    Morphism c = compose(a, b);  // [2] -> [2], 6 (u1 after d1)
    CHECK(c.source == ObjectWord{"2"});
    CHECK(c.target == ObjectWord{"2"});
    REQUIRE(c.terms.size() == 1);
    CHECK(c.terms.begin()->second == Scalar(6L, 24));

    Morphism t = tensor(a, Morphism::of(u2, 24).scaled(Scalar(5L, 24)));
    CHECK(t.source == ObjectWord{"1", "1", "1", "1"});
    CHECK(t.target == ObjectWord{"2", "0"});
    REQUIRE(t.terms.size() == 1);
    CHECK(t.terms.begin()->second == Scalar(10L, 24));

    CHECK(compose(Morphism::identity(a.target, 24), a) == a);
    CHECK(compose(a, Morphism::identity(a.source, 24)) == a);
    CHECK_THROWS_AS(compose(a, a), std::invalid_argument);

    // Zero annihilates under composition and tensor.
    Morphism z = Morphism::zero({"2"}, {"2"}, 24);
    CHECK(compose(b, z).terms.empty());
    CHECK(tensor(z, a).terms.empty());
}

TEST_CASE("morphism validation reports term boundary drift") {
    const RepGraph& g = t_graph();
    Morphism m = Morphism::of(u_path(Path{{"1", "2"}}, g), 24);
    m.terms[Diagram::identity({"3"})] = Scalar(1L, 24);
    ValidationReport r = validate(m, CategoryContext::dgrams(g));
    CHECK(!r.pass);
    CHECK(r.problems.at(0).find("differs from morphism boundary") !=
          std::string::npos);
}
