#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "repcat/evaluator.hpp"
#include "repcat/repgraph.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

using namespace repcat;

namespace {

std::set<std::pair<std::string, std::string>> undirected(
    const RepGraph& g) {
    std::set<std::pair<std::string, std::string>> out;
    for (auto [a, b] : g.edges) {
        if (b < a) std::swap(a, b);
        out.insert({a, b});
    }
    return out;
}

std::string write_temp(const std::string& stem, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / stem;
    std::ofstream out(path);
    out << text;
    return path.string();
}

}  // namespace

TEST_CASE("natural label order compares digit runs numerically") {
    CHECK(natural_less("3", "3'"));
    CHECK(!natural_less("3'", "3"));
    CHECK(natural_less("9", "10"));
    CHECK(natural_less("4", "4'"));
    CHECK(natural_less("7(1)", "7(2)"));
    CHECK(natural_less("7(1)", "8"));
    CHECK(!natural_less("2", "2"));
    CHECK(word_str({"1", "3'", "0"}) == "[1,3',0]");
    CHECK(word_str({}) == "[]");
}

TEST_CASE("binary tetrahedral graph is the affine E6 diagram") {
    GroupData t = make_group_t();
    RepGraph g = build_rep_graph(t);

    REQUIRE(g.nodes.size() == 7);
    CHECK(g.nodes[0].label == "0");  // unit first
    CHECK(g.generator == "1");
    CHECK(g.generator_dim == Scalar(2L, 24));
    CHECK(g.conductor == 24);
    CHECK(!g.truncated);
    CHECK(g.connected_from_generator());

    std::map<std::string, long> dims{{"0", 1}, {"1", 2}, {"2", 3}, {"3", 2},
                                     {"3'", 2}, {"4", 1}, {"4'", 1}};
    for (const auto& n : g.nodes)
        CHECK(n.dim == Scalar(dims.at(n.label), 24));

    std::set<std::pair<std::string, std::string>> expect{
        {"0", "1"}, {"1", "2"}, {"2", "3"}, {"3", "4"}, {"2", "3'"},
        {"3'", "4'"}};
    CHECK(undirected(g) == expect);
    CHECK(g.edges.size() == 12);  // every edge runs both ways

    CHECK(check_dimension_identity(g).all_pass());
}

TEST_CASE("tensor decompositions match the known direct sums") {
    GroupData t = make_group_t();
    auto mult = [&](const std::string& a) {
        return decompose_tensor(t.defining, t.simple(a), t).multiplicity;
    };
    using M = std::map<std::string, int>;
    CHECK(mult("0") == M{{"1", 1}});
    CHECK(mult("1") == M{{"0", 1}, {"2", 1}});
    CHECK(mult("2") == M{{"1", 1}, {"3", 1}, {"3'", 1}});
    CHECK(mult("3") == M{{"2", 1}, {"4", 1}});
    CHECK(mult("3'") == M{{"2", 1}, {"4'", 1}});
    CHECK(mult("4") == M{{"3", 1}});
    CHECK(mult("4'") == M{{"3'", 1}});

    GroupData c5 = make_group_cn(5);
    for (int a = 0; a < 5; ++a) {
        auto m = decompose_tensor(c5.defining, c5.simple(std::to_string(a)), c5)
                     .multiplicity;
        CHECK(m == M{{std::to_string((a + 1) % 5), 1}});
    }
}

TEST_CASE("intertwiner bases have the right dimension and are independent") {
    GroupData t = make_group_t();
    CHECK(hom_dim_oracle({"1", "1"}, {"0"}, t) == 1);
    CHECK(hom_dim_oracle({"1", "1"}, {"2"}, t) == 1);
    CHECK(hom_dim_oracle({"1", "1"}, {"3"}, t) == 0);
    CHECK(hom_dim_oracle({"1"}, {"1"}, t) == 1);
    CHECK(hom_dim_oracle({"1"}, {"3"}, t) == 0);
    CHECK(hom_dim_oracle({}, {"0"}, t) == 1);
    CHECK(hom_dim_oracle({}, {}, t) == 1);
    CHECK(hom_dim_oracle({"1", "2"}, {"3'"}, t) == 1);
    CHECK(hom_dim_oracle({"1", "1"}, {"1", "1"}, t) == 2);
    // Five paths of length 4 from the generator node to node 3 show up as
    // the multiplicity of module 3 inside the fifth tensor power.
    CHECK(hom_dim_oracle({"1", "1", "1", "1", "1"}, {"3"}, t) == 5);
    CHECK(hom_dim_oracle({"1", "1", "1", "1"}, {"3"}, t) == 0);

    // Every basis element intertwines all generators, and the basis is
    // linearly independent (here: two distinct endomorphisms of V (x) V).
    auto basis = intertwiner_basis({"1", "1"}, {"1", "1"}, t);
    REQUIRE(basis.size() == 2);
    for (const auto& f : basis)
        for (const auto& gen : t.generator_names)
            CHECK(f * word_action_matrix({"1", "1"}, gen, t) ==
                  word_action_matrix({"1", "1"}, gen, t) * f);
    std::vector<std::vector<Scalar>> flat;
    for (const auto& f : basis) {
        std::vector<Scalar> row;
        for (int i = 0; i < f.rows(); ++i)
            for (int j = 0; j < f.cols(); ++j) row.push_back(f.at(i, j));
        flat.push_back(std::move(row));
    }
    CHECK(ExactMatrix::from_rows(flat, 24).rank() == 2);
}

TEST_CASE("word actions use the kronecker rule or the coproduct rule") {
    GroupData t = make_group_t();
    ExactMatrix x = t.simple("1").gen_action.at("X");
    CHECK(word_action_matrix({"1", "1"}, "X", t) == x.kron(x));
    CHECK(word_action_matrix({}, "X", t) == ExactMatrix::identity(1, 24));

    GroupData su2 = make_group_su2(3);
    ExactMatrix h = word_action_matrix({"1", "1"}, "H", su2);
    ExactMatrix want(4, 4, 1);
    want.set(0, 0, Scalar(2L));
    want.set(3, 3, Scalar(-2L));
    CHECK(h == want);
    // [E, F] = H holds on tensor words as well.
    ExactMatrix e = word_action_matrix({"1", "2"}, "E", su2);
    ExactMatrix f = word_action_matrix({"1", "2"}, "F", su2);
    CHECK(e * f - f * e == word_action_matrix({"1", "2"}, "H", su2));
    CHECK(word_action_matrix({}, "H", su2) == ExactMatrix(1, 1, 1));
}

TEST_CASE("path enumeration agrees with adjacency powers") {
    RepGraph g = build_rep_graph(make_group_t());
    for (int k = 0; k <= 8; ++k)
        for (const auto& node : g.nodes) {
            long walks = count_paths_adjacency(g, "1", node.label, k);
            CHECK(static_cast<long>(
                      enumerate_paths(g, "1", node.label, k).size()) == walks);
        }
    // The five length-4 paths from the generator to node 3.
    auto p13 = enumerate_paths(g, "1", "3", 4);
    REQUIRE(p13.size() == 5);
    std::set<std::vector<std::string>> got;
    for (const auto& p : p13) got.insert(p.nodes);
    std::set<std::vector<std::string>> expect{
        {"1", "2", "3", "4", "3"},
        {"1", "2", "3", "2", "3"},
        {"1", "2", "1", "2", "3"},
        {"1", "2", "3'", "2", "3"},
        {"1", "0", "1", "2", "3"}};
    CHECK(got == expect);
    CHECK(p13[0].length() == 4);
    CHECK(Path{{"1", "0", "1", "2", "3"}}.str() == "(1,0,1,2,3)");
}

TEST_CASE("minimal inclusion lengths come with unique witness paths") {
    RepGraph g = build_rep_graph(make_group_t());
    auto [k1, p1] = minimal_inclusion_length(g, "1");
    CHECK(k1 == 0);
    CHECK(p1.nodes == std::vector<std::string>{"1"});
    auto [k0, p0] = minimal_inclusion_length(g, "0");
    CHECK(k0 == 1);
    CHECK(p0.nodes == std::vector<std::string>{"1", "0"});
    auto [k4, p4] = minimal_inclusion_length(g, "4");
    CHECK(k4 == 3);
    CHECK(p4.nodes == std::vector<std::string>{"1", "2", "3", "4"});
    auto [k3p, p3p] = minimal_inclusion_length(g, "3'");
    CHECK(k3p == 2);
    CHECK(p3p.nodes == std::vector<std::string>{"1", "2", "3'"});

    // Node 8 sits two steps from the generator in three different ways.
    RepGraph psl = load_fusion_graph(locate_data_file("psl_2_8"));
    CHECK_THROWS_AS(minimal_inclusion_length(psl, "8"), std::runtime_error);
    CHECK_THROWS_AS(minimal_inclusion_length(psl, "no_such"),
                    std::invalid_argument);
}

TEST_CASE("bundled fusion graphs load and satisfy the dimension identity") {
    RepGraph psl = load_fusion_graph(locate_data_file("psl_2_8"));
    REQUIRE(psl.nodes.size() == 9);
    CHECK(psl.nodes[0].label == "1");
    CHECK(psl.generator == "7(1)");
    CHECK(psl.generator_dim == Scalar(7L, 1));
    std::multiset<std::string> dims;
    for (const auto& n : psl.nodes) dims.insert(n.dim.str());
    CHECK(dims == std::multiset<std::string>{"1", "7", "7", "7", "7", "8", "9",
                                             "9", "9"});
    CHECK(psl.connected_from_generator());
    DimensionReport rep = check_dimension_identity(psl);
    CHECK(rep.all_pass());
    for (const auto& row : rep.rows)
        if (row.label == "7(1)") CHECK(row.actual == Scalar(49L, 1));

    RepGraph fib = load_fusion_graph(locate_data_file("fibonacci"));
    REQUIRE(fib.nodes.size() == 2);
    CHECK(fib.generator == "X");
    std::set<std::pair<std::string, std::string>> fib_edges{
        {"I", "X"}, {"X", "I"}, {"X", "X"}};
    CHECK(fib.edges == fib_edges);
    CHECK(check_dimension_identity(fib).all_pass());
    // The golden ratio node dimension satisfies phi^2 = 1 + phi.
    Scalar phi = fib.node("X").dim;
    CHECK(phi * phi == Scalar(1L, 5) + phi);

    for (int p : {5, 7}) {
        RepGraph ver =
            load_fusion_graph(locate_data_file("verlinde_p" + std::to_string(p)));
        CHECK(static_cast<int>(ver.nodes.size()) == p - 1);
        CHECK(ver.generator == "1");
        CHECK(check_dimension_identity(ver).all_pass());
        CHECK(ver.connected_from_generator());
        CHECK(static_cast<int>(ver.edges.size()) == 2 * (p - 2));
    }

    for (int n = 2; n <= 12; ++n) {
        RepGraph cn =
            load_fusion_graph(locate_data_file("cn_" + std::to_string(n)));
        CHECK(static_cast<int>(cn.nodes.size()) == n);
        CHECK(static_cast<int>(cn.edges.size()) == n);  // one-way cycle
        CHECK(check_dimension_identity(cn).all_pass());
        CHECK(cn.connected_from_generator());
    }
}

TEST_CASE("fusion path counts match adjacency powers on every bundled graph") {
    for (const char* name :
         {"psl_2_8", "fibonacci", "verlinde_p5", "verlinde_p7", "cn_6"}) {
        RepGraph g = load_fusion_graph(locate_data_file(name));
        for (int k = 0; k <= 8; ++k)
            for (const auto& node : g.nodes) {
                long walks =
                    count_paths_adjacency(g, g.generator, node.label, k);
                CHECK(static_cast<long>(
                          enumerate_paths(g, g.generator, node.label, k)
                              .size()) == walks);
            }
    }
    // Walks from the Fibonacci generator back to itself count Fibonacci
    // numbers: 1, 1, 2, 3, 5, 8 for lengths 0..5.
    RepGraph fib = load_fusion_graph(locate_data_file("fibonacci"));
    std::vector<long> fibs{1, 1, 2, 3, 5, 8};
    for (int k = 0; k < 6; ++k)
        CHECK(count_paths_adjacency(fib, "X", "X", k) == fibs[k]);
}

TEST_CASE("a broken graph fails the dimension identity with a named node") {
    RepGraph g = load_fusion_graph(locate_data_file("psl_2_8"));
    g.edges.erase({"7(1)", "9"});
    DimensionReport rep = check_dimension_identity(g);
    CHECK(!rep.all_pass());
    bool flagged = false;
    for (const auto& row : rep.rows)
        if (!row.pass) {
            CHECK(row.label == "7(1)");
            flagged = true;
        }
    CHECK(flagged);
    CHECK(rep.str().find("FAIL") != std::string::npos);
}

TEST_CASE("graph file problems raise descriptive errors") {
    CHECK_THROWS_AS(locate_data_file("no_such_graph_xyz"), std::runtime_error);
    CHECK_THROWS_AS(
        load_fusion_graph(write_temp("bad_syntax.json", "{ nope")),
        std::runtime_error);
    CHECK_THROWS_AS(
        load_fusion_graph(write_temp(
            "no_conductor.json",
            R"({"generator":"a","nodes":[{"id":"a","dim":1}],"edges":[]})")),
        std::runtime_error);
    CHECK_THROWS_AS(
        load_fusion_graph(write_temp(
            "dup_edge.json",
            R"({"conductor":1,"generator":"a",
                "nodes":[{"id":"a","dim":1},{"id":"b","dim":1}],
                "edges":[{"from":"a","to":"b"},{"from":"a","to":"b"}]})")),
        std::runtime_error);
    CHECK_THROWS_AS(
        load_fusion_graph(write_temp(
            "stray_edge.json",
            R"({"conductor":1,"generator":"a",
                "nodes":[{"id":"a","dim":1}],
                "edges":[{"from":"a","to":"zzz"}]})")),
        std::runtime_error);
    CHECK_THROWS_AS(
        load_fusion_graph(write_temp(
            "no_generator_node.json",
            R"({"conductor":1,"generator":"v",
                "nodes":[{"id":"a","dim":1}],"edges":[]})")),
        std::runtime_error);
}

TEST_CASE("the truncated tensor family clips at the weight budget") {
    GroupData su2 = make_group_su2(4);
    RepGraph g = build_rep_graph(su2);
    REQUIRE(g.nodes.size() == 5);
    CHECK(g.truncated);
    CHECK(g.generator == "1");
    std::set<std::pair<std::string, std::string>> expect{
        {"0", "1"}, {"1", "2"}, {"2", "3"}, {"3", "4"}};
    CHECK(undirected(g) == expect);

    auto top = decompose_tensor(su2.defining, su2.simple("4"), su2);
    CHECK(top.clipped);
    CHECK(top.multiplicity == std::map<std::string, int>{{"3", 1}});
    auto mid = decompose_tensor(su2.defining, su2.simple("2"), su2);
    CHECK(!mid.clipped);
    CHECK(mid.multiplicity ==
          std::map<std::string, int>{{"1", 1}, {"3", 1}});

    // The identity holds at interior nodes and fails only at the clipped
    // boundary node.
    DimensionReport rep = check_dimension_identity(g);
    for (const auto& row : rep.rows)
        CHECK(row.pass == (row.label != "4"));
}

TEST_CASE("a two-summand defining module gives the cycle graph") {
    RepGraph g = build_rep_graph(make_group_cn_double(5));
    REQUIRE(g.nodes.size() == 5);
    CHECK(g.generator == "0");  // V is not a node; the unit stands in
    CHECK(g.generator_dim == Scalar(2L, 20));
    CHECK(g.edges.size() == 10);
    for (int a = 0; a < 5; ++a) {
        CHECK(g.has_edge(std::to_string(a), std::to_string((a + 1) % 5)));
        CHECK(g.has_edge(std::to_string(a), std::to_string((a + 4) % 5)));
    }
    CHECK(check_dimension_identity(g).all_pass());

    // Order 2 doubles up: V (x) 0 = 1 (+) 1 is not multiplicity-free.
    CHECK_THROWS_AS(build_rep_graph(make_group_cn_double(2)),
                    std::runtime_error);
}

TEST_CASE("group files load and match the builtin construction") {
    GroupData filed = load_group_data("t_binary_tetrahedral");
    GroupData built = make_group_t();
    REQUIRE(filed.simples.size() == built.simples.size());
    CHECK(filed.conductor == 24);
    CHECK(filed.defining.label == "1");
    CHECK(filed.generator_names == built.generator_names);
    for (size_t i = 0; i < built.simples.size(); ++i) {
        CHECK(filed.simples[i].label == built.simples[i].label);
        CHECK(filed.simples[i].dim == built.simples[i].dim);
        for (const auto& gen : built.generator_names)
            CHECK(filed.simples[i].gen_action.at(gen) ==
                  built.simples[i].gen_action.at(gen));
    }

    // Without a "defining" entry the second listed simple is used.
    std::string two = write_temp("two_simples.json", R"({
        "conductor": 4, "generators": ["g"],
        "simples": [
          {"id": "e", "dim": 1, "action": {"g": [[1]]}},
          {"id": "v", "dim": 1, "action": {"g": [["z"]]}}
        ]})");
    CHECK(load_group_data(two).defining.label == "v");

    CHECK_THROWS_AS(load_group_data(write_temp("missing_action.json", R"({
        "conductor": 4, "generators": ["g", "h"],
        "simples": [{"id": "e", "dim": 1, "action": {"g": [[1]]}},
                    {"id": "v", "dim": 1, "action": {"g": [["z"]]}}]})")),
                    std::runtime_error);
    CHECK_THROWS_AS(load_group_data(write_temp("bad_defining.json", R"({
        "conductor": 4, "generators": ["g"], "defining": "w",
        "simples": [{"id": "e", "dim": 1, "action": {"g": [[1]]}},
                    {"id": "v", "dim": 1, "action": {"g": [["z"]]}}]})")),
                    std::runtime_error);
    CHECK_THROWS_AS(load_group_data(write_temp("ragged.json", R"({
        "conductor": 4, "generators": ["g"],
        "simples": [{"id": "e", "dim": 2, "action": {"g": [[1, 0]]}},
                    {"id": "v", "dim": 1, "action": {"g": [["z"]]}}]})")),
                    std::runtime_error);
}

TEST_CASE("group resolution recognizes builtin names and files") {
    CHECK(resolve_group("T").name == "T");
    CHECK(resolve_group("cn7").simples.size() == 7);
    CHECK(resolve_group("cnd5").defining.dim == 2);
    CHECK(resolve_group("su2:3").lie);
    CHECK(resolve_group("t_binary_tetrahedral").simples.size() == 7);
    CHECK_THROWS_AS(resolve_group("cn"), std::runtime_error);
    CHECK_THROWS_AS(resolve_group("mystery_group_42"), std::runtime_error);
}
