#include "repcat/cli.hpp"

#include "repcat/cn_rewrite.hpp"
#include "repcat/dsl.hpp"
#include "repcat/evaluator.hpp"
#include "repcat/tl.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <random>

namespace repcat {

namespace {

using nlohmann::json;

struct Options {
    int cn = 0;
    std::string group;
    std::string graph;
    bool star = false;
    std::string format = "text";
    unsigned long seed = 0;
    std::string from, to;
    int len = 0;
    std::string source, target;
    std::string expr;
    int count = 100;
    int max_len = 4;
    int check_len = 8;
    int bottom = 0, top = 0, width = 0;
    std::string upper, lower;
    std::string delta = "2";
    int conductor = 1;
};

ObjectWord split_word(const std::string& text) {
    ObjectWord out;
    size_t from = 0;
    auto trimmed = [](std::string s) {
        size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
            --b;
        return s.substr(a, b - a);
    };
    if (trimmed(text).empty()) return out;
    while (true) {
        size_t comma = text.find(',', from);
        std::string piece = trimmed(text.substr(
            from, comma == std::string::npos ? comma : comma - from));
        if (piece.empty())
            throw std::invalid_argument("empty label in word \"" + text +
                                        "\"");
        out.push_back(piece);
        if (comma == std::string::npos) break;
        from = comma + 1;
    }
    return out;
}

bool builtin_group_name(const std::string& s) {
    auto digits = [](const std::string& t) {
        return !t.empty() &&
               std::all_of(t.begin(), t.end(), [](unsigned char c) {
                   return std::isdigit(c);
               });
    };
    return s == "T" || s == "t_binary_tetrahedral" ||
           (s.rfind("cnd", 0) == 0 && digits(s.substr(3))) ||
           (s.rfind("cn", 0) == 0 && digits(s.substr(2))) ||
           (s.rfind("su2:", 0) == 0 && digits(s.substr(4)));
}

// A graph plus, when the data carries module matrices, the group behind it.
struct LoadedGraph {
    std::optional<GroupData> group;
    RepGraph graph;
};

LoadedGraph load_graph(const std::string& spec) {
    LoadedGraph out;
    if (builtin_group_name(spec)) {
        out.group = resolve_group(spec);
        out.graph = build_rep_graph(*out.group);
        return out;
    }
    std::string path = locate_data_file(spec);
    std::ifstream in(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed data file " + path + ": " +
                                 e.what());
    }
    if (j.contains("simples")) {
        out.group = load_group_data(path);
        out.graph = build_rep_graph(*out.group);
    } else {
        out.graph = load_fusion_graph(path);
    }
    return out;
}

// Everything a category context can need; built per command.
struct Context {
    int cn = 0;
    std::optional<GroupData> group;
    std::optional<MergeSystem> ms;
    std::optional<StarSystem> star;
    std::optional<RepGraph> fusion_only;

    CategoryContext category() const {
        if (cn) return CategoryContext::cn_irr(cn);
        if (star) return CategoryContext::star(star->ms.graph);
        if (ms) return CategoryContext::dgrams(ms->graph);
        return CategoryContext::dgrams(*fusion_only);
    }
    EvalContext eval() const {
        if (cn) return EvalContext::cn_irr(cn);
        if (star) return EvalContext::star_cat(*star);
        if (ms) return EvalContext::dgrams(*ms);
        throw std::runtime_error(
            "this command needs module matrices; pass --group (or a group "
            "data file) instead of a bare graph");
    }
};

Context load_context(const Options& opt) {
    int given = (opt.cn > 0 ? 1 : 0) + (opt.group.empty() ? 0 : 1) +
                (opt.graph.empty() ? 0 : 1);
    if (given != 1)
        throw std::invalid_argument(
            "give exactly one of --cn N, --group SPEC, --graph SPEC");
    Context c;
    if (opt.cn > 0) {
        if (opt.star)
            throw std::invalid_argument("--star needs a graph category");
        c.cn = opt.cn;
        return c;
    }
    LoadedGraph lg = load_graph(opt.group.empty() ? opt.graph : opt.group);
    if (!lg.group) {
        if (opt.star)
            throw std::invalid_argument(
                "--star needs module matrices; this file is a bare graph");
        c.fusion_only = std::move(lg.graph);
        return c;
    }
    c.group = std::move(lg.group);
    if (opt.star)
        c.star = build_star_system(*c.group);
    else
        c.ms = build_merge_system(*c.group);
    return c;
}

void emit(std::ostream& out, const Options& opt, const std::string& text,
          const json& j) {
    if (opt.format == "json")
        out << j.dump(2) << "\n";
    else
        out << text;
}

json report_json(const RelationReport& rep) {
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"name", r.name}, {"pass", r.pass},
                        {"detail", r.detail}});
    return {{"rows", rows}, {"pass", rep.all_pass()}};
}

// Count length-k walks from `from` to every node by pushing counts along the
// edge set directly, independently of the adjacency-matrix power.
std::map<std::string, long> walk_counts(const RepGraph& g,
                                        const std::string& from, int k) {
    std::map<std::string, long> counts;
    counts[from] = 1;
    for (int step = 0; step < k; ++step) {
        std::map<std::string, long> next;
        for (const auto& [a, b] : g.edges) {
            auto it = counts.find(a);
            if (it != counts.end()) next[b] += it->second;
        }
        counts = std::move(next);
    }
    return counts;
}

int cmd_graph_build(const Options& opt, std::ostream& out) {
    std::string spec = opt.group.empty() ? opt.graph : opt.group;
    if (spec.empty())
        throw std::invalid_argument("graph-build needs --group SPEC");
    LoadedGraph lg = load_graph(spec);
    if (!lg.group)
        throw std::invalid_argument(
            "graph-build derives a graph from module matrices; \"" + spec +
            "\" is already a bare graph");
    json nodes = json::array(), edges = json::array();
    for (const auto& n : lg.graph.nodes)
        nodes.push_back({{"id", n.label}, {"dim", n.dim.str()}});
    for (const auto& [a, b] : lg.graph.edges) edges.push_back({a, b});
    emit(out, opt, lg.graph.str() + "\n",
         {{"nodes", nodes},
          {"edges", edges},
          {"generator", lg.graph.generator},
          {"generator_dim", lg.graph.generator_dim.str()},
          {"connected", lg.graph.connected_from_generator()},
          {"truncated", lg.graph.truncated}});
    return 0;
}

int cmd_graph_check(const Options& opt, std::ostream& out) {
    std::string spec = opt.graph.empty() ? opt.group : opt.graph;
    if (spec.empty())
        throw std::invalid_argument("graph-check needs --graph SPEC");
    LoadedGraph lg = load_graph(spec);
    DimensionReport dims = check_dimension_identity(lg.graph);
    json dim_rows = json::array();
    for (const auto& r : dims.rows)
        dim_rows.push_back({{"node", r.label},
                            {"expected", r.expected.str()},
                            {"actual", r.actual.str()},
                            {"pass", r.pass}});
    bool counts_pass = true;
    json count_rows = json::array();
    std::string count_text;
    for (int k = 1; k <= opt.check_len; ++k) {
        auto walked = walk_counts(lg.graph, lg.graph.generator, k);
        bool row_pass = true;
        long total = 0;
        for (const auto& node : lg.graph.nodes) {
            auto it = walked.find(node.label);
            long count = it == walked.end() ? 0 : it->second;
            long adjacency = count_paths_adjacency(
                lg.graph, lg.graph.generator, node.label, k);
            row_pass = row_pass && count == adjacency;
            total += count;
        }
        counts_pass = counts_pass && row_pass;
        count_rows.push_back(
            {{"length", k}, {"walks", total}, {"pass", row_pass}});
        count_text += std::string(row_pass ? "pass" : "FAIL") +
                      "  walk counts of length " + std::to_string(k) +
                      " match the adjacency power (" + std::to_string(total) +
                      " from " + lg.graph.generator + ")\n";
    }
    bool pass = dims.all_pass() && counts_pass;
    emit(out, opt, dims.str() + count_text,
         {{"dimension", dim_rows}, {"walks", count_rows}, {"pass", pass}});
    return pass ? 0 : 1;
}

int cmd_paths(const Options& opt, std::ostream& out) {
    std::string spec = opt.graph.empty() ? opt.group : opt.graph;
    if (spec.empty()) throw std::invalid_argument("paths needs --graph SPEC");
    if (opt.from.empty() || opt.to.empty() || opt.len < 0)
        throw std::invalid_argument("paths needs --from, --to, and --len");
    LoadedGraph lg = load_graph(spec);
    auto found = enumerate_paths(lg.graph, opt.from, opt.to, opt.len);
    long adjacency =
        count_paths_adjacency(lg.graph, opt.from, opt.to, opt.len);
    bool pass = static_cast<long>(found.size()) == adjacency;
    std::string text;
    json listed = json::array();
    for (const auto& p : found) {
        text += p.str() + "\n";
        listed.push_back(p.str());
    }
    text += std::to_string(found.size()) + " paths of length " +
            std::to_string(opt.len) + " from " + opt.from + " to " + opt.to +
            " (adjacency power: " + std::to_string(adjacency) + ")\n";
    emit(out, opt, text,
         {{"from", opt.from},
          {"to", opt.to},
          {"length", opt.len},
          {"count", found.size()},
          {"adjacency_count", adjacency},
          {"paths", listed},
          {"pass", pass}});
    return pass ? 0 : 1;
}

int cmd_homdim(const Options& opt, std::ostream& out) {
    ObjectWord source = split_word(opt.source);
    ObjectWord target = split_word(opt.target);
    Context c = load_context(opt);
    int dim = 0;
    if (c.cn) {
        dim = hom_dim_cn(source, target, c.cn);
    } else if (c.group) {
        dim = hom_dim_oracle(source, target, *c.group);
    } else {
        throw std::invalid_argument(
            "homdim needs --cn or group data with module matrices");
    }
    emit(out, opt, std::to_string(dim) + "\n",
         {{"source", source}, {"target", target}, {"dim", dim}});
    return 0;
}

int cmd_normalize(const Options& opt, std::ostream& out, std::ostream& err) {
    if (opt.cn <= 0)
        throw std::invalid_argument("normalize needs --cn N");
    Morphism m =
        parse_dsl(opt.expr, CategoryContext::cn_irr(opt.cn), opt.cn);
    try {
        Morphism normal = normalize_cn(m, opt.cn, opt.seed);
        emit(out, opt, normal.str() + "\n",
             {{"input", m.str()},
              {"normal_form", normal.str()},
              {"seed", opt.seed}});
        return 0;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_eval(const Options& opt, std::ostream& out) {
    Context c = load_context(opt);
    EvalContext ectx = c.eval();
    // In the cyclic-residue category the evaluation itself is rational, but
    // DSL coefficients may still mention z = zeta_n.
    int conductor = c.cn ? c.cn : ectx.conductor();
    Morphism m = parse_dsl(opt.expr, c.category(), conductor);
    ExactMatrix result = eval_morphism(m, ectx);
    json rows = json::array();
    for (int i = 0; i < result.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < result.cols(); ++j)
            row.push_back(result.at(i, j).str());
        rows.push_back(row);
    }
    emit(out, opt, result.str() + "\n",
         {{"rows", result.rows()},
          {"cols", result.cols()},
          {"conductor", result.conductor()},
          {"matrix", rows}});
    return 0;
}

int cmd_check_relations(const Options& opt, std::ostream& out) {
    Context c = load_context(opt);
    RelationReport rep = check_category_relations(c.eval());
    emit(out, opt, rep.str(), report_json(rep));
    return rep.all_pass() ? 0 : 1;
}

int cmd_schur(const Options& opt, std::ostream& out) {
    Context c = load_context(opt);
    if (c.cn)
        throw std::invalid_argument("schur needs a graph category");
    EvalContext ectx = c.eval();
    const RepGraph& g = c.star ? c.star->ms.graph : c.ms->graph;
    std::vector<std::vector<Path>> pool(opt.max_len + 1);
    for (int k = 1; k <= opt.max_len; ++k)
        for (const auto& node : g.nodes) {
            auto paths = enumerate_paths(g, g.generator, node.label, k);
            pool[k].insert(pool[k].end(), paths.begin(), paths.end());
        }
    std::mt19937_64 rng(opt.seed);
    bool pass = true;
    std::string text;
    json trials = json::array();
    for (int t = 0; t < opt.count; ++t) {
        int k = 1 + static_cast<int>(rng() % opt.max_len);
        while (pool[k].empty()) k = 1 + static_cast<int>(rng() % opt.max_len);
        const Path& p = pool[k][rng() % pool[k].size()];
        const Path& q = pool[k][rng() % pool[k].size()];
        Morphism m = Morphism::of(
            compose_diagrams(u_path(q, g), d_path(p, g)), ectx.conductor());
        std::string label = p.str() + " vs " + q.str();
        json trial{{"lower", p.str()}, {"upper", q.str()}};
        try {
            auto [same, alpha] = schur_scalar(m, ectx);
            trial["scalar"] = alpha.str();
            trial["pass"] = true;
            text += "pass  " + label +
                    (same ? ": alpha = " + alpha.str() : ": zero") + "\n";
        } catch (const std::domain_error& e) {
            pass = false;
            trial["pass"] = false;
            trial["error"] = e.what();
            text += std::string("FAIL  ") + label + ": " + e.what() + "\n";
        }
        trials.push_back(trial);
    }
    text += std::string(pass ? "pass" : "FAIL") + "  " +
            std::to_string(opt.count) + " random path sandwiches\n";
    emit(out, opt, text, {{"trials", trials}, {"pass", pass}});
    return pass ? 0 : 1;
}

int cmd_tl_dim(const Options& opt, std::ostream& out) {
    auto basis = tl_basis(opt.bottom, opt.top);
    std::string text;
    json listed = json::array();
    for (const auto& d : basis) {
        text += d.str() + "\n";
        listed.push_back(d.str());
    }
    text += "dimension: " + std::to_string(basis.size()) + "\n";
    emit(out, opt, text,
         {{"bottom", opt.bottom},
          {"top", opt.top},
          {"dimension", basis.size()},
          {"basis", listed}});
    return 0;
}

int cmd_tl_compose(const Options& opt, std::ostream& out) {
    Scalar delta = Scalar::parse(opt.delta, opt.conductor);
    TLMorphism upper = TLMorphism::of(parse_planar(opt.upper), delta);
    TLMorphism lower = TLMorphism::of(parse_planar(opt.lower), delta);
    TLMorphism result = tl_compose(upper, lower);
    emit(out, opt, result.str() + "\n",
         {{"upper", opt.upper},
          {"lower", opt.lower},
          {"delta", delta.str()},
          {"result", result.str()}});
    return 0;
}

int cmd_tl_check(const Options& opt, std::ostream& out) {
    Scalar delta = Scalar::parse(opt.delta, opt.conductor);
    RelationReport rep = check_tl_presentation(opt.width, delta);
    emit(out, opt, rep.str(), report_json(rep));
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"exact verification toolkit for diagrammatic module "
                 "categories"};
    app.name("repcat");
    app.require_subcommand(1);
    Options opt;

    auto category_flags = [&](CLI::App* cmd) {
        cmd->add_option("--cn", opt.cn, "cyclic-residue category modulus");
        cmd->add_option("--group", opt.group,
                        "group data: T, cn<N>, cnd<N>, su2:<B>, or a file");
        cmd->add_option("--graph", opt.graph,
                        "graph or group data name or file");
        cmd->add_flag("--star", opt.star,
                      "extend the graph category by the star object");
    };
    auto format_flag = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* build = app.add_subcommand(
        "graph-build", "derive the representation graph from group data");
    build->add_option("--group", opt.group, "group data name or file");
    build->add_option("--graph", opt.graph, "alias for --group");
    format_flag(build);

    CLI::App* gcheck = app.add_subcommand(
        "graph-check",
        "dimension identity per node and walk counts vs adjacency powers");
    gcheck->add_option("--graph", opt.graph, "graph data name or file");
    gcheck->add_option("--group", opt.group, "group data name or file");
    gcheck->add_option("--max-len", opt.check_len,
                       "largest walk length (default 8)");
    format_flag(gcheck);

    CLI::App* paths = app.add_subcommand(
        "paths", "enumerate graph paths and cross-check the count");
    paths->add_option("--graph", opt.graph, "graph data name or file");
    paths->add_option("--group", opt.group, "group data name or file");
    paths->add_option("--from", opt.from, "start node")->required();
    paths->add_option("--to", opt.to, "end node")->required();
    paths->add_option("--len", opt.len, "path length (edges)")->required();
    format_flag(paths);

    CLI::App* homdim = app.add_subcommand(
        "homdim", "dimension of the space of maps between two words");
    category_flags(homdim);
    homdim->add_option("--source", opt.source, "comma separated labels");
    homdim->add_option("--target", opt.target, "comma separated labels");
    format_flag(homdim);

    CLI::App* normalize = app.add_subcommand(
        "normalize", "rewrite a cyclic-category morphism to canonical form");
    category_flags(normalize);
    normalize->add_option("expr", opt.expr, "morphism in the diagram DSL")
        ->required();
    normalize->add_option("--seed", opt.seed, "rewrite order seed");
    format_flag(normalize);

    CLI::App* eval = app.add_subcommand(
        "eval", "evaluate a morphism to its exact matrix");
    category_flags(eval);
    eval->add_option("expr", opt.expr, "morphism in the diagram DSL")
        ->required();
    format_flag(eval);

    CLI::App* relations = app.add_subcommand(
        "check-relations", "verify the defining relation suite");
    category_flags(relations);
    format_flag(relations);

    CLI::App* schur = app.add_subcommand(
        "schur", "random path sandwiches: zero off-diagonal, scalar on");
    category_flags(schur);
    schur->add_option("--count", opt.count,
                      "number of sandwiches (default 100)");
    schur->add_option("--max-len", opt.max_len,
                      "largest path length (default 4)");
    schur->add_option("--seed", opt.seed, "sampling seed");
    format_flag(schur);

    CLI::App* tldim = app.add_subcommand(
        "tl-dim", "planar pairing basis between two rows");
    tldim->add_option("--bottom", opt.bottom, "bottom points")->required();
    tldim->add_option("--top", opt.top, "top points")->required();
    format_flag(tldim);

    CLI::App* tlcompose = app.add_subcommand(
        "tl-compose", "stack two planar pairings and count loops");
    tlcompose->add_option("--upper", opt.upper, "pairing applied second")
        ->required();
    tlcompose->add_option("--lower", opt.lower, "pairing applied first")
        ->required();
    tlcompose->add_option("--delta", opt.delta,
                          "loop value literal (default 2)");
    tlcompose->add_option("--conductor", opt.conductor,
                          "cyclotomic conductor for the loop value");
    format_flag(tlcompose);

    CLI::App* tlcheck = app.add_subcommand(
        "tl-check", "generator presentation and matrix model checks");
    tlcheck->add_option("--width", opt.width, "strand count")->required();
    tlcheck->add_option("--delta", opt.delta,
                        "loop value literal (default 2)");
    tlcheck->add_option("--conductor", opt.conductor,
                        "cyclotomic conductor for the loop value");
    format_flag(tlcheck);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return cmd_graph_build(opt, out);
        if (gcheck->parsed()) return cmd_graph_check(opt, out);
        if (paths->parsed()) return cmd_paths(opt, out);
        if (homdim->parsed()) return cmd_homdim(opt, out);
        if (normalize->parsed()) return cmd_normalize(opt, out, err);
        if (eval->parsed()) return cmd_eval(opt, out);
        if (relations->parsed()) return cmd_check_relations(opt, out);
        if (schur->parsed()) return cmd_schur(opt, out);
        if (tldim->parsed()) return cmd_tl_dim(opt, out);
        if (tlcompose->parsed()) return cmd_tl_compose(opt, out);
        if (tlcheck->parsed()) return cmd_tl_check(opt, out);
        err << "error: no command\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace repcat
