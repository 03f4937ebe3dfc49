/* Regenerates the bundled cyclic-group graph files cn_2.json .. cn_12.json.
 * Usage: make_cn_graphs [output-dir]   (default: data) */

#include "repcat/evaluator.hpp"

#include "json.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";
    for (int n = 2; n <= 12; ++n) {
        repcat::RepGraph g = repcat::build_rep_graph(repcat::make_group_cn(n));
        nlohmann::json j;
        j["conductor"] = 1;
        j["generator"] = g.generator;
        j["nodes"] = nlohmann::json::array();
        for (const auto& node : g.nodes)
            j["nodes"].push_back({{"id", node.label}, {"dim", 1}});
        j["edges"] = nlohmann::json::array();
        for (const auto& [from, to] : g.edges)
            j["edges"].push_back({{"from", from}, {"to", to}});
        std::string path = dir + "/cn_" + std::to_string(n) + ".json";
        std::ofstream out(path);
        if (!out) {
            std::cerr << "cannot write " << path << "\n";
            return 1;
        }
        out << j.dump(2) << "\n";
        std::cout << path << ": " << g.nodes.size() << " nodes, "
                  << g.edges.size() << " edges\n";
    }
    return 0;
}
