#include "qwalk/graph_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qwalk/errors.hpp"

namespace qwalk {

using nlohmann::json;

GraphFile parse_graph_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }

    try {
        if (!j.is_object() || !j.contains("n") || !j.contains("edges") ||
            !j.contains("potentials"))
            throw ParseError("graph file must contain n, potentials and edges");

        const int n = j.at("n").get<int>();
        std::vector<double> potentials = j.at("potentials").get<std::vector<double>>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("each edge must be a pair [i, j]");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }

        Graph g(n, std::move(edges), std::move(potentials));

        std::optional<Involution> inv;
        if (j.contains("involution") && !j.at("involution").is_null()) {
            Involution candidate{j.at("involution").get<std::vector<Vertex>>()};
            auto verdict = validate_involution(g, candidate);
            if (!verdict.ok) {
                std::string msg = "involution invalid:";
                for (const auto& v : verdict.violations) msg += " [" + v + "]";
                throw ValidationError(msg);
            }
            inv = std::move(candidate);
        }

        std::optional<Vertex> well;
        if (j.contains("well") && !j.at("well").is_null()) {
            const Vertex w = j.at("well").get<Vertex>();
            if (w < 0 || w >= n) throw ValidationError("well vertex out of range");
            well = w;
        }

        return GraphFile{std::move(g), std::move(inv), well};
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed graph file: ") + e.what());
    }
}

GraphFile load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph_json(buffer.str());
}

std::string graph_to_json(const GraphFile& gf) {
    json j;
    j["n"] = gf.graph.vertex_count();
    j["potentials"] = gf.graph.potentials();
    json edges = json::array();
    for (const auto& [a, b] : gf.graph.edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    if (gf.involution) j["involution"] = gf.involution->map;
    if (gf.well) j["well"] = *gf.well;
    return j.dump(2);
}

void save_graph_file(const GraphFile& gf, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write file: " + path);
    out << graph_to_json(gf) << "\n";
}

} // namespace qwalk
