#ifndef QWALK_GRAPH_IO_HPP
#define QWALK_GRAPH_IO_HPP

#include <optional>
#include <string>

#include "qwalk/graph.hpp"

namespace qwalk {

/// A graph file: the graph itself plus the optional involution/well pair.
/// Schema: {"n": int, "potentials": [...], "edges": [[i,j],...],
///          "involution": [...] (optional), "well": int (optional)}
struct GraphFile {
    Graph graph;
    std::optional<Involution> involution;
    std::optional<Vertex> well;
};

/// Parses and validates a graph file. Decoding problems raise ParseError;
/// structural problems (including a broken involution) raise ValidationError.
GraphFile load_graph_file(const std::string& path);
GraphFile parse_graph_json(const std::string& text);

std::string graph_to_json(const GraphFile& gf);
void save_graph_file(const GraphFile& gf, const std::string& path);

} // namespace qwalk

#endif
