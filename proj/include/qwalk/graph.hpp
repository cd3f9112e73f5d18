#ifndef QWALK_GRAPH_HPP
#define QWALK_GRAPH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qwalk {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>; // stored with first < second

/// Simple connected undirected graph with a real potential on each vertex.
/// Construction validates edge indices, simplicity and connectivity.
class Graph {
  public:
    Graph(int n, std::vector<Edge> edges, std::vector<double> potentials);

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<double>& potentials() const { return potentials_; }
    double potential(Vertex v) const { return potentials_[v]; }

    bool adjacent(Vertex u, Vertex v) const;
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }

    /// Same structure, new potential values.
    Graph with_potentials(std::vector<double> potentials) const;
    /// Potential q on the pair (v, w), zero everywhere else.
    Graph with_double_well(Vertex v, Vertex w, double q) const;

  private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<double> potentials_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::vector<char>> adjacency_matrix_;
};

/// Self-inverse vertex bijection, stored as map[v] = sigma(v).
struct Involution {
    std::vector<Vertex> map;

    Vertex operator()(Vertex v) const { return map[v]; }
    bool fixes(Vertex v) const { return map[v] == v; }
};

struct InvolutionVerdict {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Partition V = N + sigma(N) + S induced by an involution and a chosen
/// well vertex. sigma_n[j] is always the image of n[j]; s collects the
/// fixed vertices.
struct VertexPartition {
    std::vector<Vertex> n;
    std::vector<Vertex> sigma_n;
    std::vector<Vertex> s;

    int k() const { return static_cast<int>(n.size()); }
    int fixed_count() const { return static_cast<int>(s.size()); }
};

/// Checks the three involution conditions: self-inverse, edge-preserving,
/// potential-preserving. Violations name the offending vertices/edges.
InvolutionVerdict validate_involution(const Graph& g, const Involution& inv);

/// Splits the vertices around a non-fixed well: the well leads N, vertices
/// strictly closer to the well than to its image go to N, ties go to the
/// member of {x, sigma(x)} with the smaller index.
VertexPartition partition_vertices(const Graph& g, const Involution& inv, Vertex well);

/// Hop distances from source to every vertex (graph is connected by construction).
std::vector<int> bfs_distances(const Graph& g, Vertex source);

int max_degree(const Graph& g);

/// Degree of v within the subgraph induced by the given vertex set.
int induced_degree(const Graph& g, Vertex v, const std::vector<Vertex>& subset);

struct MirrorResult {
    Graph graph;
    Involution involution;
    Vertex well;
};

/// Doubles a half-graph into a mirror-symmetric whole. Vertex i of the half
/// becomes i and its copy i + h; a cross pair (i, j) adds the edges i-(j+h)
/// and j-(i+h). The returned involution swaps each vertex with its copy.
MirrorResult mirror_build(const Graph& half, const std::vector<Edge>& cross_edges,
                          Vertex well);

// Standard families used throughout the tests and docs.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph hypercube_graph(int dim);
Involution path_reversal(int n);
Involution cycle_antipodal(int n);
Involution hypercube_antipodal(int dim);

} // namespace qwalk

#endif
