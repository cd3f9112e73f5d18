#include "qwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "qwalk/errors.hpp"

namespace qwalk {

Graph::Graph(int n, std::vector<Edge> edges, std::vector<double> potentials)
    : n_(n), edges_(std::move(edges)), potentials_(std::move(potentials)) {
    if (n_ <= 0) throw ValidationError("graph needs at least one vertex");
    if (static_cast<int>(potentials_.size()) != n_)
        throw ValidationError("potential list length does not match vertex count");
    for (double q : potentials_)
        if (!std::isfinite(q)) throw ValidationError("potentials must be finite");

    std::set<Edge> seen;
    for (auto& e : edges_) {
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 0 || e.second >= n_)
            throw ValidationError("edge endpoint out of range");
        if (e.first == e.second) throw ValidationError("self-loops are not allowed");
        if (!seen.insert(e).second) throw ValidationError("duplicate edge");
    }
    std::sort(edges_.begin(), edges_.end());

    adjacency_.assign(n_, {});
    adjacency_matrix_.assign(n_, std::vector<char>(n_, 0));
    for (const auto& [a, b] : edges_) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
        adjacency_matrix_[a][b] = adjacency_matrix_[b][a] = 1;
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());

    // connectivity check
    std::vector<char> visited(n_, 0);
    std::queue<Vertex> frontier;
    frontier.push(0);
    visited[0] = 1;
    int count = 1;
    while (!frontier.empty()) {
        Vertex v = frontier.front();
        frontier.pop();
        for (Vertex w : adjacency_[v]) {
            if (!visited[w]) {
                visited[w] = 1;
                ++count;
                frontier.push(w);
            }
        }
    }
    if (count != n_) throw ValidationError("graph is not connected");
}

bool Graph::adjacent(Vertex u, Vertex v) const { return adjacency_matrix_[u][v] != 0; }

Graph Graph::with_potentials(std::vector<double> potentials) const {
    return Graph(n_, edges_, std::move(potentials));
}

Graph Graph::with_double_well(Vertex v, Vertex w, double q) const {
    std::vector<double> p(n_, 0.0);
    p[v] = p[w] = q;
    return with_potentials(std::move(p));
}

InvolutionVerdict validate_involution(const Graph& g, const Involution& inv) {
    const int n = g.vertex_count();
    if (static_cast<int>(inv.map.size()) != n)
        throw ValidationError("involution map length does not match vertex count");

    InvolutionVerdict verdict;
    auto fail = [&](std::string msg) {
        verdict.ok = false;
        verdict.violations.push_back(std::move(msg));
    };

    for (Vertex v = 0; v < n; ++v) {
        Vertex w = inv.map[v];
        if (w < 0 || w >= n) {
            fail("map[" + std::to_string(v) + "] out of range");
            continue;
        }
        if (inv.map[w] != v)
            fail("not self-inverse at vertex " + std::to_string(v) + ": sigma(sigma(" +
                 std::to_string(v) + ")) = " + std::to_string(inv.map[w]));
    }
    if (!verdict.ok) return verdict; // edge/potential checks need a sane map

    for (const auto& [a, b] : g.edges()) {
        if (!g.adjacent(inv(a), inv(b)))
            fail("edge (" + std::to_string(a) + "," + std::to_string(b) +
                 ") maps to non-edge (" + std::to_string(inv(a)) + "," +
                 std::to_string(inv(b)) + ")");
    }
    for (Vertex v = 0; v < n; ++v) {
        if (g.potential(v) != g.potential(inv(v)))
            fail("potential not preserved at vertex " + std::to_string(v) + " (" +
                 std::to_string(g.potential(v)) + " vs " +
                 std::to_string(g.potential(inv(v))) + ")");
    }
    return verdict;
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
    std::vector<int> dist(g.vertex_count(), -1);
    dist[source] = 0;
    std::queue<Vertex> frontier;
    frontier.push(source);
    while (!frontier.empty()) {
        Vertex v = frontier.front();
        frontier.pop();
        for (Vertex w : g.neighbors(v)) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                frontier.push(w);
            }
        }
    }
    return dist;
}

VertexPartition partition_vertices(const Graph& g, const Involution& inv, Vertex well) {
    if (inv.fixes(well)) throw DomainError("well vertex must not be fixed by the involution");

    const auto dist_well = bfs_distances(g, well);
    const auto dist_image = bfs_distances(g, inv(well));
    const int n = g.vertex_count();

    VertexPartition part;
    part.n.push_back(well);
    for (Vertex v = 0; v < n; ++v) {
        if (v == well || v == inv(well)) continue;
        if (inv.fixes(v)) {
            part.s.push_back(v);
        } else if (dist_well[v] < dist_image[v]) {
            part.n.push_back(v);
        } else if (dist_well[v] == dist_image[v]) {
            // equidistant pair {v, sigma(v)}: smaller index goes to N
            if (v < inv(v)) part.n.push_back(v);
        }
    }
    part.sigma_n.resize(part.n.size());
    for (std::size_t j = 0; j < part.n.size(); ++j) part.sigma_n[j] = inv(part.n[j]);
    return part;
}

int max_degree(const Graph& g) {
    int m = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) m = std::max(m, g.degree(v));
    return m;
}

int induced_degree(const Graph& g, Vertex v, const std::vector<Vertex>& subset) {
    int d = 0;
    for (Vertex w : subset)
        if (w != v && g.adjacent(v, w)) ++d;
    return d;
}

MirrorResult mirror_build(const Graph& half, const std::vector<Edge>& cross_edges,
                          Vertex well) {
    const int h = half.vertex_count();
    if (well < 0 || well >= h) throw DomainError("well must be a vertex of the half graph");

    std::vector<Edge> edges;
    for (const auto& [a, b] : half.edges()) {
        edges.emplace_back(a, b);
        edges.emplace_back(a + h, b + h);
    }
    std::set<Edge> cross_set;
    for (auto [a, b] : cross_edges) {
        if (a < 0 || a >= h || b < 0 || b >= h)
            throw ValidationError("cross edge endpoint out of range");
        if (a > b) std::swap(a, b);
        cross_set.emplace(a, b);
    }
    for (const auto& [a, b] : cross_set) {
        edges.emplace_back(std::min(a, b + h), std::max(a, b + h));
        if (a != b) edges.emplace_back(std::min(b, a + h), std::max(b, a + h));
    }

    std::vector<double> potentials(2 * h);
    for (Vertex v = 0; v < h; ++v)
        potentials[v] = potentials[v + h] = half.potential(v);

    Graph g(2 * h, std::move(edges), std::move(potentials));
    Involution inv;
    inv.map.resize(2 * h);
    for (Vertex v = 0; v < h; ++v) {
        inv.map[v] = v + h;
        inv.map[v + h] = v;
    }
    return MirrorResult{std::move(g), std::move(inv), well};
}

Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges), std::vector<double>(n, 0.0));
}

Graph cycle_graph(int n) {
    if (n < 3) throw DomainError("cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    return Graph(n, std::move(edges), std::vector<double>(n, 0.0));
}

Graph hypercube_graph(int dim) {
    const int n = 1 << dim;
    std::vector<Edge> edges;
    for (int x = 0; x < n; ++x)
        for (int b = 0; b < dim; ++b)
            if (x < (x ^ (1 << b))) edges.emplace_back(x, x ^ (1 << b));
    return Graph(n, std::move(edges), std::vector<double>(n, 0.0));
}

Involution path_reversal(int n) {
    Involution inv;
    inv.map.resize(n);
    for (int i = 0; i < n; ++i) inv.map[i] = n - 1 - i;
    return inv;
}

Involution cycle_antipodal(int n) {
    if (n % 2 != 0) throw DomainError("antipodal map needs an even cycle");
    Involution inv;
    inv.map.resize(n);
    for (int i = 0; i < n; ++i) inv.map[i] = (i + n / 2) % n;
    return inv;
}

Involution hypercube_antipodal(int dim) {
    const int n = 1 << dim;
    Involution inv;
    inv.map.resize(n);
    for (int x = 0; x < n; ++x) inv.map[x] = x ^ (n - 1);
    return inv;
}

} // namespace qwalk
