#ifndef QWALK_ORACLE_HPP
#define QWALK_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/hamiltonian.hpp"

namespace qwalk {

// Deliberately slow, simple cross-checks. Nothing here shares code with the
// spectral/walks implementations of the same quantities.

/// |<v| e^{itH} |u>|^2 via Taylor series with scaling and squaring.
double matexp_probability(const Hamiltonian& h, Vertex u, Vertex v, double t);

struct OracleSearchResult {
    double best_t = 0.0;
    double best_p = 0.0;
};

/// Grid fidelity maximum driven by the matrix-exponential propagator.
OracleSearchResult exhaustive_fidelity(const Hamiltonian& h, Vertex u, Vertex v,
                                       double horizon, double step);

struct FoundInvolution {
    Involution involution;
    bool is_identity = false;
};

/// Every self-inverse vertex bijection preserving edges and potentials,
/// identity included. Factorial search; refuses graphs beyond 12 vertices.
std::vector<FoundInvolution> enumerate_involutions(const Graph& g);

/// Exhaustive depth-first walk count; authority the masked-power counts are
/// tested against. Limits: max_length <= 10, n <= 8.
std::vector<std::int64_t> enumerate_walks_dfs(const Graph& g, Vertex source, Vertex target,
                                              std::vector<Vertex> forbidden_interior,
                                              int max_length);

} // namespace qwalk

#endif
