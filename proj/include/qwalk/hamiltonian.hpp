#ifndef QWALK_HAMILTONIAN_HPP
#define QWALK_HAMILTONIAN_HPP

#include <utility>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/matrix.hpp"

namespace qwalk {

/// H = A + diag(Q): adjacency matrix plus the vertex potentials on the
/// diagonal. Off-diagonal entries are exactly 0 or 1.
struct Hamiltonian {
    Matrix matrix;

    int size() const { return static_cast<int>(matrix.rows()); }
};

Hamiltonian assemble_hamiltonian(const Graph& g);

/// The involution splits H into a (k+s)-dimensional symmetric sector and a
/// k-dimensional antisymmetric sector. plus_asym is the raw reduced block
/// [[H' + A_sigma, A_S], [2 A_S^T, H_S]]; plus_sym is its symmetric
/// similarity transform by diag(1_k, sqrt(2)·1_s), which shares its
/// eigenvalues and is what the eigensolver consumes.
struct BlockReduction {
    Matrix plus_asym;
    Matrix plus_sym;
    Matrix minus;
    VertexPartition partition;
};

BlockReduction block_reduce(const Hamiltonian& h, const VertexPartition& part);

enum class Block { plus, minus };

/// Turns an eigenvector of the selected reduced block into a unit eigenvector
/// of the full Hamiltonian: the plus sector lifts to [a, a, b] (symmetric),
/// the minus sector to [c, -c, 0] (antisymmetric, zero on fixed vertices).
/// `reduced` is an eigenvector of plus_asym resp. minus; for eigenvectors of
/// plus_sym apply lift_plus_sym_eigenvector instead.
/// Throws NumericError if the lifted residual ||Hx - lambda x|| exceeds
/// 1e-8 * max(1, ||H||_F).
Vec lift_eigenpair(const Hamiltonian& h, const BlockReduction& reduction, Block which,
                   const Vec& reduced, double eigenvalue);

/// Maps an eigenvector of plus_sym back through the similarity transform and
/// lifts it (plus sector).
Vec lift_plus_sym_eigenvector(const Hamiltonian& h, const BlockReduction& reduction,
                              const Vec& sym_vector, double eigenvalue);

/// One disc per vertex: center Q(v), radius deg(v). The spectrum lies in
/// the union of the discs.
std::vector<std::pair<double, double>> gershgorin_intervals(const Hamiltonian& h);

} // namespace qwalk

#endif
