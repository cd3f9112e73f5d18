#ifndef QWALK_SPECTRAL_HPP
#define QWALK_SPECTRAL_HPP

#include <optional>
#include <utility>
#include <vector>

#include "qwalk/hamiltonian.hpp"
#include "qwalk/matrix.hpp"

namespace qwalk {

/// Complex value as an explicit (re, im) pair.
struct Cplx {
    double re = 0.0;
    double im = 0.0;
};

inline Cplx operator+(Cplx a, Cplx b) { return {a.re + b.re, a.im + b.im}; }
inline Cplx operator-(Cplx a, Cplx b) { return {a.re - b.re, a.im - b.im}; }
inline Cplx operator*(Cplx a, Cplx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline double abs2(Cplx a) { return a.re * a.re + a.im * a.im; }
/// e^{i phase}
Cplx cis(double phase);

/// Eigendecomposition of a real symmetric matrix: eigenvalues in descending
/// order, orthonormal eigenvectors as matching columns. When built through a
/// block reduction each eigenvalue carries the sector it came from.
struct Spectrum {
    Vec eigenvalues;
    Matrix eigenvectors;
    std::vector<Block> tags; // empty when not built from a reduction

    int size() const { return static_cast<int>(eigenvalues.size()); }
    bool tagged() const { return !tags.empty(); }
    Vec eigenvector(int j) const { return eigenvectors.column(j); }
};

struct TransferResult {
    double t = 0.0;
    double p = 0.0;
    Cplx amplitude;
};

/// Cyclic Jacobi rotations; converges when the largest off-diagonal entry
/// drops below 1e-12 times the Frobenius norm, capped at 100 sweeps.
Spectrum eig_symmetric(const Matrix& matrix);

/// Decomposes H through its involution blocks: both sectors are solved
/// separately, lifted to full eigenvectors, merged in descending order and
/// tagged with their sector of origin.
Spectrum tagged_spectrum(const Hamiltonian& h, const BlockReduction& reduction);

/// amplitude = sum_j phi_j(u) phi_j(v) e^{i t lambda_j}; p = |amplitude|^2.
TransferResult transfer_probability(const Spectrum& spec, Vertex u, Vertex v, double t);

/// Walk state e^{itH} e_u expressed in the vertex basis.
std::vector<Cplx> evolve_state(const Spectrum& spec, Vertex u, double t);

/// Splits the return amplitude of a well vertex into the symmetric and
/// antisymmetric sector sums; the transfer amplitude to the image vertex is
/// their difference. Requires a tagged spectrum.
std::pair<Cplx, Cplx> amplitude_split(const Spectrum& spec, Vertex u, double t);

/// pi / (lambda_1 - lambda_2). Throws NumericError when the gap is below 1e-12.
double optimal_time(const Spectrum& spec);

struct SearchResult {
    double best_t = 0.0;
    double best_p = 0.0;
};

/// Maximizes p over the grid {0, step, 2 step, ...} up to the horizon.
/// The result is a lower bound on the true fidelity sup_t p(t).
SearchResult fidelity_search(const Spectrum& spec, Vertex u, Vertex v, double horizon,
                             double step);

/// Grid resolution keeping the fastest phase advance under 0.05 rad per step.
double default_search_step(const Spectrum& spec);
/// Two beat periods of the leading pair.
double default_search_horizon(const Spectrum& spec);

/// Transfer probability at t* = pi/gap with the leading-pair phase difference
/// pinned to exactly pi. Equivalent to transfer_probability at moderate t*,
/// but stays well-conditioned when the gap (supplied by the caller, possibly
/// from the high-precision walk refinement) is far below the eigenvalue
/// rounding noise.
double p_at_optimal_time(const Spectrum& spec, Vertex u, Vertex v, double gap);

} // namespace qwalk

#endif
