#include "qwalk/hamiltonian.hpp"

#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

Hamiltonian assemble_hamiltonian(const Graph& g) {
    const int n = g.vertex_count();
    Matrix m(n, n);
    for (Vertex v = 0; v < n; ++v) m(v, v) = g.potential(v);
    for (const auto& [a, b] : g.edges()) m(a, b) = m(b, a) = 1.0;
    return Hamiltonian{std::move(m)};
}

BlockReduction block_reduce(const Hamiltonian& h, const VertexPartition& part) {
    const int k = part.k();
    const int s = part.fixed_count();
    const auto& H = h.matrix;

    // H' + A_sigma over N, coupling to S, and the fixed block.
    Matrix plus_asym(k + s, k + s);
    Matrix plus_sym(k + s, k + s);
    Matrix minus(k, k);

    const double root2 = std::sqrt(2.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            const double hprime = H(part.n[i], part.n[j]);
            const double asigma = H(part.n[i], part.sigma_n[j]);
            plus_asym(i, j) = hprime + asigma;
            plus_sym(i, j) = hprime + asigma;
            minus(i, j) = hprime - asigma;
        }
        for (int j = 0; j < s; ++j) {
            const double as = H(part.n[i], part.s[j]);
            plus_asym(i, k + j) = as;
            plus_asym(k + j, i) = 2.0 * as;
            plus_sym(i, k + j) = root2 * as;
            plus_sym(k + j, i) = root2 * as;
        }
    }
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            plus_asym(k + i, k + j) = H(part.s[i], part.s[j]);
            plus_sym(k + i, k + j) = H(part.s[i], part.s[j]);
        }

    return BlockReduction{std::move(plus_asym), std::move(plus_sym), std::move(minus), part};
}

namespace {

Vec lift_raw(const BlockReduction& red, Block which, const Vec& reduced, int n) {
    const int k = red.partition.k();
    const int s = red.partition.fixed_count();
    Vec full(n, 0.0);
    if (which == Block::plus) {
        for (int i = 0; i < k; ++i) {
            full[red.partition.n[i]] = reduced[i];
            full[red.partition.sigma_n[i]] = reduced[i];
        }
        for (int j = 0; j < s; ++j) full[red.partition.s[j]] = reduced[k + j];
    } else {
        for (int i = 0; i < k; ++i) {
            full[red.partition.n[i]] = reduced[i];
            full[red.partition.sigma_n[i]] = -reduced[i];
        }
    }
    return full;
}

} // namespace

Vec lift_eigenpair(const Hamiltonian& h, const BlockReduction& reduction, Block which,
                   const Vec& reduced, double eigenvalue) {
    Vec full = lift_raw(reduction, which, reduced, h.size());
    normalize(full);

    const Vec hx = h.matrix.multiply(full);
    double residual = 0.0;
    for (int i = 0; i < h.size(); ++i) {
        const double r = hx[i] - eigenvalue * full[i];
        residual += r * r;
    }
    residual = std::sqrt(residual);
    const double scale = std::max(1.0, h.matrix.frobenius_norm());
    if (residual > 1e-8 * scale)
        throw NumericError("lifted vector is not an eigenvector: residual " +
                           std::to_string(residual));
    return full;
}

Vec lift_plus_sym_eigenvector(const Hamiltonian& h, const BlockReduction& reduction,
                              const Vec& sym_vector, double eigenvalue) {
    // plus_sym = D^{-1} plus_asym D with D = diag(1_k, sqrt(2)·1_s), so an
    // eigenvector z of plus_sym maps to D z for plus_asym.
    const int k = reduction.partition.k();
    Vec asym = sym_vector;
    for (std::size_t i = k; i < asym.size(); ++i) asym[i] *= std::sqrt(2.0);
    return lift_eigenpair(h, reduction, Block::plus, asym, eigenvalue);
}

std::vector<std::pair<double, double>> gershgorin_intervals(const Hamiltonian& h) {
    const int n = h.size();
    std::vector<std::pair<double, double>> discs;
    discs.reserve(n);
    for (int i = 0; i < n; ++i) {
        double radius = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) radius += std::abs(h.matrix(i, j));
        discs.emplace_back(h.matrix(i, i), radius);
    }
    return discs;
}

} // namespace qwalk
