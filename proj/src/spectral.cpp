#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qwalk/errors.hpp"

namespace qwalk {

Cplx cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

namespace {

double max_offdiagonal(const Matrix& a) {
    double m = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

void sign_normalize_columns(Matrix& v) {
    const std::size_t n = v.rows();
    for (std::size_t j = 0; j < v.cols(); ++j) {
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(v(i, j)) > std::abs(v(imax, j))) imax = i;
        if (v(imax, j) < 0.0)
            for (std::size_t i = 0; i < n; ++i) v(i, j) = -v(i, j);
    }
}

} // namespace

Spectrum eig_symmetric(const Matrix& matrix) {
    const std::size_t n = matrix.rows();
    if (n == 0 || matrix.cols() != n) throw DomainError("eig_symmetric needs a square matrix");
    if (matrix.symmetry_defect() > 1e-12 * std::max(1.0, matrix.max_abs()))
        throw DomainError("matrix is not symmetric");

    Matrix a = matrix;
    Matrix v = Matrix::identity(n);

    const double fro = std::max(a.frobenius_norm(), 1e-300);
    const double converge_tol = 1e-12 * fro;
    const double skip_tol = converge_tol / double(n * n + 1);

    constexpr int max_sweeps = 100;
    bool converged = (n == 1) || max_offdiagonal(a) < converge_tol;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= skip_tol) continue;

                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double h = t * apq;

                a(p, p) -= h;
                a(q, q) += h;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p);
                        const double arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        converged = max_offdiagonal(a) < converge_tol;
    }
    if (!converged)
        throw NumericError("Jacobi iteration did not converge; max off-diagonal " +
                           std::to_string(max_offdiagonal(a)));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    Spectrum spec;
    spec.eigenvalues.resize(n);
    spec.eigenvectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        spec.eigenvalues[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) spec.eigenvectors(i, j) = v(i, order[j]);
    }
    sign_normalize_columns(spec.eigenvectors);
    return spec;
}

Spectrum tagged_spectrum(const Hamiltonian& h, const BlockReduction& reduction) {
    const int n = h.size();
    const Spectrum plus = eig_symmetric(reduction.plus_sym);
    const Spectrum minus_spec =
        reduction.minus.rows() > 0 ? eig_symmetric(reduction.minus) : Spectrum{};

    struct Entry {
        double value;
        Block tag;
        Vec vector;
    };
    std::vector<Entry> entries;
    entries.reserve(n);
    for (int j = 0; j < plus.size(); ++j)
        entries.push_back({plus.eigenvalues[j], Block::plus,
                           lift_plus_sym_eigenvector(h, reduction, plus.eigenvector(j),
                                                     plus.eigenvalues[j])});
    for (int j = 0; j < minus_spec.size(); ++j)
        entries.push_back({minus_spec.eigenvalues[j], Block::minus,
                           lift_eigenpair(h, reduction, Block::minus,
                                          minus_spec.eigenvector(j),
                                          minus_spec.eigenvalues[j])});

    // Descending by value; the symmetric sector wins exact ties so the
    // Perron-Frobenius top vector always lands first.
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        if (x.value != y.value) return x.value > y.value;
        return x.tag == Block::plus && y.tag == Block::minus;
    });

    Spectrum spec;
    spec.eigenvalues.resize(n);
    spec.eigenvectors = Matrix(n, n);
    spec.tags.resize(n);
    for (int j = 0; j < n; ++j) {
        spec.eigenvalues[j] = entries[j].value;
        spec.tags[j] = entries[j].tag;
        spec.eigenvectors.set_column(j, entries[j].vector);
    }
    sign_normalize_columns(spec.eigenvectors);
    return spec;
}

TransferResult transfer_probability(const Spectrum& spec, Vertex u, Vertex v, double t) {
    if (t < 0.0) throw DomainError("time must be nonnegative");
    // Phases are accumulated relative to lambda_1; the common rotation does
    // not change p and keeps the leading phase differences well conditioned.
    const double ref = spec.eigenvalues[0];
    Cplx shifted{0.0, 0.0};
    for (int j = 0; j < spec.size(); ++j) {
        const double w = spec.eigenvectors(u, j) * spec.eigenvectors(v, j);
        shifted = shifted + Cplx{w, 0.0} * cis(t * (spec.eigenvalues[j] - ref));
    }
    TransferResult result;
    result.t = t;
    result.amplitude = cis(t * ref) * shifted;
    result.p = abs2(shifted);
    return result;
}

std::vector<Cplx> evolve_state(const Spectrum& spec, Vertex u, double t) {
    std::vector<Cplx> state(spec.size());
    for (int j = 0; j < spec.size(); ++j) {
        const Cplx phase = cis(t * spec.eigenvalues[j]);
        const double cu = spec.eigenvectors(u, j);
        for (int v = 0; v < spec.size(); ++v) {
            state[v] = state[v] + Cplx{cu * spec.eigenvectors(v, j), 0.0} * phase;
        }
    }
    return state;
}

std::pair<Cplx, Cplx> amplitude_split(const Spectrum& spec, Vertex u, double t) {
    if (!spec.tagged()) throw DomainError("amplitude_split needs a tagged spectrum");
    const double ref = spec.eigenvalues[0];
    Cplx s_plus{0.0, 0.0};
    Cplx s_minus{0.0, 0.0};
    for (int j = 0; j < spec.size(); ++j) {
        const double w = spec.eigenvectors(u, j) * spec.eigenvectors(u, j);
        const Cplx term = Cplx{w, 0.0} * cis(t * (spec.eigenvalues[j] - ref));
        if (spec.tags[j] == Block::plus)
            s_plus = s_plus + term;
        else
            s_minus = s_minus + term;
    }
    const Cplx rot = cis(t * ref);
    return {rot * s_plus, rot * s_minus};
}

double optimal_time(const Spectrum& spec) {
    if (spec.size() < 2) throw DomainError("need at least two eigenvalues");
    const double gap = spec.eigenvalues[0] - spec.eigenvalues[1];
    if (gap <= 1e-12)
        throw NumericError("leading eigenvalue gap is degenerate: " + std::to_string(gap));
    return M_PI / gap;
}

SearchResult fidelity_search(const Spectrum& spec, Vertex u, Vertex v, double horizon,
                             double step) {
    if (horizon <= 0.0) throw DomainError("horizon must be positive");
    if (step <= 0.0) throw DomainError("step must be positive");
    if (step > horizon) throw DomainError("step must not exceed the horizon");

    const int n = spec.size();
    std::vector<double> w(n), dl(n);
    const double ref = spec.eigenvalues[0];
    for (int j = 0; j < n; ++j) {
        w[j] = spec.eigenvectors(u, j) * spec.eigenvectors(v, j);
        dl[j] = spec.eigenvalues[j] - ref;
    }

    const long steps = static_cast<long>(std::floor(horizon / step + 1e-9));
    SearchResult best;
    best.best_t = 0.0;
    best.best_p = -1.0;
    for (long k = 0; k <= steps; ++k) {
        const double t = k * step;
        double re = 0.0, im = 0.0;
        for (int j = 0; j < n; ++j) {
            const double phase = t * dl[j];
            re += w[j] * std::cos(phase);
            im += w[j] * std::sin(phase);
        }
        const double p = re * re + im * im;
        if (p > best.best_p) {
            best.best_p = p;
            best.best_t = t;
        }
    }
    return best;
}

double default_search_step(const Spectrum& spec) {
    const double spread = spec.eigenvalues.front() - spec.eigenvalues.back();
    if (spread <= 0.0) throw NumericError("flat spectrum has no natural time scale");
    return 0.05 / spread;
}

double default_search_horizon(const Spectrum& spec) { return 2.0 * optimal_time(spec); }

double p_at_optimal_time(const Spectrum& spec, Vertex u, Vertex v, double gap) {
    if (gap <= 0.0) throw DomainError("gap must be positive");
    const double tstar = M_PI / gap;
    const double ref = spec.eigenvalues[0];
    Cplx amp{0.0, 0.0};
    for (int j = 0; j < spec.size(); ++j) {
        const double w = spec.eigenvectors(u, j) * spec.eigenvectors(v, j);
        // By definition of t*, the second eigenvalue sits exactly pi behind
        // the first; computing that phase from the rounded eigenvalue
        // difference would destroy it whenever the gap is below rounding.
        const double phase = (j == 0) ? 0.0 : (j == 1 ? -M_PI : tstar * (spec.eigenvalues[j] - ref));
        amp = amp + Cplx{w, 0.0} * cis(phase);
    }
    return abs2(amp);
}

} // namespace qwalk
