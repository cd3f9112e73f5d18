#include "qwalk/walks.hpp"

#include <algorithm>
#include <cmath>

#include <mpfr.h>

#include "qwalk/errors.hpp"
#include "qwalk/hamiltonian.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

WalkSum count_walks_avoiding(const Graph& g, Vertex source, Vertex target,
                             std::vector<Vertex> forbidden_interior, int max_length) {
    if (max_length < 0) throw DomainError("walk length bound must be nonnegative");
    const int n = g.vertex_count();

    WalkSum ws;
    ws.source = source;
    ws.target = target;
    ws.forbidden_interior = forbidden_interior;
    ws.max_length = max_length;
    ws.max_degree = max_degree(g);
    ws.counts.assign(max_length + 1, 0.0);
    ws.counts[0] = (source == target) ? 1.0 : 0.0;

    std::vector<char> forbidden(n, 0);
    for (Vertex v : forbidden_interior) forbidden[v] = 1;

    // Masked adjacency powers: the layer entering step k >= 2 consists of
    // interior positions, so forbidden vertices are zeroed before expanding.
    Vec layer(n, 0.0);
    layer[source] = 1.0;
    constexpr double exact_limit = 9007199254740992.0; // 2^53
    for (int k = 1; k <= max_length; ++k) {
        if (k > 1)
            for (Vertex v = 0; v < n; ++v)
                if (forbidden[v]) layer[v] = 0.0;
        Vec next(n, 0.0);
        for (Vertex v = 0; v < n; ++v) {
            const double weight = layer[v];
            if (weight == 0.0) continue;
            for (Vertex w : g.neighbors(v)) next[w] += weight;
        }
        layer = std::move(next);
        ws.counts[k] = layer[target];
        for (double c : layer)
            if (c > exact_limit) ws.counts_exact = false;
    }
    return ws;
}

ZValue z_truncated(const WalkSum& walks, double lambda) {
    const double m = walks.max_degree;
    if (std::abs(lambda) <= m)
        throw DomainError("|lambda| must exceed the maximum degree for the walk series");

    // Horner evaluation of sum counts[k] lambda^{-k}, k = 1..L.
    double acc = 0.0;
    for (int k = walks.max_length; k >= 1; --k) acc = (acc + walks.counts[k]) / lambda;

    const double r = m / std::abs(lambda);
    ZValue z;
    z.value = acc;
    z.truncation_error = std::pow(r, walks.max_length + 1) / (1.0 - r);
    return z;
}

int default_truncation_length(int max_degree, double lambda) {
    const double r = max_degree / std::abs(lambda);
    if (r >= 1.0) throw DomainError("series diverges at this lambda");
    int length = 1;
    while (length < 200 && std::pow(r, length + 1) / (1.0 - r) >= 1e-10) ++length;
    return length;
}

namespace {

void require_double_well(const Graph& g, const Involution& inv, Vertex well) {
    const Vertex image = inv(well);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (v == well || v == image) continue;
        if (g.potential(v) != 0.0)
            throw DomainError("well-system identities require zero potential away from the wells");
    }
}

// Thin RAII wrapper over an mpfr_t; 384-bit mantissa is far more than the
// deepest corpus case needs.
constexpr mpfr_prec_t kPrecision = 384;

class Real {
  public:
    Real() { mpfr_init2(value_, kPrecision); mpfr_set_zero(value_, 1); }
    explicit Real(double d) { mpfr_init2(value_, kPrecision); mpfr_set_d(value_, d, MPFR_RNDN); }
    Real(const Real& other) { mpfr_init2(value_, kPrecision); mpfr_set(value_, other.value_, MPFR_RNDN); }
    Real& operator=(const Real& other) {
        if (this != &other) mpfr_set(value_, other.value_, MPFR_RNDN);
        return *this;
    }
    ~Real() { mpfr_clear(value_); }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

    friend Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN); return r; }

    Real pow_int(long e) const { Real r; mpfr_pow_si(r.value_, value_, e, MPFR_RNDN); return r; }
    Real abs() const { Real r; mpfr_abs(r.value_, value_, MPFR_RNDN); return r; }
    bool less_than(const Real& other) const { return mpfr_cmp(value_, other.value_) < 0; }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }

  private:
    mpfr_t value_;
};

// sum_{k=1..L} counts[k] x^{-k} by Horner.
Real z_series(const std::vector<double>& counts, const Real& x) {
    Real acc;
    for (int k = static_cast<int>(counts.size()) - 1; k >= 1; --k)
        acc = (acc + Real(counts[k])) / x;
    return acc;
}

// d/dx [x * Z(x)] = sum counts[k] (1-k) x^{-k}.
Real xz_derivative(const std::vector<double>& counts, const Real& x) {
    Real acc;
    for (int k = static_cast<int>(counts.size()) - 1; k >= 1; --k)
        acc = (acc + Real(counts[k] * (1.0 - k))) / x;
    return acc;
}

// psi_sector(x) = x (Z_vv(x) + sign Z_vv'(x)) - (x - q); the top eigenvalue
// of the sector is its root above the degree bound.
Real sector_equation(const std::vector<double>& cvv, const std::vector<double>& cvx,
                     double sign, const Real& x, const Real& q) {
    const Real z = z_series(cvv, x) + Real(sign) * z_series(cvx, x);
    return x * z - x + q;
}

Real sector_equation_derivative(const std::vector<double>& cvv,
                                const std::vector<double>& cvx, double sign,
                                const Real& x) {
    return xz_derivative(cvv, x) + Real(sign) * xz_derivative(cvx, x) - Real(1.0);
}

Real newton_root(const std::vector<double>& cvv, const std::vector<double>& cvx,
                 double sign, double seed, double q) {
    Real x(seed);
    const Real qr(q);
    const Real rel_stop = Real(1e-90);
    for (int iter = 0; iter < 200; ++iter) {
        const Real f = sector_equation(cvv, cvx, sign, x, qr);
        const Real fp = sector_equation_derivative(cvv, cvx, sign, x);
        if (fp.is_zero()) throw NumericError("degenerate derivative in gap refinement");
        const Real dx = f / fp;
        x = x - dx;
        if (dx.abs().less_than(rel_stop * x.abs())) return x;
    }
    throw NumericError("well-system Newton iteration did not converge");
}

double truncation_tail(int max_deg, double lambda, int length) {
    const double r = max_deg / lambda;
    // |psi - psi_L| <= lambda * 2 * sum_{k>L} r^k; root shift adds a 1/|psi'|
    // factor, bounded by 2 in the convergent regime.
    return 4.0 * lambda * std::pow(r, length + 1) / (1.0 - r);
}

} // namespace

WellSystemResiduals well_system_residual(const Graph& g, const Involution& inv,
                                         Vertex well, double lambda, double q,
                                         int max_length) {
    require_double_well(g, inv, well);
    const Vertex image = inv(well);
    if (image == well) throw DomainError("well must not be fixed by the involution");

    const WalkSum closed = count_walks_avoiding(g, well, well, {well, image}, max_length);
    const WalkSum across = count_walks_avoiding(g, well, image, {well, image}, max_length);
    const double zvv = z_truncated(closed, lambda).value;
    const double zvx = z_truncated(across, lambda).value;

    WellSystemResiduals r;
    r.sym = std::abs(lambda * (zvv + zvx) - (lambda - q));
    r.antisym = std::abs(lambda * (zvv - zvx) - (lambda - q));
    return r;
}

GapRefinement refine_spectral_gap(const Graph& g, const Involution& inv, Vertex well,
                                  double q, double lambda1_seed, double lambda2_seed) {
    require_double_well(g, inv, well);
    const Vertex image = inv(well);
    if (image == well) throw DomainError("well must not be fixed by the involution");
    const int m = max_degree(g);
    if (lambda2_seed <= m || lambda1_seed <= m)
        throw DomainError("sector eigenvalues must exceed the maximum degree");

    int length = std::max(16, default_truncation_length(m, lambda2_seed));
    GapRefinement result;
    for (;;) {
        const WalkSum closed = count_walks_avoiding(g, well, well, {well, image}, length);
        const WalkSum across = count_walks_avoiding(g, well, image, {well, image}, length);
        const Real l1 = newton_root(closed.counts, across.counts, +1.0, lambda1_seed, q);
        const Real l2 = newton_root(closed.counts, across.counts, -1.0, lambda2_seed, q);

        result.lambda1 = l1.to_double();
        result.lambda2 = l2.to_double();
        result.gap = (l1 - l2).to_double();
        result.gap_error_bound = 2.0 * truncation_tail(m, result.lambda2, length);
        result.truncation_length = length;

        if (result.gap_error_bound < 1e-6 * std::abs(result.gap) || length >= 400)
            return result;
        length += 32;
    }
}

GapCertificate gap_certificate_check(const Graph& g, const Involution& inv, Vertex well,
                                     double q, int max_length) {
    const Vertex image = inv(well);
    const int m = max_degree(g);

    // Sector eigenvalue seeds from the double-precision block decomposition.
    const Graph gq = g.with_double_well(well, image, q);
    const Hamiltonian h = assemble_hamiltonian(gq);
    const auto part = partition_vertices(gq, inv, well);
    const auto blocks = block_reduce(h, part);
    const double seed1 = eig_symmetric(blocks.plus_sym).eigenvalues.front();
    const double seed2 = eig_symmetric(blocks.minus).eigenvalues.front();

    const GapRefinement refined = refine_spectral_gap(gq, inv, well, q, seed1, seed2);
    int length = max_length > 0 ? max_length
                                : std::max(refined.truncation_length,
                                           default_truncation_length(m, refined.lambda2));

    const WalkSum closed = count_walks_avoiding(gq, well, well, {well, image}, length);
    const WalkSum across = count_walks_avoiding(gq, well, image, {well, image}, length);

    const int d = bfs_distances(gq, well)[image];

    // gap = sum_vv counts[k] (l1^{1-k} - l2^{1-k}) + sum_vv' counts[k] (l1^{1-k} + l2^{1-k})
    const Real l1 = newton_root(closed.counts, across.counts, +1.0, seed1, q);
    const Real l2 = newton_root(closed.counts, across.counts, -1.0, seed2, q);
    Real rhs;
    for (int k = 1; k <= length; ++k) {
        const Real p1 = l1.pow_int(1 - k);
        const Real p2 = l2.pow_int(1 - k);
        rhs = rhs + Real(closed.counts[k]) * (p1 - p2);
        rhs = rhs + Real(across.counts[k]) * (p1 + p2);
    }
    const Real gap = l1 - l2;

    GapCertificate cert;
    cert.lambda1 = l1.to_double();
    cert.lambda2 = l2.to_double();
    cert.gap = gap.to_double();
    cert.distance = d;
    cert.walk_identity_rhs = rhs.to_double();
    cert.identity_residual = (gap - rhs).abs().to_double();
    cert.identity_tolerance = truncation_tail(m, cert.lambda2, length);
    cert.identity_holds = cert.identity_residual <= cert.identity_tolerance;

    cert.shortest_term = std::pow(cert.lambda1, 1 - d) + std::pow(cert.lambda2, 1 - d);
    cert.shortest_term_below_gap = cert.shortest_term <= cert.gap;

    cert.final_bound = 2.0 * std::pow(q + m, 1 - d);
    cert.final_holds = (d >= 2) ? cert.gap > cert.final_bound
                                : cert.gap >= cert.final_bound - 1e-9;
    return cert;
}

} // namespace qwalk
