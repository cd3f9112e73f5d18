#include "qwalk/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

// Dense complex matrix as separate real/imaginary parts.
struct CMat {
    Matrix re;
    Matrix im;

    explicit CMat(std::size_t n) : re(n, n), im(n, n) {}

    static CMat ident(std::size_t n) {
        CMat m(n);
        for (std::size_t i = 0; i < n; ++i) m.re(i, i) = 1.0;
        return m;
    }

    std::size_t size() const { return re.rows(); }

    CMat multiply(const CMat& o) const {
        const std::size_t n = size();
        CMat out(n);
        out.re = re.multiply(o.re);
        const Matrix imim = im.multiply(o.im);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.re(i, j) -= imim(i, j);
        out.im = re.multiply(o.im);
        const Matrix imre = im.multiply(o.re);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.im(i, j) += imre(i, j);
        return out;
    }

    void add_inplace(const CMat& o) {
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                re(i, j) += o.re(i, j);
                im(i, j) += o.im(i, j);
            }
    }

    void scale(double f) {
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                re(i, j) *= f;
                im(i, j) *= f;
            }
    }

    double one_norm() const {
        const std::size_t n = size();
        double best = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double col = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                col += std::hypot(re(i, j), im(i, j));
            best = std::max(best, col);
        }
        return best;
    }
};

// e^{itH}: scale so the 1-norm of itH drops to 0.5, sum the Taylor series
// until terms fall under 1e-16, square back up.
CMat matexp_itH(const Hamiltonian& h, double t) {
    const std::size_t n = h.matrix.rows();
    CMat b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b.im(i, j) = t * h.matrix(i, j);

    int squarings = 0;
    double norm = b.one_norm();
    while (norm > 0.5 && squarings < 200) {
        norm /= 2.0;
        ++squarings;
    }
    b.scale(std::pow(2.0, -squarings));

    CMat result = CMat::ident(n);
    CMat term = CMat::ident(n);
    for (int k = 1; k <= 60; ++k) {
        term = term.multiply(b);
        term.scale(1.0 / k);
        result.add_inplace(term);
        if (term.one_norm() < 1e-16) break;
    }
    for (int s = 0; s < squarings; ++s) result = result.multiply(result);
    return result;
}

} // namespace

double matexp_probability(const Hamiltonian& h, Vertex u, Vertex v, double t) {
    const CMat e = matexp_itH(h, t);
    return e.re(v, u) * e.re(v, u) + e.im(v, u) * e.im(v, u);
}

OracleSearchResult exhaustive_fidelity(const Hamiltonian& h, Vertex u, Vertex v,
                                       double horizon, double step) {
    if (horizon <= 0.0) throw DomainError("horizon must be positive");
    if (step <= 0.0) throw DomainError("step must be positive");
    if (step > horizon) throw DomainError("step must not exceed the horizon");
    const long steps = static_cast<long>(std::floor(horizon / step + 1e-9));
    if (steps > 2'000'000) throw SizeError("oracle grid too fine; use the spectral search");

    // One propagator for a single step, then repeated application to the
    // starting state: state after k steps is e^{i k step H} e_u.
    const CMat prop = matexp_itH(h, step);
    const std::size_t n = prop.size();
    Vec sre(n, 0.0), sim(n, 0.0);
    sre[u] = 1.0;

    OracleSearchResult best;
    best.best_t = 0.0;
    best.best_p = (u == v) ? 1.0 : 0.0;
    for (long k = 1; k <= steps; ++k) {
        Vec nre(n, 0.0), nim(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double accr = 0.0, acci = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                accr += prop.re(i, j) * sre[j] - prop.im(i, j) * sim[j];
                acci += prop.re(i, j) * sim[j] + prop.im(i, j) * sre[j];
            }
            nre[i] = accr;
            nim[i] = acci;
        }
        sre = std::move(nre);
        sim = std::move(nim);
        const double p = sre[v] * sre[v] + sim[v] * sim[v];
        if (p > best.best_p) {
            best.best_p = p;
            best.best_t = k * step;
        }
    }
    return best;
}

std::vector<FoundInvolution> enumerate_involutions(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 12) throw SizeError("involution enumeration limited to 12 vertices");

    std::vector<FoundInvolution> found;
    std::vector<Vertex> map(n, -1);

    auto edges_preserved = [&]() {
        for (const auto& [a, b] : g.edges())
            if (!g.adjacent(map[a], map[b])) return false;
        return true;
    };

    auto search = [&](auto&& self, int v) -> void {
        if (v == n) {
            Involution inv{map};
            if (edges_preserved()) {
                bool identity = true;
                for (int i = 0; i < n; ++i)
                    if (map[i] != i) identity = false;
                found.push_back({std::move(inv), identity});
            }
            return;
        }
        if (map[v] != -1) {
            self(self, v + 1);
            return;
        }
        map[v] = v; // fixed point
        self(self, v + 1);
        map[v] = -1;
        for (int w = v + 1; w < n; ++w) {
            if (map[w] != -1) continue;
            if (g.potential(v) != g.potential(w)) continue;
            if (g.degree(v) != g.degree(w)) continue;
            map[v] = w;
            map[w] = v;
            self(self, v + 1);
            map[v] = map[w] = -1;
        }
    };
    search(search, 0);
    return found;
}

std::vector<std::int64_t> enumerate_walks_dfs(const Graph& g, Vertex source, Vertex target,
                                              std::vector<Vertex> forbidden_interior,
                                              int max_length) {
    if (max_length > 10) throw SizeError("DFS walk enumeration limited to length 10");
    if (g.vertex_count() > 8) throw SizeError("DFS walk enumeration limited to 8 vertices");

    std::vector<char> forbidden(g.vertex_count(), 0);
    for (Vertex v : forbidden_interior) forbidden[v] = 1;

    std::vector<std::int64_t> counts(max_length + 1, 0);
    if (source == target) counts[0] = 1;

    auto walk = [&](auto&& self, Vertex at, int length) -> void {
        if (length > 0 && at == target) counts[length] += 1;
        if (length == max_length) return;
        if (length > 0 && forbidden[at]) return; // would become an interior vertex
        for (Vertex w : g.neighbors(at)) self(self, w, length + 1);
    };
    walk(walk, source, 0);
    return counts;
}

} // namespace qwalk
