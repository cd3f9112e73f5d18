#include "qwalk/bounds.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qwalk/errors.hpp"
#include "qwalk/hamiltonian.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/walks.hpp"

namespace qwalk {

TestVector build_test_vector(const Graph& g, const Involution& inv, Vertex well,
                             bool plus_kind) {
    const auto part = partition_vertices(g, inv, well);
    const auto dw = bfs_distances(g, well);
    const auto di = bfs_distances(g, inv(well));
    const double q = g.potential(well);
    if (q <= 0.0) throw DomainError("test vectors need a positive well potential");

    TestVector tv;
    tv.plus_kind = plus_kind;
    if (plus_kind) {
        tv.support = part.n;
        tv.support.insert(tv.support.end(), part.s.begin(), part.s.end());
        for (Vertex v : tv.support)
            tv.entries.push_back(std::pow(q, -std::min(dw[v], di[v])));
    } else {
        tv.support = part.n;
        for (Vertex v : tv.support)
            tv.entries.push_back(dw[v] < di[v] ? std::pow(q, -dw[v]) : 0.0);
    }
    return tv;
}

double lambda1_lower(const Graph& g, const Involution& inv, Vertex well, double q) {
    if (q <= 0.0) throw DomainError("q must be positive");
    const Graph gq = g.with_double_well(well, inv(well), q);
    const TestVector tv = build_test_vector(gq, inv, well, true);

    double numerator = 1.0;
    double denominator = 0.0;
    for (std::size_t i = 0; i < tv.support.size(); ++i) {
        const double y2 = tv.entries[i] * tv.entries[i];
        denominator += y2;
        if (i > 0)
            numerator += (induced_degree(gq, tv.support[i], tv.support) - 1) * y2;
    }
    return q + numerator / (q * denominator);
}

Lambda2Bound lambda2_lower(const Graph& g, const Involution& inv, Vertex well, double q) {
    if (q <= 0.0) throw DomainError("q must be positive");
    const Graph gq = g.with_double_well(well, inv(well), q);
    const TestVector tv = build_test_vector(gq, inv, well, false);
    const auto part = partition_vertices(gq, inv, well);

    std::vector<Vertex> pair_set = part.n;
    pair_set.insert(pair_set.end(), part.sigma_n.begin(), part.sigma_n.end());

    double numerator = 1.0;
    double denominator = 0.0;
    for (std::size_t i = 0; i < tv.support.size(); ++i) {
        const double y2 = tv.entries[i] * tv.entries[i];
        denominator += y2;
        if (i > 0)
            numerator += (induced_degree(gq, tv.support[i], pair_set) - 1) * y2;
    }

    Lambda2Bound b;
    b.value = q - numerator / denominator;
    b.simple = q - max_degree(gq);
    return b;
}

double rayleigh_quotient(const Matrix& m, const Vec& v) {
    const double denom = dot(v, v);
    if (denom == 0.0) throw DomainError("Rayleigh quotient of the zero vector");
    return dot(v, m.multiply(v)) / denom;
}

double phi_lower(double q, double m, PhiKind kind) {
    if (q <= 2.0 * m) throw DomainError("phi bounds require q > 2m");
    const double head = std::sqrt(0.5 - m / (2.0 * q * q));
    if (kind == PhiKind::first) return head - std::sqrt(m / (q - m));
    return head - std::sqrt((m + 1.0) / (q - m - 1.0));
}

std::optional<double> fidelity_lower(double q, double m) {
    if (q <= 2.0 * m) throw DomainError("fidelity bound requires q > 2m");
    const double L = phi_lower(q, m, PhiKind::second);
    if (L < 0.5) return std::nullopt; // the squared chain is only valid from 1/2 up
    const double x = 4.0 * L * L - 1.0;
    return x * x;
}

MinPotential min_potential(double epsilon, double m) {
    if (epsilon <= 0.0 || epsilon >= 1.0) throw DomainError("epsilon must lie in (0, 1)");
    MinPotential result;
    const double inner = 0.5 - (1.0 + std::sqrt(1.0 - epsilon)) / 4.0;
    result.c = 0.5 * inner * inner;
    result.q_formula = (m + 1.0) * (result.c + 1.0) / result.c;
    result.q_sufficient_256 = 256.0 * (m + 1.0) / (epsilon * epsilon);
    return result;
}

GapBound gap_lower(double q, double m, int d) {
    if (d < 1) throw DomainError("well distance must be at least 1");
    GapBound b;
    b.gap_bound = 2.0 * std::pow(q + m, 1.0 - d);
    b.time_bound = (M_PI / 2.0) * std::pow(q + m, d - 1.0);
    return b;
}

double norm_bound_D(double q, double m) {
    if (q <= std::sqrt(m)) throw DomainError("norm bound diverges for q <= sqrt(m)");
    return 2.0 / (1.0 - m / (q * q));
}

double exact_duplicated_norm(const Graph& g, const Involution& inv, Vertex well,
                             double q) {
    const Graph gq = g.with_double_well(well, inv(well), q);
    const TestVector tv = build_test_vector(gq, inv, well, true);
    double sum = 0.0;
    for (double y : tv.entries) sum += y * y;
    return 2.0 * sum;
}

namespace {

constexpr double kTol = 1e-9;

BoundEntry make_entry(double value, double computed, bool applicable,
                      bool lower_is_value = true) {
    BoundEntry e;
    e.value = value;
    e.computed = computed;
    e.applicable = applicable;
    e.holds = applicable && (lower_is_value ? value <= computed + kTol
                                            : computed <= value + kTol);
    return e;
}

} // namespace

BoundReport certify(const Graph& g, const Involution& inv, Vertex well, double q) {
    if (q <= 0.0) throw DomainError("q must be positive");
    const auto verdict = validate_involution(g, inv);
    if (!verdict.ok) throw ValidationError("certify requires a valid involution");
    if (inv.fixes(well)) throw DomainError("well must not be fixed by the involution");

    const Vertex image = inv(well);
    const Graph gq = g.with_double_well(well, image, q);
    const int m = max_degree(gq);
    const int d = bfs_distances(gq, well)[image];

    const Hamiltonian h = assemble_hamiltonian(gq);
    const auto part = partition_vertices(gq, inv, well);
    const auto blocks = block_reduce(h, part);
    const Spectrum spec = tagged_spectrum(h, blocks);

    const double lam1 = spec.eigenvalues[0];
    const double lam2 = spec.eigenvalues[1];
    const double phi1_abs = std::abs(spec.eigenvectors(well, 0));
    const double phi2_abs = std::abs(spec.eigenvectors(well, 1));

    // Direct eigenvalue subtraction loses the gap once it falls below the
    // rounding floor at the eigenvalue scale; switch to the walk-equation
    // refinement there.
    double gap = lam1 - lam2;
    bool refined = false;
    const double resolvable = 1e-8 * std::max(1.0, std::abs(lam1));
    if (gap < resolvable && spec.tags[1] == Block::minus && lam2 > m) {
        const auto r = refine_spectral_gap(gq, inv, well, q, lam1, lam2);
        gap = r.gap;
        refined = true;
    }
    const double tstar = M_PI / gap;
    const double p_tstar = p_at_optimal_time(spec, well, image, gap);

    BoundReport report;
    report.q = q;
    report.m = m;
    report.d = d;
    report.tstar = tstar;
    report.gap_refined = refined;

    report.lambda1 = make_entry(lambda1_lower(g, inv, well, q), lam1, true);

    {
        // Rayleigh quotient of the test vector mapped onto the symmetric
        // block coordinates (sqrt(2) on the fixed-vertex entries).
        const TestVector tv = build_test_vector(gq, inv, well, true);
        Vec mapped = tv.entries;
        for (std::size_t i = part.n.size(); i < mapped.size(); ++i)
            mapped[i] *= std::sqrt(2.0);
        report.lambda1_rayleigh =
            make_entry(rayleigh_quotient(blocks.plus_sym, mapped), lam1, true);
    }

    const Lambda2Bound l2b = lambda2_lower(g, inv, well, q);
    report.lambda2 = make_entry(l2b.value, lam2, true);
    report.lambda2_simple = make_entry(l2b.simple, lam2, true);

    const GapBound gb = gap_lower(q, m, d);
    report.gap = make_entry(gb.gap_bound, gap, true);
    // strict inequality for d >= 2; tolerated equality when the wells are adjacent
    report.gap.holds = (d >= 2) ? gap > gb.gap_bound : gap >= gb.gap_bound - kTol;
    report.gap_at_equality = std::abs(gap - gb.gap_bound) <= kTol;

    report.transfer_time = make_entry(gb.time_bound, tstar, true, false);
    report.transfer_time.holds =
        (d >= 2) ? tstar < gb.time_bound : tstar <= gb.time_bound * (1.0 + kTol);

    const bool phi_applicable = q > 2.0 * m;
    if (phi_applicable) {
        report.phi1 = make_entry(phi_lower(q, m, PhiKind::first), phi1_abs, true);
        report.phi2 = make_entry(phi_lower(q, m, PhiKind::second), phi2_abs, true);
        const auto fid = fidelity_lower(q, m);
        if (fid)
            report.fidelity = make_entry(*fid, p_tstar, true);
        else
            report.fidelity = make_entry(0.0, p_tstar, false);
    } else {
        report.phi1.computed = phi1_abs;
        report.phi2.computed = phi2_abs;
        report.fidelity.computed = p_tstar;
    }

    if (q >= m) {
        const double asym = 1.0 - 16.0 * std::sqrt(m + 1.0) / std::sqrt(q);
        report.fidelity_asymptotic = make_entry(asym, p_tstar, true);
    } else {
        report.fidelity_asymptotic.computed = p_tstar;
    }

    report.all_hold = true;
    for (const BoundEntry* e :
         {&report.lambda1, &report.lambda1_rayleigh, &report.lambda2,
          &report.lambda2_simple, &report.gap, &report.transfer_time, &report.phi1,
          &report.phi2, &report.fidelity, &report.fidelity_asymptotic}) {
        if (e->applicable && !e->holds) report.all_hold = false;
    }
    return report;
}

std::string bound_report_to_json(const BoundReport& report) {
    using nlohmann::json;
    auto entry = [](const BoundEntry& e) {
        return json{{"value", e.value},
                    {"computed", e.computed},
                    {"holds", e.holds},
                    {"applicable", e.applicable}};
    };
    json j{{"q", report.q},
           {"m", report.m},
           {"d", report.d},
           {"tstar", report.tstar},
           {"gap_refined", report.gap_refined},
           {"gap_at_equality", report.gap_at_equality},
           {"lambda1", entry(report.lambda1)},
           {"lambda1_rayleigh", entry(report.lambda1_rayleigh)},
           {"lambda2", entry(report.lambda2)},
           {"lambda2_simple", entry(report.lambda2_simple)},
           {"gap", entry(report.gap)},
           {"transfer_time", entry(report.transfer_time)},
           {"phi1", entry(report.phi1)},
           {"phi2", entry(report.phi2)},
           {"fidelity", entry(report.fidelity)},
           {"fidelity_asymptotic", entry(report.fidelity_asymptotic)},
           {"all_hold", report.all_hold}};
    return j.dump(2);
}

} // namespace qwalk
