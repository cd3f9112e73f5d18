#ifndef QWALK_WALKS_HPP
#define QWALK_WALKS_HPP

#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

/// counts[k] = number of length-k walks from source to target whose interior
/// vertices (every position except the first and last) avoid the forbidden
/// set. counts_exact drops to false once a count passes 2^53 and integer
/// precision is lost.
struct WalkSum {
    Vertex source = 0;
    Vertex target = 0;
    std::vector<Vertex> forbidden_interior;
    int max_length = 0;
    int max_degree = 0;
    std::vector<double> counts;
    bool counts_exact = true;
};

WalkSum count_walks_avoiding(const Graph& g, Vertex source, Vertex target,
                             std::vector<Vertex> forbidden_interior, int max_length);

struct ZValue {
    double value = 0.0;
    double truncation_error = 0.0; // (m/|lambda|)^{L+1} / (1 - m/|lambda|)
};

/// Truncated walk generating function sum_{k=1..L} counts[k] lambda^{-k}.
/// Throws DomainError when |lambda| <= max degree (the series may diverge).
ZValue z_truncated(const WalkSum& walks, double lambda);

/// Smallest L with (m/lambda)^{L+1}/(1 - m/lambda) < 1e-10, capped at 200.
int default_truncation_length(int max_degree, double lambda);

struct WellSystemResiduals {
    double sym = 0.0;     // |lambda (Z_vv + Z_vv') - (lambda - q)|
    double antisym = 0.0; // |lambda (Z_vv - Z_vv') - (lambda - q)|
};

/// Residuals of the reduced 2x2 well system at a trial eigenvalue. Both
/// vanish (up to truncation) exactly when lambda is the top eigenvalue of
/// the corresponding sector. Assumes the double-well potential: q on the
/// pair (well, sigma(well)), zero elsewhere.
WellSystemResiduals well_system_residual(const Graph& g, const Involution& inv,
                                         Vertex well, double lambda, double q,
                                         int max_length);

/// Top eigenvalues of the two sectors recomputed as roots of the well-system
/// equations in extended precision. The difference stays fully resolved even
/// when it is many orders of magnitude below double rounding at the
/// eigenvalue scale.
struct GapRefinement {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double gap = 0.0;
    double gap_error_bound = 0.0; // truncation contribution, absolute
    int truncation_length = 0;
};

GapRefinement refine_spectral_gap(const Graph& g, const Involution& inv, Vertex well,
                                  double q, double lambda1_seed, double lambda2_seed);

/// Numerical certificate for the spectral-gap lower bound: checks the exact
/// walk-sum identity for lambda1 - lambda2 and the closed form
/// 2/(q+m)^{d-1}. The single-shortest-walk term is reported for reference
/// but not asserted (it can exceed the gap).
struct GapCertificate {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double gap = 0.0;
    int distance = 0; // d(well, sigma(well))
    double walk_identity_rhs = 0.0;
    double identity_residual = 0.0;
    double identity_tolerance = 0.0;
    bool identity_holds = false;
    double shortest_term = 0.0; // lambda1^{1-d} + lambda2^{1-d}
    bool shortest_term_below_gap = false;
    double final_bound = 0.0; // 2/(q+m)^{d-1}
    bool final_holds = false;
};

GapCertificate gap_certificate_check(const Graph& g, const Involution& inv, Vertex well,
                                     double q, int max_length = 0);

} // namespace qwalk

#endif
