#ifndef QWALK_BOUNDS_HPP
#define QWALK_BOUNDS_HPP

#include <optional>
#include <string>

#include "qwalk/graph.hpp"
#include "qwalk/matrix.hpp"

namespace qwalk {

/// Distance-decay test vector on the reduced coordinates. The plus kind
/// lives on N + S with entries q^{-min(dist to well, dist to image)}; the
/// minus kind lives on N with the same magnitudes, zeroed on vertices
/// equidistant from the two wells. The well entry is always 1.
struct TestVector {
    bool plus_kind = true;
    std::vector<Vertex> support;
    Vec entries;
};

TestVector build_test_vector(const Graph& g, const Involution& inv, Vertex well,
                             bool plus_kind);

/// lambda_1 >= q + q^{-1} (1 + sum_{i>=2} (deg_{N+S}(v_i) - 1) y_i^2) / sum y_i^2
double lambda1_lower(const Graph& g, const Involution& inv, Vertex well, double q);

struct Lambda2Bound {
    double value = 0.0;  // q - (1 + sum_{i!=1} (deg_{N+sigmaN}(v_i) - 1) y_i^2) / sum y_i^2
    double simple = 0.0; // the weaker consequence q - max degree
};

Lambda2Bound lambda2_lower(const Graph& g, const Involution& inv, Vertex well, double q);

/// (v^T M v) / (v^T v). Never exceeds the top eigenvalue of a symmetric M.
double rayleigh_quotient(const Matrix& m, const Vec& v);

enum class PhiKind { first, second };

/// Lower bound on the well entry of the first or second eigenvector:
/// sqrt(1/2 - m/(2q^2)) minus sqrt(m/(q-m)) resp. sqrt((m+1)/(q-m-1)).
/// Requires q > 2m; the value may still be negative (then trivially valid).
double phi_lower(double q, double m, PhiKind kind);

/// (4L^2 - 1)^2 with L the second-eigenvector bound. Empty when L < 1/2,
/// where squaring would fabricate a bound the chain does not support.
std::optional<double> fidelity_lower(double q, double m);

struct MinPotential {
    double q_formula = 0.0;       // (m+1)(c+1)/c
    double q_sufficient_256 = 0.0; // 256 (m+1) / eps^2
    double c = 0.0;
};

/// Smallest certified potential for transfer probability 1 - epsilon.
MinPotential min_potential(double epsilon, double m);

struct GapBound {
    double gap_bound = 0.0;  // 2/(q+m)^{d-1}
    double time_bound = 0.0; // (pi/2)(q+m)^{d-1}
};

GapBound gap_lower(double q, double m, int d);

/// Upper bound 2/(1 - m/q^2) on the squared norm of the duplicated test
/// vector. Requires q > sqrt(m).
double norm_bound_D(double q, double m);

/// The exact squared norm the bound dominates: 2 sum_i y_i^2 over the plus
/// test vector (fixed vertices counted twice, like the bound's shells).
double exact_duplicated_norm(const Graph& g, const Involution& inv, Vertex well,
                             double q);

struct BoundEntry {
    double value = 0.0;    // certified bound
    double computed = 0.0; // numerical ground truth it must not exceed
    bool holds = false;
    bool applicable = false;
};

/// Full certificate for one (graph, involution, well, q) instance: every
/// lower bound next to its numerically computed counterpart.
struct BoundReport {
    double q = 0.0;
    int m = 0;
    int d = 0;
    double tstar = 0.0;
    bool gap_refined = false;      // extended-precision gap path used
    bool gap_at_equality = false;  // |gap - bound| within tolerance (d = 1)
    BoundEntry lambda1;
    BoundEntry lambda1_rayleigh;
    BoundEntry lambda2;
    BoundEntry lambda2_simple;
    BoundEntry gap;
    BoundEntry transfer_time;
    BoundEntry phi1;
    BoundEntry phi2;
    BoundEntry fidelity;
    BoundEntry fidelity_asymptotic; // 1 - 16 sqrt(m+1)/sqrt(q)
    bool all_hold = false;
};

/// Installs the double-well potential q on (well, sigma(well)), computes the
/// spectral ground truth and evaluates the entire bound chain against it.
BoundReport certify(const Graph& g, const Involution& inv, Vertex well, double q);

std::string bound_report_to_json(const BoundReport& report);

} // namespace qwalk

#endif
