#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "xsc/matrix.hpp"
#include "xsc/xstate.hpp"

namespace xsc {

/// Auxiliary quantities entering the closed-form discord:
/// a = max{c3^2, d + c5^2}, b = min{c, c3^2}, c = max{c1^2, c2^2}, d = min{c1^2, c2^2}.
struct QgAuxiliary {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

inline QgAuxiliary qg_auxiliary(const CorrelationParams& p) {
    const double c1sq = p.c1 * p.c1;
    const double c2sq = p.c2 * p.c2;
    const double c3sq = p.c3 * p.c3;
    QgAuxiliary q;
    q.c = std::max(c1sq, c2sq);
    q.d = std::min(c1sq, c2sq);
    q.a = std::max(c3sq, q.d + p.c5 * p.c5);
    q.b = std::min(q.c, c3sq);
    return q;
}

inline bool qg_denominator_degenerate(const CorrelationParams& p) {
    const QgAuxiliary q = qg_auxiliary(p);
    return std::abs(q.a - q.b + q.c - q.d) < 1e-12;
}

enum class RefinementLevel { coarse, fine };
enum class MeasuredQubit { first, second };

/// Projective measurement direction on the Bloch sphere.
struct MeasurementAxis {
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // [0, 2pi)

    std::array<double, 3> direction() const {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta)};
    }
};

/// Non-selective projective measurement of one qubit along the given axis:
/// sum_{j=+,-} (P_j x I) rho (P_j x I) with P_j = (I + j n.sigma)/2.
inline ComplexMat4 measured_state(const ComplexMat4& rho, const MeasurementAxis& axis,
                                  MeasuredQubit qubit = MeasuredQubit::first) {
    const auto n = axis.direction();
    ComplexMat2 nsigma;
    nsigma(0, 0) = n[2];
    nsigma(1, 1) = -n[2];
    nsigma(0, 1) = cplx(n[0], -n[1]);
    nsigma(1, 0) = cplx(n[0], n[1]);
    ComplexMat2 pplus = ComplexMat2::identity();
    ComplexMat2 pminus = ComplexMat2::identity();
    pplus += nsigma;
    pminus -= nsigma;
    pplus *= 0.5;
    pminus *= 0.5;
    const ComplexMat2 id = ComplexMat2::identity();
    const ComplexMat4 kp =
        qubit == MeasuredQubit::first ? kron(pplus, id) : kron(id, pplus);
    const ComplexMat4 km =
        qubit == MeasuredQubit::first ? kron(pminus, id) : kron(id, pminus);
    return kp * rho * kp + km * rho * km;
}

namespace detail {

// Deterministic search over the measurement hemisphere (theta in [0, pi/2]
// suffices: an axis and its antipode give the same non-selective map).
// Coarse 64x128 grid, keep the 8 best cells, then coordinate descent with
// step halving down to 1e-5 rad. Strictly sequential, index-ordered
// comparisons keep the result independent of evaluation order.
template <typename F>
inline double sphere_search(const F& objective, bool maximize, RefinementLevel level) {
    constexpr int kThetaCells = 64;
    constexpr int kPhiCells = 128;
    const double dtheta = (std::numbers::pi / 2.0) / kThetaCells;
    const double dphi = (2.0 * std::numbers::pi) / kPhiCells;
    const double sign = maximize ? -1.0 : 1.0;

    struct Cell {
        double score;
        double theta;
        double phi;
    };
    std::vector<Cell> best;
    best.reserve(9);
    for (int i = 0; i < kThetaCells; ++i) {
        const double theta = (i + 0.5) * dtheta;
        for (int j = 0; j < kPhiCells; ++j) {
            const double phi = j * dphi;
            const double score = sign * objective(MeasurementAxis{theta, phi});
            if (best.size() < 8 || score < best.back().score) {
                auto it = best.begin();
                while (it != best.end() && it->score <= score) ++it;
                best.insert(it, Cell{score, theta, phi});
                if (best.size() > 8) best.pop_back();
            }
        }
    }
    if (level == RefinementLevel::coarse) return sign * best.front().score;

    double overall = best.front().score;
    for (const Cell& cell : best) {
        double theta = cell.theta;
        double phi = cell.phi;
        double score = cell.score;
        double step_t = dtheta;
        double step_p = dphi;
        while (step_t >= 1e-5 || step_p >= 1e-5) {
            const std::array<std::array<double, 2>, 4> moves = {{
                {theta + step_t, phi},
                {theta - step_t, phi},
                {theta, phi + step_p},
                {theta, phi - step_p},
            }};
            int best_move = -1;
            double best_score = score;
            for (int k = 0; k < 4; ++k) {
                const double s = sign * objective(MeasurementAxis{moves[k][0], moves[k][1]});
                if (s < best_score) {
                    best_score = s;
                    best_move = k;
                }
            }
            if (best_move >= 0) {
                theta = moves[best_move][0];
                phi = moves[best_move][1];
                score = best_score;
            } else {
                step_t *= 0.5;
                step_p *= 0.5;
            }
        }
        overall = std::min(overall, score);
    }
    return sign * overall;
}

} // namespace detail

/// Definitional discord oracle: minimum over measurement axes of
/// trace_norm(rho - measured_state(rho, axis)).
inline double oracle_quantum(const XDensityMatrix& rho, RefinementLevel level,
                             MeasuredQubit qubit = MeasuredQubit::first) {
    const ComplexMat4 m = matrix(rho);
    const auto objective = [&](const MeasurementAxis& axis) {
        return trace_norm(m - measured_state(m, axis, qubit));
    };
    return detail::sphere_search(objective, /*maximize=*/false, level);
}

/// Definitional classical-correlation oracle: maximum over measurement axes of
/// trace_norm(measured_state(rho - pi_rho, axis)).
inline double oracle_classical(const XDensityMatrix& rho, RefinementLevel level,
                               MeasuredQubit qubit = MeasuredQubit::first) {
    const ComplexMat4 diff = matrix(rho) - matrix(marginal_product(rho));
    const auto objective = [&](const MeasurementAxis& axis) {
        return trace_norm(measured_state(diff, axis, qubit));
    };
    return detail::sphere_search(objective, /*maximize=*/true, level);
}

/// Total-correlation oracle: trace_norm(rho - pi_rho). No optimization involved.
inline double oracle_total(const XDensityMatrix& rho) {
    return trace_norm(matrix(rho) - matrix(marginal_product(rho)));
}

/// Closed-form trace-norm geometric discord,
/// Q = sqrt((ac - bd) / (a - b + c - d)). A vanishing denominator is the
/// degenerate 0/0 limit; the definitional minimization is used there instead.
inline double quantum_discord_1norm(const CorrelationParams& p) {
    const QgAuxiliary q = qg_auxiliary(p);
    const double den = q.a - q.b + q.c - q.d;
    if (std::abs(den) < 1e-12)
        return oracle_quantum(from_correlation_params(p), RefinementLevel::fine);
    return std::sqrt(std::max(0.0, (q.a * q.c - q.b * q.d) / den));
}

/// Closed-form classical correlation: the largest |c~i| of the effective triple.
inline double classical_correlation(const CorrelationParams& p) {
    return effective_bell(p).max_abs();
}

/// Closed-form total correlation: (c~+ + max{c~+, c~0 + c~-}) / 2.
inline double total_correlation(const CorrelationParams& p) {
    const BellTriple t = effective_bell(p);
    return 0.5 * (t.max_abs() + std::max(t.max_abs(), t.mid_abs() + t.min_abs()));
}

} // namespace xsc
