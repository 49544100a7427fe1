#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "xsc/correlations.hpp"
#include "xsc/matrix.hpp"
#include "xsc/trajectory.hpp"
#include "xsc/xstate.hpp"

namespace xsc {

enum class ChannelKind { pd, gad };

/// KRAUS reads the decoherence probability as p_s = 1 - exp(-t*gamma_s);
/// HALFTIME doubles every decay exponent (the Lindblad-rate reading).
enum class DecayConvention { kraus, halftime };

struct ChannelSpec {
    ChannelKind kind = ChannelKind::pd;
    double gamma_a = 0.5, gamma_b = 0.5;
    double lambda_a = 0.5, lambda_b = 0.5; // GAD bias, ignored for PD
    DecayConvention convention = DecayConvention::kraus;

    double decoherence_time() const { return 1.0 / (gamma_a + gamma_b); }
};

/// Kraus operators of one qubit channel. PD: {sqrt(1-p/2) I, sqrt(p/2) sigma3}.
/// GAD: the four-operator set at bias lambda.
inline std::vector<ComplexMat2> kraus_set(ChannelKind kind, double p, double lambda = 1.0) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ParameterOutOfRange("kraus_set: p must lie in [0, 1]");
    if (kind == ChannelKind::pd) {
        ComplexMat2 e0 = ComplexMat2::identity();
        e0 *= std::sqrt(1.0 - 0.5 * p);
        ComplexMat2 e1 = pauli(3);
        e1 *= std::sqrt(0.5 * p);
        return {e0, e1};
    }
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw ParameterOutOfRange("kraus_set: lambda must lie in [0, 1]");
    const double sl = std::sqrt(lambda);
    const double slbar = std::sqrt(1.0 - lambda);
    const double sq = std::sqrt(p);
    const double sqbar = std::sqrt(1.0 - p);
    ComplexMat2 e0, e1, e2, e3;
    e0(0, 0) = sl;
    e0(1, 1) = sl * sqbar;
    e1(0, 1) = sl * sq;
    e2(0, 0) = slbar * sqbar;
    e2(1, 1) = slbar;
    e3(1, 0) = slbar * sq;
    return {e0, e1, e2, e3};
}

inline bool kraus_complete(std::span<const ComplexMat2> ks, double tol = kHermitianTol) {
    ComplexMat2 sum;
    for (const auto& e : ks) sum += adjoint(e) * e;
    sum -= ComplexMat2::identity();
    return max_abs_entry(sum) <= tol;
}

/// Operator-sum application of independent local channels:
/// sum_{ij} (Ei^A x Ej^B) rho (Ei^A x Ej^B)^dagger.
inline ComplexMat4 apply_local_channels(const ComplexMat4& rho,
                                        std::span<const ComplexMat2> kraus_a,
                                        std::span<const ComplexMat2> kraus_b) {
    if (!kraus_complete(kraus_a) || !kraus_complete(kraus_b))
        throw IncompleteKrausSet("apply_local_channels: sum E^dag E != I");
    ComplexMat4 out;
    for (const auto& ea : kraus_a) {
        for (const auto& eb : kraus_b) {
            const ComplexMat4 k = kron(ea, eb);
            out += k * rho * adjoint(k);
        }
    }
    return out;
}

/// Closed-form effective triple after dimensionless time tau:
///   PD:  (c1 e^-tau,   c2 e^-tau,   c3 - c4 c5)
///   GAD: (c1 e^-tau/2, c2 e^-tau/2, (c3 - c4 c5) e^-tau)
/// under KRAUS; HALFTIME doubles the exponents. Independent of the GAD bias.
inline BellTriple markov_params(const CorrelationParams& c0, const ChannelSpec& spec,
                                double tau) {
    const BellTriple t0 = effective_bell(c0);
    const double f = spec.convention == DecayConvention::kraus ? 1.0 : 2.0;
    if (spec.kind == ChannelKind::pd) {
        const double e = std::exp(-f * tau);
        return {t0.c1 * e, t0.c2 * e, t0.c3};
    }
    const double eh = std::exp(-0.5 * f * tau);
    return {t0.c1 * eh, t0.c2 * eh, t0.c3 * eh * eh};
}

namespace detail {

inline TrajectoryRecord make_record(double tau, const BellTriple& t) {
    TrajectoryRecord rec;
    rec.tau = tau;
    rec.coeffs = t;
    rec.cg = t.max_abs();
    const CorrelationParams bell{t.c1, t.c2, t.c3, 0.0, 0.0};
    rec.qg = quantum_discord_1norm(bell);
    rec.tg = total_correlation(bell);
    return rec;
}

} // namespace detail

/// Uniformly sampled closed-form trajectory with steps+1 records.
inline std::vector<TrajectoryRecord> markov_trajectory(const CorrelationParams& c0,
                                                       const ChannelSpec& spec,
                                                       double tau_max, int steps) {
    std::vector<TrajectoryRecord> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        const double tau = tau_max * static_cast<double>(k) / steps;
        out.push_back(detail::make_record(tau, markov_params(c0, spec, tau)));
    }
    return out;
}

} // namespace xsc
