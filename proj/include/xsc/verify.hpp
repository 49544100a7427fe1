#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "xsc/channels.hpp"
#include "xsc/correlations.hpp"
#include "xsc/nonmarkov.hpp"
#include "xsc/xstate.hpp"

namespace xsc {

inline constexpr double kOracleTolQ = 1e-3;
inline constexpr double kOracleTolC = 1e-3;
inline constexpr double kOracleTolT = 1e-9;
inline constexpr double kKrausTol = 1e-12;
inline constexpr double kIntegratorTol = 1e-6;

/// Worst-case deviations between the closed forms and the definitional
/// measurement-optimization oracles over a random sample of valid states.
struct OracleAgreement {
    int samples = 0;
    double max_dq = 0.0;
    double max_dc = 0.0;
    double max_dt = 0.0;

    bool ok() const {
        return max_dq <= kOracleTolQ && max_dc <= kOracleTolC && max_dt <= kOracleTolT;
    }
};

inline OracleAgreement verify_oracle_agreement(int samples, std::uint64_t seed,
                                               RefinementLevel level = RefinementLevel::fine) {
    SplitMix64 rng(seed);
    OracleAgreement rep;
    rep.samples = samples;
    for (int n = 0; n < samples; ++n) {
        const CorrelationParams c = sample_valid_params(rng);
        const XDensityMatrix x = from_correlation_params(c);
        rep.max_dq = std::max(rep.max_dq,
                              std::abs(quantum_discord_1norm(c) - oracle_quantum(x, level)));
        rep.max_dc = std::max(rep.max_dc,
                              std::abs(classical_correlation(c) - oracle_classical(x, level)));
        rep.max_dt = std::max(rep.max_dt,
                              std::abs(total_correlation(c) - oracle_total(x)));
    }
    return rep;
}

/// Max deviation between Kraus-evolved effective triples (p_s = 1 - e^{-gamma_s t})
/// and the closed-form decay table, for PD and GAD at lambda in {0, 0.3, 1}.
inline double verify_kraus_vs_closed_form(int samples, std::uint64_t seed) {
    SplitMix64 rng(seed);
    double worst = 0.0;
    const auto check = [&worst](const BellTriple& got, const BellTriple& want) {
        worst = std::max({worst, std::abs(got.c1 - want.c1), std::abs(got.c2 - want.c2),
                          std::abs(got.c3 - want.c3)});
    };
    for (int n = 0; n < samples; ++n) {
        const CorrelationParams c = sample_valid_params(rng);
        const ComplexMat4 rho = matrix(from_correlation_params(c));
        const double ga = rng.uniform(0.2, 2.0);
        const double gb = rng.uniform(0.2, 2.0);
        const double tau = rng.uniform(0.0, 5.0);
        const double t = tau / (ga + gb);
        const double pa = 1.0 - std::exp(-ga * t);
        const double pb = 1.0 - std::exp(-gb * t);

        ChannelSpec spec{ChannelKind::pd, ga, gb, 0.0, 0.0, DecayConvention::kraus};
        {
            const auto ka = kraus_set(ChannelKind::pd, pa);
            const auto kb = kraus_set(ChannelKind::pd, pb);
            const auto evolved = x_from_matrix(apply_local_channels(rho, ka, kb));
            check(effective_bell(to_correlation_params(evolved)), markov_params(c, spec, tau));
        }
        spec.kind = ChannelKind::gad;
        for (const double lam : {0.0, 0.3, 1.0}) {
            const auto ka = kraus_set(ChannelKind::gad, pa, lam);
            const auto kb = kraus_set(ChannelKind::gad, pb, lam);
            const auto evolved = x_from_matrix(apply_local_channels(rho, ka, kb));
            check(effective_bell(to_correlation_params(evolved)), markov_params(c, spec, tau));
        }
    }
    return worst;
}

/// Max deviation between the fixed-step integrator at dtau = 1e-3 and the
/// analytic bi-exponential solution, over all five coefficients.
inline double verify_integrator_vs_analytic(double eps = 0.3, double eta = 0.6,
                                            double v = 2.0, int kappa = 2,
                                            double tau_max = 3.0, double dtau = 1e-3) {
    const CorrelationParams c0{0.5, 0.2, 0.1, 0.1, 0.2};
    const XDensityMatrix x0 = from_correlation_params(c0);
    const NonMarkovConfig cfg = build_config(eps, eta, v, kappa);
    const auto coeffs = detail::nm_coefficients(c0, cfg);
    double worst = 0.0;
    for (const auto& [tau, state] : integrate(x0, cfg, tau_max, dtau)) {
        const CorrelationParams got = state.summed();
        for (int i = 0; i < 5; ++i)
            worst = std::max(worst,
                             std::abs(got.component(i) - coeffs.s[static_cast<std::size_t>(i)](tau)));
    }
    return worst;
}

} // namespace xsc
