#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "xsc/channels.hpp"
#include "xsc/trajectory.hpp"
#include "xsc/xstate.hpp"

namespace xsc {

enum class InitialWeights { stationary, equal };

/// Two-configuration self-fluctuating dephasing bath in dimensionless time
/// tau = (gamma1 + gamma2) t with gamma1 + gamma2 = 1:
///   gamma1 = eps, gamma2 = 1 - eps, phi12 = eta v, phi21 = (1 - eta) v.
/// kappa is the coefficient decay rate per unit gamma_R for c1, c2 (2 or 4,
/// the two readings of the dephasing prefactor).
struct NonMarkovConfig {
    double eps = 0.5;
    double eta = 0.5;
    double v = 1.0;
    int kappa = 2;
    InitialWeights init = InitialWeights::stationary;

    double gamma1() const { return eps; }
    double gamma2() const { return 1.0 - eps; }
    double phi12() const { return eta * v; }
    double phi21() const { return (1.0 - eta) * v; }

    std::pair<double, double> initial_weights() const {
        if (init == InitialWeights::stationary) return {eta, 1.0 - eta};
        return {0.5, 0.5};
    }
};

inline NonMarkovConfig build_config(double eps, double eta, double v, int kappa = 2,
                                    InitialWeights init = InitialWeights::stationary) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw ParameterOutOfRange("build_config: eps must lie in [0, 1]");
    if (!(eta >= 0.0 && eta <= 1.0))
        throw ParameterOutOfRange("build_config: eta must lie in [0, 1]");
    if (!(v >= 0.0))
        throw ParameterOutOfRange("build_config: v must be nonnegative");
    if (kappa != 2 && kappa != 4)
        throw ParameterOutOfRange("build_config: kappa must be 2 or 4");
    return {eps, eta, v, kappa, init};
}

/// Exact solution of the coupled pair
///   d/dtau (x1, x2) = [[-a1 - phi21, phi12], [phi21, -a2 - phi12]] (x1, x2),
/// x_R(0) = w_R x0, evaluated as the configurational sum x1 + x2. The sum obeys
/// s'' - tr s' + det s = 0, so it is a bi-exponential (or critically damped).
class BiExponential {
public:
    BiExponential() = default;
    BiExponential(double rate1, double rate2, double amp1, double amp2, bool critical)
        : rate1_(rate1), rate2_(rate2), amp1_(amp1), amp2_(amp2), critical_(critical) {}

    double operator()(double tau) const {
        if (critical_) return (amp1_ + amp2_ * tau) * std::exp(rate1_ * tau);
        return amp1_ * std::exp(rate1_ * tau) + amp2_ * std::exp(rate2_ * tau);
    }

    double rate_slow() const { return rate1_; }
    double rate_fast() const { return critical_ ? rate1_ : rate2_; }
    double amp_slow() const { return amp1_; }

private:
    double rate1_ = 0.0; // slow mode (largest eigenvalue, <= 0)
    double rate2_ = 0.0;
    double amp1_ = 0.0;
    double amp2_ = 0.0;
    bool critical_ = false;
};

inline BiExponential analytic_coefficient(double x0, double a1, double a2, double phi12,
                                          double phi21, double w1, double w2) {
    const double m00 = -a1 - phi21;
    const double m11 = -a2 - phi12;
    const double tr = m00 + m11;
    const double disc = (m00 - m11) * (m00 - m11) + 4.0 * phi12 * phi21;
    const double s0 = (w1 + w2) * x0;
    const double s0dot = -(a1 * w1 + a2 * w2) * x0;
    const double sq = std::sqrt(std::max(0.0, disc));
    if (sq > 1e-14 * std::max(1.0, std::abs(tr))) {
        const double l1 = 0.5 * (tr + sq);
        const double l2 = 0.5 * (tr - sq);
        const double a = (s0dot - l2 * s0) / (l1 - l2);
        return {l1, l2, a, s0 - a, false};
    }
    const double l = 0.5 * tr;
    return {l, l, s0, s0dot - l * s0, true};
}

/// Unnormalized per-configuration state in the reduced representation:
/// trace weight P_R plus the five Pauli coefficients scaled by P_R.
struct ConfigurationState {
    double p1 = 0.0, p2 = 0.0;
    std::array<double, 5> x1{}; // configuration-1 share of (c1..c5)
    std::array<double, 5> x2{};

    CorrelationParams summed() const {
        return {x1[0] + x2[0], x1[1] + x2[1], x1[2] + x2[2], x1[3] + x2[3],
                x1[4] + x2[4]};
    }
};

/// Closed-form configurational probabilities (P1, P2) at time tau.
inline std::pair<double, double> configuration_weights(const NonMarkovConfig& cfg,
                                                       double tau) {
    const auto [w1, w2] = cfg.initial_weights();
    if (cfg.v == 0.0) return {w1, w2};
    const double p1 = cfg.eta + (w1 - cfg.eta) * std::exp(-cfg.v * tau);
    return {p1, 1.0 - p1};
}

/// Classic fourth-order fixed-step integration of the coupled master-equation
/// pair in the reduced representation. The exchange terms are the
/// trace-preserving pair (-phi21 rho1 + phi12 rho2, -phi12 rho2 + phi21 rho1).
inline std::vector<std::pair<double, ConfigurationState>> integrate(
    const XDensityMatrix& rho0, const NonMarkovConfig& cfg, double tau_max,
    double dtau) {
    if (!(dtau > 0.0) || dtau > 0.01 / std::max(1.0, cfg.v))
        throw StepTooLarge("integrate: require 0 < dtau <= 0.01/max(1, v)");

    const CorrelationParams c0 = to_correlation_params(rho0);
    const auto [w1, w2] = cfg.initial_weights();
    const double a1 = cfg.kappa * cfg.gamma1();
    const double a2 = cfg.kappa * cfg.gamma2();
    const double p12 = cfg.phi12();
    const double p21 = cfg.phi21();

    // y = (P1, x1[0..4], P2, x2[0..4]); dephasing damps only c1, c2.
    using State = std::array<double, 12>;
    const std::array<double, 6> damp1{0.0, a1, a1, 0.0, 0.0, 0.0};
    const std::array<double, 6> damp2{0.0, a2, a2, 0.0, 0.0, 0.0};
    const auto rhs = [&](const State& y, State& dy) {
        for (int i = 0; i < 6; ++i) {
            dy[i] = -damp1[i] * y[i] - p21 * y[i] + p12 * y[6 + i];
            dy[6 + i] = -damp2[i] * y[6 + i] - p12 * y[6 + i] + p21 * y[i];
        }
    };

    State y{};
    y[0] = w1;
    y[6] = w2;
    for (int i = 0; i < 5; ++i) {
        y[1 + i] = w1 * c0.component(i);
        y[7 + i] = w2 * c0.component(i);
    }

    const auto snapshot = [](double tau, const State& s) {
        ConfigurationState c;
        c.p1 = s[0];
        c.p2 = s[6];
        for (int i = 0; i < 5; ++i) {
            c.x1[static_cast<std::size_t>(i)] = s[1 + i];
            c.x2[static_cast<std::size_t>(i)] = s[7 + i];
        }
        return std::pair{tau, c};
    };

    const int nsteps = static_cast<int>(std::ceil(tau_max / dtau - 1e-12));
    std::vector<std::pair<double, ConfigurationState>> out;
    out.reserve(static_cast<std::size_t>(nsteps) + 1);
    out.push_back(snapshot(0.0, y));

    State k1, k2, k3, k4, tmp;
    for (int n = 0; n < nsteps; ++n) {
        rhs(y, k1);
        for (int i = 0; i < 12; ++i) tmp[i] = y[i] + 0.5 * dtau * k1[i];
        rhs(tmp, k2);
        for (int i = 0; i < 12; ++i) tmp[i] = y[i] + 0.5 * dtau * k2[i];
        rhs(tmp, k3);
        for (int i = 0; i < 12; ++i) tmp[i] = y[i] + dtau * k3[i];
        rhs(tmp, k4);
        for (int i = 0; i < 12; ++i)
            y[i] += (dtau / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        out.push_back(snapshot(dtau * (n + 1), y));
    }
    return out;
}

namespace detail {

struct NmCoefficients {
    std::array<BiExponential, 5> s; // summed c1..c5 as functions of tau

    BellTriple triple(double tau) const {
        return {s[0](tau), s[1](tau), s[2](tau) - s[3](tau) * s[4](tau)};
    }
};

inline NmCoefficients nm_coefficients(const CorrelationParams& c0,
                                      const NonMarkovConfig& cfg) {
    const auto [w1, w2] = cfg.initial_weights();
    NmCoefficients out;
    for (int i = 0; i < 5; ++i) {
        const double a1 = i < 2 ? cfg.kappa * cfg.gamma1() : 0.0;
        const double a2 = i < 2 ? cfg.kappa * cfg.gamma2() : 0.0;
        out.s[static_cast<std::size_t>(i)] = analytic_coefficient(
            c0.component(i), a1, a2, cfg.phi12(), cfg.phi21(), w1, w2);
    }
    return out;
}

} // namespace detail

/// Analytic trajectory of the effective triple of the summed state rho1 + rho2.
inline std::vector<TrajectoryRecord> nm_classical_trajectory(const XDensityMatrix& rho0,
                                                             const NonMarkovConfig& cfg,
                                                             double tau_max, int steps) {
    const auto coeffs = detail::nm_coefficients(to_correlation_params(rho0), cfg);
    std::vector<TrajectoryRecord> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k <= steps; ++k) {
        const double tau = tau_max * static_cast<double>(k) / steps;
        out.push_back(detail::make_record(tau, coeffs.triple(tau)));
    }
    return out;
}

/// Emergence horizon: a crossing beyond 100 decoherence times is reported as
/// absent (the soft-decay regimes place it orders of magnitude further out).
inline constexpr double kEmergenceHorizon = 100.0;

/// Time at which max(|c~1|, |c~2|) falls to |c~3|, found by bracketing
/// bisection on the analytic bi-exponentials; absent when the decay never
/// reaches the constant branch within the horizon.
inline std::optional<double> nm_emergence_time(const XDensityMatrix& rho0,
                                               const NonMarkovConfig& cfg) {
    const CorrelationParams c0 = to_correlation_params(rho0);
    const auto coeffs = detail::nm_coefficients(c0, cfg);
    const double z = std::abs(c0.c3 - c0.c4 * c0.c5);
    const auto gap = [&](double tau) {
        return std::max(std::abs(coeffs.s[0](tau)), std::abs(coeffs.s[1](tau))) - z;
    };
    if (gap(0.0) <= 0.0) return 0.0; // constant from the start
    if (gap(kEmergenceHorizon) > 0.0) return std::nullopt;
    double lo = 0.0, hi = kEmergenceHorizon;
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace xsc
