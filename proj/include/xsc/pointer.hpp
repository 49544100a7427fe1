#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "xsc/channels.hpp"
#include "xsc/trajectory.hpp"
#include "xsc/xstate.hpp"

namespace xsc {

enum class BellBranch { c1, c2, c3 };

/// Outcome of the sudden-change analysis for one initial state and channel.
/// tau_emergence is the time after which the classical correlation stays
/// constant (PD only); a tie |c~3| = c~+ at tau = 0 reports tau_emergence = 0
/// with no kink.
struct TransitionReport {
    bool has_transition = false;
    std::optional<double> tau_star;
    std::optional<double> tau_emergence;
    std::optional<BellBranch> branch_before;
    std::optional<BellBranch> branch_after;
};

/// Whether the classical correlation has a kink at finite time. PD: the
/// constant branch starts below the decaying maximum, 0 < |c~3| < max(|c~1|,|c~2|).
/// GAD: the faster-decaying |c~3| starts as the maximum, |c~3| > max(|c~1|,|c~2|) > 0.
inline bool sudden_change_predicate(const CorrelationParams& c0, ChannelKind kind) {
    const BellTriple t = effective_bell(c0);
    const double z = std::abs(t.c3);
    const double m = std::max(std::abs(t.c1), std::abs(t.c2));
    if (kind == ChannelKind::pd) return 0.0 < z && z < m;
    return z > m && m > 0.0;
}

inline TransitionReport transition_time(const CorrelationParams& c0,
                                        const ChannelSpec& spec) {
    const BellTriple t = effective_bell(c0);
    const double z = std::abs(t.c3);
    const double m = std::max(std::abs(t.c1), std::abs(t.c2));
    const double f = spec.convention == DecayConvention::kraus ? 1.0 : 2.0;
    const BellBranch big = std::abs(t.c1) >= std::abs(t.c2) ? BellBranch::c1 : BellBranch::c2;

    TransitionReport rep;
    if (spec.kind == ChannelKind::pd) {
        if (z == 0.0) return rep; // pure exponential forever
        if (z >= m) {
            rep.tau_emergence = 0.0; // constant from the start, no kink
            return rep;
        }
        rep.has_transition = true;
        rep.tau_star = std::log(m / z) / f;
        rep.tau_emergence = rep.tau_star;
        rep.branch_before = big;
        rep.branch_after = BellBranch::c3;
        return rep;
    }
    // GAD: no pointer basis at finite time; only the crossing may exist.
    if (z > m && m > 0.0) {
        rep.has_transition = true;
        rep.tau_star = 2.0 * std::log(z / m) / f;
        rep.branch_before = BellBranch::c3;
        rep.branch_after = big;
    }
    return rep;
}

namespace detail {

inline int argmax_branch(const BellTriple& t) {
    int best = 0;
    double val = std::abs(t.c1);
    if (std::abs(t.c2) > val) { best = 1; val = std::abs(t.c2); }
    if (std::abs(t.c3) > val) best = 2;
    return best;
}

} // namespace detail

/// Locations where the identity of argmax(|c~1|,|c~2|,|c~3|) changes along a
/// uniformly sampled trajectory, refined by bisection on the continuous
/// generator to an interval below 1e-6. Ties at a sample (the tau = 0
/// constant-from-start case) are not kinks.
inline std::vector<double> detect_kinks(
    std::span<const TrajectoryRecord> traj,
    const std::function<BellTriple(double)>& generator) {
    std::vector<double> kinks;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const int ia = detail::argmax_branch(traj[k - 1].coeffs);
        const int ib = detail::argmax_branch(traj[k].coeffs);
        if (ia == ib) continue;
        const auto gap = [&](double tau) {
            const BellTriple t = generator(tau);
            return std::abs(t.component(ib)) - std::abs(t.component(ia));
        };
        double lo = traj[k - 1].tau;
        double hi = traj[k].tau;
        const double glo = gap(lo);
        const double ghi = gap(hi);
        if (glo == 0.0) continue;  // tie at the sample point
        if (glo > 0.0) continue;   // argmax flip without a crossing of these branches
        if (ghi < 0.0) continue;
        if (ghi == 0.0) {
            kinks.push_back(hi);
            continue;
        }
        while (hi - lo > 1e-7) {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) < 0.0 ? lo : hi) = mid;
        }
        kinks.push_back(0.5 * (lo + hi));
    }
    return kinks;
}

} // namespace xsc
