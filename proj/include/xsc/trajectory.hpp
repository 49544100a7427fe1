#pragma once

#include <optional>

#include "xsc/xstate.hpp"

namespace xsc {

/// One sample of an effective-Bell-triple trajectory in dimensionless time
/// tau = (gamma_A + gamma_B) t. The optional discord/total values refer to the
/// Bell state built from the triple alone, which keeps records independent of
/// channel bias parameters.
struct TrajectoryRecord {
    double tau = 0.0;
    BellTriple coeffs;
    double cg = 0.0;
    std::optional<double> qg;
    std::optional<double> tg;
};

} // namespace xsc
