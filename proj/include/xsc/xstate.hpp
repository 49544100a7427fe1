#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "xsc/matrix.hpp"

namespace xsc {

/// Pauli-basis coefficients of a two-qubit X state:
/// rho = (I.I + c1 XX + c2 YY + c3 ZZ + c4 I.Z + c5 Z.I) / 4.
struct CorrelationParams {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;

    double component(int i) const {
        const std::array<const double*, 5> f{&c1, &c2, &c3, &c4, &c5};
        return *f[static_cast<std::size_t>(i)];
    }
    bool operator==(const CorrelationParams&) const = default;
};

/// X-shaped density matrix with phase-fixed (real) coherences.
struct XDensityMatrix {
    double rho11 = 0.0, rho22 = 0.0, rho33 = 0.0, rho44 = 0.0;
    double rho41 = 0.0, rho32 = 0.0;
};

/// Effective Bell-diagonal coefficients (c1, c2, c3 - c4*c5).
struct BellTriple {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;

    double component(int i) const {
        const std::array<const double*, 3> f{&c1, &c2, &c3};
        return *f[static_cast<std::size_t>(i)];
    }
    double min_abs() const { return ordered()[0]; }
    double mid_abs() const { return ordered()[1]; }
    double max_abs() const { return ordered()[2]; }

private:
    std::array<double, 3> ordered() const {
        std::array<double, 3> v{std::abs(c1), std::abs(c2), std::abs(c3)};
        std::sort(v.begin(), v.end());
        return v;
    }
};

inline constexpr double kValidityTol = 1e-12;

struct ValidityReport {
    bool unit_trace = false;
    bool nonneg_populations = false;
    bool outer_coherence_bound = false; // rho11*rho44 >= rho41^2
    bool inner_coherence_bound = false; // rho22*rho33 >= rho32^2

    bool ok() const {
        return unit_trace && nonneg_populations && outer_coherence_bound &&
               inner_coherence_bound;
    }
};

inline XDensityMatrix from_correlation_params(const CorrelationParams& c) {
    XDensityMatrix x;
    x.rho11 = 0.25 * (1.0 + c.c3 + c.c4 + c.c5);
    x.rho22 = 0.25 * (1.0 - c.c3 - c.c4 + c.c5);
    x.rho33 = 0.25 * (1.0 - c.c3 + c.c4 - c.c5);
    x.rho44 = 0.25 * (1.0 + c.c3 - c.c4 - c.c5);
    x.rho41 = 0.25 * (c.c1 - c.c2);
    x.rho32 = 0.25 * (c.c1 + c.c2);
    return x;
}

inline CorrelationParams to_correlation_params(const XDensityMatrix& x) {
    CorrelationParams c;
    c.c1 = 2.0 * (x.rho32 + x.rho41);
    c.c2 = 2.0 * (x.rho32 - x.rho41);
    c.c3 = 1.0 - 2.0 * (x.rho22 + x.rho33);
    c.c4 = 2.0 * (x.rho11 + x.rho33) - 1.0;
    c.c5 = 2.0 * (x.rho11 + x.rho22) - 1.0;
    return c;
}

inline ValidityReport validate(const XDensityMatrix& x) {
    ValidityReport r;
    r.unit_trace =
        std::abs(x.rho11 + x.rho22 + x.rho33 + x.rho44 - 1.0) <= kValidityTol;
    r.nonneg_populations = x.rho11 >= -kValidityTol && x.rho22 >= -kValidityTol &&
                           x.rho33 >= -kValidityTol && x.rho44 >= -kValidityTol;
    r.outer_coherence_bound = x.rho11 * x.rho44 >= x.rho41 * x.rho41 - kValidityTol;
    r.inner_coherence_bound = x.rho22 * x.rho33 >= x.rho32 * x.rho32 - kValidityTol;
    return r;
}

inline ComplexMat4 matrix(const XDensityMatrix& x) {
    ComplexMat4 m;
    m(0, 0) = x.rho11;
    m(1, 1) = x.rho22;
    m(2, 2) = x.rho33;
    m(3, 3) = x.rho44;
    m(0, 3) = m(3, 0) = x.rho41;
    m(1, 2) = m(2, 1) = x.rho32;
    return m;
}

/// Strict extraction: requires Hermitian X shape with real coherences.
inline XDensityMatrix x_from_matrix(const ComplexMat4& m, double tol = kHermitianTol) {
    if (!is_hermitian(m, tol))
        throw NonHermitianInput("x_from_matrix: input is not Hermitian");
    if (!detail::is_x_structured(m, tol))
        throw ParameterOutOfRange("x_from_matrix: input is not X-structured");
    if (std::abs(m(3, 0).imag()) > tol || std::abs(m(2, 1).imag()) > tol)
        throw ParameterOutOfRange("x_from_matrix: coherences are not real (use the phase-fixed variant)");
    XDensityMatrix x;
    x.rho11 = m(0, 0).real();
    x.rho22 = m(1, 1).real();
    x.rho33 = m(2, 2).real();
    x.rho44 = m(3, 3).real();
    x.rho41 = m(3, 0).real();
    x.rho32 = m(2, 1).real();
    return x;
}

/// Accepts complex coherences and applies the phase-removing local unitary,
/// which leaves every trace-distance correlation unchanged.
inline XDensityMatrix x_from_matrix_phase_fixed(const ComplexMat4& m,
                                                double tol = kHermitianTol) {
    if (!is_hermitian(m, tol))
        throw NonHermitianInput("x_from_matrix_phase_fixed: input is not Hermitian");
    if (!detail::is_x_structured(m, tol))
        throw ParameterOutOfRange("x_from_matrix_phase_fixed: input is not X-structured");
    XDensityMatrix x;
    x.rho11 = m(0, 0).real();
    x.rho22 = m(1, 1).real();
    x.rho33 = m(2, 2).real();
    x.rho44 = m(3, 3).real();
    x.rho41 = std::abs(m(3, 0));
    x.rho32 = std::abs(m(2, 1));
    return x;
}

/// Product of the local marginals; in coefficients, (0, 0, c4*c5, c4, c5).
inline XDensityMatrix marginal_product(const XDensityMatrix& x) {
    const CorrelationParams c = to_correlation_params(x);
    return from_correlation_params({0.0, 0.0, c.c4 * c.c5, c.c4, c.c5});
}

inline BellTriple effective_bell(const CorrelationParams& c) {
    return {c.c1, c.c2, c.c3 - c.c4 * c.c5};
}

/// Deterministic splitmix64 stream; identical output on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

/// Rejection sampling of valid states: c1..c5 uniform in [-1,1]^5, rejected
/// on validate failure.
inline CorrelationParams sample_valid_params(SplitMix64& rng) {
    for (;;) {
        CorrelationParams c{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                            rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                            rng.uniform(-1.0, 1.0)};
        if (validate(from_correlation_params(c)).ok()) return c;
    }
}

/// Parses "c1,c2,c3,c4,c5" (decimal literals, optional spaces).
inline CorrelationParams parse_correlation_params(std::string_view text) {
    std::array<double, 5> vals{};
    std::size_t pos = 0;
    for (int k = 0; k < 5; ++k) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        if (k < 4 && end == text.size())
            throw std::invalid_argument("expected 5 comma-separated values");
        std::string_view field = text.substr(pos, end - pos);
        while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
        const char* first = field.data();
        const char* last = field.data() + field.size();
        auto [ptr, ec] = std::from_chars(first, last, vals[static_cast<std::size_t>(k)]);
        if (ec != std::errc{} || ptr != last)
            throw std::invalid_argument("malformed number in state parameters: '" +
                                        std::string(field) + "'");
        pos = end + (end < text.size() ? 1 : 0);
    }
    if (pos < text.size())
        throw std::invalid_argument("trailing content after 5 state parameters");
    return {vals[0], vals[1], vals[2], vals[3], vals[4]};
}

} // namespace xsc
