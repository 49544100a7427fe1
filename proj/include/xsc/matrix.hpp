#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "xsc/errors.hpp"

namespace xsc {

using cplx = std::complex<double>;

/// Dense row-major complex matrix of fixed dimension N.
template <int N>
struct ComplexMat {
    std::array<cplx, static_cast<std::size_t>(N) * N> m{};

    cplx& operator()(int i, int j) { return m[static_cast<std::size_t>(N) * i + j]; }
    const cplx& operator()(int i, int j) const {
        return m[static_cast<std::size_t>(N) * i + j];
    }

    static ComplexMat identity() {
        ComplexMat out;
        for (int i = 0; i < N; ++i) out(i, i) = 1.0;
        return out;
    }

    ComplexMat& operator+=(const ComplexMat& rhs) {
        for (std::size_t k = 0; k < m.size(); ++k) m[k] += rhs.m[k];
        return *this;
    }
    ComplexMat& operator-=(const ComplexMat& rhs) {
        for (std::size_t k = 0; k < m.size(); ++k) m[k] -= rhs.m[k];
        return *this;
    }
    ComplexMat& operator*=(cplx s) {
        for (auto& v : m) v *= s;
        return *this;
    }

    friend ComplexMat operator+(ComplexMat a, const ComplexMat& b) { return a += b; }
    friend ComplexMat operator-(ComplexMat a, const ComplexMat& b) { return a -= b; }
    friend ComplexMat operator*(cplx s, ComplexMat a) { return a *= s; }

    friend ComplexMat operator*(const ComplexMat& a, const ComplexMat& b) {
        ComplexMat out;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) continue;
                for (int j = 0; j < N; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }
};

using ComplexMat2 = ComplexMat<2>;
using ComplexMat4 = ComplexMat<4>;

template <int N>
inline ComplexMat<N> adjoint(const ComplexMat<N>& a) {
    ComplexMat<N> out;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) out(i, j) = std::conj(a(j, i));
    return out;
}

template <int N>
inline cplx trace(const ComplexMat<N>& a) {
    cplx t{};
    for (int i = 0; i < N; ++i) t += a(i, i);
    return t;
}

template <int N>
inline double max_abs_entry(const ComplexMat<N>& a) {
    double mx = 0.0;
    for (const auto& v : a.m) mx = std::max(mx, std::abs(v));
    return mx;
}

/// sigma_1, sigma_2, sigma_3 for k = 1,2,3; identity for k = 0.
inline ComplexMat2 pauli(int k) {
    ComplexMat2 s;
    switch (k) {
    case 0: s(0, 0) = 1.0; s(1, 1) = 1.0; break;
    case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
    case 2: s(0, 1) = cplx(0.0, -1.0); s(1, 0) = cplx(0.0, 1.0); break;
    case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
    default: throw ParameterOutOfRange("pauli index must be 0..3");
    }
    return s;
}

/// Kronecker product, (kron(A,B))[2i+k][2j+l] = A[i][j] * B[k][l].
inline ComplexMat4 kron(const ComplexMat2& a, const ComplexMat2& b) {
    ComplexMat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

inline constexpr double kHermitianTol = 1e-12;

template <int N>
inline double hermiticity_defect(const ComplexMat<N>& a) {
    double mx = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j)
            mx = std::max(mx, std::abs(a(i, j) - std::conj(a(j, i))));
    return mx;
}

template <int N>
inline bool is_hermitian(const ComplexMat<N>& a, double tol = kHermitianTol) {
    return hermiticity_defect(a) <= tol;
}

template <int N>
inline ComplexMat<N> symmetrized(const ComplexMat<N>& a) {
    ComplexMat<N> out;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            out(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return out;
}

namespace detail {

// Entries outside the diagonal/anti-diagonal X pattern.
inline constexpr std::array<std::array<int, 2>, 8> kOffXEntries = {{
    {0, 1}, {0, 2}, {1, 0}, {2, 0}, {1, 3}, {3, 1}, {2, 3}, {3, 2},
}};

inline bool is_x_structured(const ComplexMat4& a, double tol = 1e-14) {
    for (const auto& [i, j] : kOffXEntries)
        if (std::abs(a(i, j)) > tol) return false;
    return true;
}

// Eigenvalues of the Hermitian 2x2 block [[a, b], [conj(b), d]].
inline std::array<double, 2> block_eigenvalues(double a, double d, cplx b) {
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(b));
    return {mid + rad, mid - rad};
}

// One cyclic sweep of complex Jacobi rotations; returns remaining off-diagonal mass.
inline double jacobi_sweep(ComplexMat4& a) {
    for (int p = 0; p < 4; ++p) {
        for (int q = p + 1; q < 4; ++q) {
            const cplx apq = a(p, q);
            const double mag = std::abs(apq);
            if (mag < 1e-300) {
                a(p, q) = a(q, p) = 0.0;
                continue;
            }
            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const cplx u = std::conj(apq) / mag; // phase that makes the pivot real
            const double tau = (aqq - app) / (2.0 * mag);
            const double t = (tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                         : -1.0 / (-tau + std::sqrt(1.0 + tau * tau)));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            const cplx us = u * s;
            const cplx uc = u * c;
            // columns: col_p' = c*col_p - u*s*col_q ; col_q' = s*col_p + u*c*col_q
            for (int i = 0; i < 4; ++i) {
                const cplx aip = a(i, p);
                const cplx aiq = a(i, q);
                a(i, p) = c * aip - us * aiq;
                a(i, q) = s * aip + uc * aiq;
            }
            // rows: row_p' = c*row_p - conj(u)*s*row_q ; row_q' = s*row_p + conj(u)*c*row_q
            for (int j = 0; j < 4; ++j) {
                const cplx apj = a(p, j);
                const cplx aqj = a(q, j);
                a(p, j) = c * apj - std::conj(us) * aqj;
                a(q, j) = s * apj + std::conj(uc) * aqj;
            }
            a(p, q) = a(q, p) = 0.0;
            a(p, p) = a(p, p).real();
            a(q, q) = a(q, q).real();
        }
    }
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a(p, q)));
    return off;
}

} // namespace detail

/// Eigenvalues of a Hermitian 4x4 matrix, sorted descending. X-structured inputs
/// take the exact 2x2-block path; anything else goes through cyclic Jacobi.
inline std::array<double, 4> hermitian_eigenvalues(const ComplexMat4& m) {
    if (!is_hermitian(m))
        throw NonHermitianInput("hermitian_eigenvalues: input is not Hermitian within 1e-12");
    ComplexMat4 a = symmetrized(m);
    std::array<double, 4> ev{};
    if (detail::is_x_structured(a)) {
        const auto outer =
            detail::block_eigenvalues(a(0, 0).real(), a(3, 3).real(), a(3, 0));
        const auto inner =
            detail::block_eigenvalues(a(1, 1).real(), a(2, 2).real(), a(2, 1));
        ev = {outer[0], outer[1], inner[0], inner[1]};
    } else {
        double scale = 1.0;
        for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(a(i, i)));
        for (int sweep = 0; sweep < 60; ++sweep) {
            if (detail::jacobi_sweep(a) <= 1e-15 * scale) break;
        }
        for (int i = 0; i < 4; ++i) ev[i] = a(i, i).real();
    }
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

/// Schatten 1-norm of a Hermitian matrix: the sum of absolute eigenvalues.
inline double trace_norm(const ComplexMat4& m) {
    const auto ev = hermitian_eigenvalues(m);
    return std::abs(ev[0]) + std::abs(ev[1]) + std::abs(ev[2]) + std::abs(ev[3]);
}

} // namespace xsc
