#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "disclab/util/quadrature.hpp"

namespace disclab {

/// Spherical Bessel j_0..j_kmax at x >= 0.
/// Forward recurrence in the oscillatory regime, Miller's backward
/// recurrence (normalized by j0) otherwise.
inline void sphericalBesselAll(double x, int kmax, double* out) {
    if (x < 0.75) {
        // j_k(x) = x^k/(2k+1)!! sum_m (-x^2/2)^m / (m! (2k+3)(2k+5)...(2k+1+2m))
        const double z = 0.5 * x * x;
        double dfact = 1.0;  // (2k+1)!!
        double xk = 1.0;
        for (int k = 0; k <= kmax; ++k) {
            if (k > 0) {
                dfact *= (2 * k + 1);
                xk *= x;
            }
            const double d3 = 2 * k + 3, d5 = 2 * k + 5, d7 = 2 * k + 7, d9 = 2 * k + 9;
            const double series =
                1.0 - z / d3 * (1.0 - z / (2.0 * d5) * (1.0 - z / (3.0 * d7) * (1.0 - z / (4.0 * d9))));
            out[k] = xk / dfact * series;
            if (xk / dfact < 1e-18) {  // remaining orders are negligible
                for (int q = k + 1; q <= kmax; ++q) out[q] = 0.0;
                return;
            }
        }
        return;
    }
    const double sx = std::sin(x), cx = std::cos(x);
    const double j0 = sx / x;
    const double invX = 1.0 / x;
    if (x > kmax + 12) {
        double jm = j0, j = (sx * invX - cx) * invX;
        out[0] = jm;
        if (kmax >= 1) out[1] = j;
        for (int k = 1; k < kmax; ++k) {
            const double jn = (2 * k + 1) * invX * j - jm;
            jm = j;
            j = jn;
            out[k + 1] = j;
        }
        return;
    }
    const int kEff = kmax;
    constexpr int kMaxSupported = 40;
    double tmp[kMaxSupported + 1];
    const int start = kEff + 14 + static_cast<int>(x);
    double jp = 0.0, j = 1e-300;
    for (int k = start; k >= 0; --k) {
        const double jm = (2 * k + 3) * invX * j - jp;
        jp = j;
        j = jm;
        if (k <= kEff) tmp[k] = j;
        if (std::fabs(j) > 1e280) {  // rescale to avoid overflow
            const double s = 1e-280;
            jp *= s;
            j *= s;
            for (int q = k; q <= kEff; ++q)
                if (q >= k) tmp[q] *= s;
        }
    }
    const double scale = j0 / j;
    for (int k = 0; k <= kEff; ++k) out[k] = tmp[k] * scale;
}

/// Legendre-coefficient representation of a function on a panel [a, b].
struct LegendrePanel {
    static constexpr int kDegree = 16;  // coefficients 0..16
    static constexpr int kNodes = 18;
    double a = 0.0, b = 0.0;
    std::array<double, kDegree + 1> coef{};

    double mid() const { return 0.5 * (a + b); }
    double half() const { return 0.5 * (b - a); }

    /// Project nodal values f(x_i) (at the kNodes-point Gauss nodes mapped to
    /// [a,b]) onto Legendre coefficients.
    template <class F>
    static LegendrePanel project(F&& f, double a, double b) {
        LegendrePanel p;
        p.a = a;
        p.b = b;
        const GaussRule& r = gaussRule(kNodes);
        std::array<double, kDegree + 1> pk;
        p.coef.fill(0.0);
        for (int i = 0; i < kNodes; ++i) {
            const double x = r.nodes[i];
            const double fv = f(p.mid() + p.half() * x);
            legendreAll(x, kDegree, pk.data());
            for (int k = 0; k <= kDegree; ++k) p.coef[k] += r.weights[i] * fv * pk[k];
        }
        for (int k = 0; k <= kDegree; ++k) p.coef[k] *= 0.5 * (2 * k + 1);
        return p;
    }

    /// Evaluate the Legendre expansion at x in [a, b].
    double eval(double x) const {
        std::array<double, kDegree + 1> pk;
        legendreAll((x - mid()) / half(), kDegree, pk.data());
        double s = 0.0;
        for (int k = 0; k <= kDegree; ++k) s += coef[k] * pk[k];
        return s;
    }

    /// Truncation-tail estimate (scale of the last two coefficients).
    double tailEstimate() const {
        return std::fabs(coef[kDegree]) + std::fabs(coef[kDegree - 1]);
    }

    /// Exact integral of (expansion) * exp(-i*omega*tau) over [a, b]:
    ///   (h/2) e^{-i omega m} Sum_k coef[k] * 2 (-i)^k j_k(omega h / 2).
    std::complex<double> integrateOsc(double omega) const {
        const double h = half(), m = mid();
        const double c = std::fabs(omega) * h;
        std::array<double, kDegree + 1> jk;
        sphericalBesselAll(c, kDegree, jk.data());
        // (-i)^k cycles 1, -i, -1, i ; for omega < 0 conjugate via i^k
        std::complex<double> s(0.0, 0.0);
        const double sign = (omega >= 0) ? -1.0 : 1.0;
        for (int k = 0; k <= kDegree; ++k) {
            std::complex<double> ik;
            switch (k & 3) {
                case 0: ik = {1.0, 0.0}; break;
                case 1: ik = {0.0, sign}; break;
                case 2: ik = {-1.0, 0.0}; break;
                default: ik = {0.0, -sign}; break;
            }
            s += coef[k] * 2.0 * ik * jk[k];
        }
        return h * std::exp(std::complex<double>(0.0, -omega * m)) * s;
    }

    /// Plain integral of the expansion over [a, b] (only P_0 survives).
    double integrate() const { return coef[0] * (b - a); }
};

}  // namespace disclab
