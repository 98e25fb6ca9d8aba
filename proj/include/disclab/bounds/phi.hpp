#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "disclab/util/vec2.hpp"

namespace disclab::bounds {

/// Rotated-rectangle sweep weight. R(omega) is the axis-symmetric rectangle
/// with vertex (X/2, Y/2) rotated counterclockwise by omega; Phi(m) is the
/// measure of {omega in [-1/10, 1/10] : m in R(omega), |m| > rho1}.
struct PhiSpec {
    double X = 0.0, Y = 0.0;
    double rho1 = 1.0;
    static constexpr double omegaMax = 0.1;

    void validate() const {
        if (!(X > Y && Y > 0.0)) throw std::invalid_argument("PhiSpec: need X > Y > 0");
        if (!(rho1 >= 1.0)) throw std::invalid_argument("PhiSpec: need rho1 >= 1");
    }
};

namespace detail {

/// Intersect the omega-arcs where |rho cos(phi - omega)| <= h with
/// [-omegaMax, omegaMax]: the admissible set of each half-plane pair is
/// {omega : |cos(phi - omega)| <= h / rho}, a union of two arcs per period.
/// Returns the intervals within [lo, hi].
inline void clipAbsCos(double rho, double phi, double h, double lo, double hi,
                       std::vector<std::pair<double, double>>& out) {
    out.clear();
    if (rho <= h) {  // always inside
        out.push_back({lo, hi});
        return;
    }
    const double c = h / rho;  // in (0, 1)
    const double d = std::acos(c);  // |cos t| <= c  <=>  t in [d, pi - d] mod pi
    // t = phi - omega; omega = phi - t
    // admissible t-intervals: [d + k pi, pi - d + k pi]
    for (int k = -3; k <= 3; ++k) {
        const double tLo = d + k * M_PI, tHi = M_PI - d + k * M_PI;
        const double oLo = phi - tHi, oHi = phi - tLo;
        const double a = std::max(lo, oLo), b = std::min(hi, oHi);
        if (a < b) out.push_back({a, b});
    }
}

inline std::vector<std::pair<double, double>> intersect(const std::vector<std::pair<double, double>>& A,
                                                        const std::vector<std::pair<double, double>>& B) {
    std::vector<std::pair<double, double>> out;
    for (const auto& [a1, a2] : A)
        for (const auto& [b1, b2] : B) {
            const double lo = std::max(a1, b1), hi = std::min(a2, b2);
            if (lo < hi) out.push_back({lo, hi});
        }
    return out;
}

}  // namespace detail

/// Exact angular measure Phi(m) in [0, 1/5], via closed-form arc
/// intersection of the two |coordinate| conditions.
inline double phiWeight(const PhiSpec& spec, const Vec2& mIn) {
    spec.validate();
    // R(omega) is centrally symmetric; canonicalize the sign so that
    // Phi(m) = Phi(-m) holds bit-exactly
    const Vec2 m = (mIn.x < 0.0 || (mIn.x == 0.0 && mIn.y < 0.0)) ? -mIn : mIn;
    const double rho = m.norm();
    if (rho <= spec.rho1) return 0.0;
    const double phi = std::atan2(m.y, m.x);
    // m in R(omega)  <=>  |m . u(omega)| <= X/2 and |m . u(omega + pi/2)| <= Y/2
    // m . u(omega) = rho cos(phi - omega); m . u(omega+pi/2) = rho sin(phi - omega)
    //              = rho cos(phi - pi/2 - omega)
    std::vector<std::pair<double, double>> A, B;
    detail::clipAbsCos(rho, phi, spec.X / 2.0, -PhiSpec::omegaMax, PhiSpec::omegaMax, A);
    detail::clipAbsCos(rho, phi - M_PI / 2.0, spec.Y / 2.0, -PhiSpec::omegaMax, PhiSpec::omegaMax, B);
    double measure = 0.0;
    for (const auto& [a, b] : detail::intersect(A, B)) measure += b - a;
    return measure;
}

inline double phiWeight(const PhiSpec& spec, long long m1, long long m2) {
    return phiWeight(spec, Vec2{static_cast<double>(m1), static_cast<double>(m2)});
}

/// Conservative reach: Phi vanishes outside |m| <= half-diagonal of R.
inline double phiReach(const PhiSpec& spec) {
    return 0.5 * std::hypot(spec.X, spec.Y);
}

}  // namespace disclab::bounds
