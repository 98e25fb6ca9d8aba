#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "disclab/discrepancy/pointset.hpp"
#include "disclab/geometry/body.hpp"

namespace disclab::disc {

struct BBox {
    double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
};

inline BBox boundingBox(const geo::ConvexBody& body) {
    switch (body.variant) {
        case geo::BodyVariant::Disk:
            return {-body.radius, body.radius, -body.radius, body.radius};
        case geo::BodyVariant::Polygon: {
            BBox b{1e300, -1e300, 1e300, -1e300};
            for (const Vec2& v : body.vertices) {
                b.xlo = std::min(b.xlo, v.x);
                b.xhi = std::max(b.xhi, v.x);
                b.ylo = std::min(b.ylo, v.y);
                b.yhi = std::max(b.yhi, v.y);
            }
            return b;
        }
        default: {
            const double yext = -body.curve->lowerBoundary(0.0);
            const double h = std::max(yext, body.support(M_PI / 2));
            return {-body.curve->xA, body.curve->xA, -h, h};
        }
    }
}

/// Signed counting discrepancy D = sum_p P{1_{tau + delta C}}(p) - N delta^2 |C|.
/// The periodized count enumerates the integer translates that can reach the
/// translated dilate (exact for any body fitting within a few cells).
inline double countDiscrepancy(const geo::ConvexBody& body, const PointSet& ps, const Vec2& tau,
                               double delta) {
    if (delta < 0.0 || delta > 1.0) throw std::domain_error("countDiscrepancy: delta must be in [0, 1]");
    const size_t N = ps.size();
    long long count = 0;
    if (delta == 0.0) {
        // degenerate dilate: the anchor point itself (boundary hits count)
        for (const Vec2& p : ps.points)
            for (int nx = -1; nx <= 1; ++nx)
                for (int ny = -1; ny <= 1; ++ny)
                    if (p.x + nx == tau.x && p.y + ny == tau.y) ++count;
        return static_cast<double>(count);
    }
    const BBox bb = boundingBox(body);
    const double inv = 1.0 / delta;
    for (const Vec2& p : ps.points) {
        const int nxLo = static_cast<int>(std::ceil(tau.x + delta * bb.xlo - p.x - 1e-12));
        const int nxHi = static_cast<int>(std::floor(tau.x + delta * bb.xhi - p.x + 1e-12));
        const int nyLo = static_cast<int>(std::ceil(tau.y + delta * bb.ylo - p.y - 1e-12));
        const int nyHi = static_cast<int>(std::floor(tau.y + delta * bb.yhi - p.y + 1e-12));
        for (int nx = nxLo; nx <= nxHi; ++nx)
            for (int ny = nyLo; ny <= nyHi; ++ny) {
                const Vec2 q{(p.x + nx - tau.x) * inv, (p.y + ny - tau.y) * inv};
                if (body.contains(q)) ++count;
            }
    }
    return static_cast<double>(count) - static_cast<double>(N) * delta * delta * body.area();
}

/// Exponential sum S(m) = sum_p e^{2 pi i p . m}; |S| <= N, S(0) = N.
inline std::complex<double> expSum(const PointSet& ps, long long m1, long long m2) {
    double re = 0.0, im = 0.0;
    for (const Vec2& p : ps.points) {
        const double ph = 2.0 * M_PI * (p.x * static_cast<double>(m1) + p.y * static_cast<double>(m2));
        re += std::cos(ph);
        im += std::sin(ph);
    }
    return {re, im};
}

inline double expSumNorm2(const PointSet& ps, long long m1, long long m2) {
    const auto s = expSum(ps, m1, m2);
    return std::norm(s);
}

}  // namespace disclab::disc
