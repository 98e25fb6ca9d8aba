#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "disclab/discrepancy/counting.hpp"
#include "disclab/geometry/body.hpp"
#include "disclab/util/summation.hpp"

namespace disclab::bounds {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cassels-Montgomery right-hand side |C| N / 4 - 2 pi (r^2 + 1) N^2.
inline double cmBound(double area, double r, double N) {
    return area * N / 4.0 - 2.0 * M_PI * (r * r + 1.0) * N * N;
}

struct CmRecord {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    bool vacuous = false;  // rhs <= 0
    long long latticePoints = 0;
};

namespace detail {

/// Row range of lattice points of a convex body at height y (exact for
/// polygons and disks; curve bodies via the boundary interpolant).
inline bool rowRange(const geo::ConvexBody& body, double y, double& xlo, double& xhi) {
    switch (body.variant) {
        case geo::BodyVariant::Disk: {
            const double r2 = body.radius * body.radius - y * y;
            if (r2 < 0.0) return false;
            xhi = std::sqrt(r2);
            xlo = -xhi;
            return true;
        }
        case geo::BodyVariant::Polygon: {
            // clip the horizontal line against edge halfplanes
            double lo = -1e300, hi = 1e300;
            for (size_t i = 0; i < body.vertices.size(); ++i) {
                const Vec2& a = body.vertices[i];
                const Vec2& b = body.vertices[(i + 1) % body.vertices.size()];
                const Vec2 e = b - a;
                // inside: e x (p - a) >= 0 with p = (x, y)
                const double c0 = e.x * (y - a.y) + e.y * a.x;  // e x p = e.x y - e.y x
                if (std::fabs(e.y) < 1e-15 * e.norm()) {
                    if (e.x * (y - a.y) < -1e-12 * e.norm()) return false;
                    continue;
                }
                const double x = c0 / e.y;
                if (e.y > 0) hi = std::min(hi, x); else lo = std::max(lo, x);
            }
            if (lo > hi) return false;
            xlo = lo;
            xhi = hi;
            return true;
        }
        default: {
            const auto& cd = *body.curve;
            const double f = cd.lowerBoundary(0.0);
            if (std::fabs(y) > -f) return false;
            // |x| range where lower(x) <= y <= upper(x): bisect on the
            // monotone lower boundary
            double lo = 0.0, hi = cd.xA;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fl = cd.lowerBoundary(mid);
                // inside at (mid, y) iff f(mid) <= y <= -f(mid)
                if (fl <= -std::fabs(y)) lo = mid; else hi = mid;
            }
            xhi = lo;
            xlo = -lo;
            return true;
        }
    }
}

}  // namespace detail

/// Exact verification of the Cassels-Montgomery inequality: the left side is
/// the exponential-sum energy over lattice points of the region minus the
/// ball B(r); pointBudget caps the enumeration.
inline CmRecord cmVerify(const geo::ConvexBody& region, double r, const disc::PointSet& ps,
                         long long pointBudget = 100000000) {
    // origin symmetry via the support function
    for (int i = 0; i < 64; ++i) {
        const double th = M_PI * i / 64.0;
        if (std::fabs(region.support(th) - region.support(th + M_PI)) > 1e-10 * (1.0 + region.support(th)))
            throw std::invalid_argument("cmVerify: region must be origin-symmetric");
    }
    const double N = static_cast<double>(ps.size());
    CmRecord rec;
    rec.rhs = cmBound(region.area(), r, N);
    rec.vacuous = rec.rhs <= 0.0;

    const double yMax = region.support(M_PI / 2);
    const long long yTop = static_cast<long long>(std::floor(yMax + 1e-12));
    KahanSum lhs;
    for (long long my = -yTop; my <= yTop; ++my) {
        double xlo, xhi;
        if (!detail::rowRange(region, static_cast<double>(my), xlo, xhi)) continue;
        const long long a = static_cast<long long>(std::ceil(xlo - 1e-12));
        const long long b = static_cast<long long>(std::floor(xhi + 1e-12));
        if (b < a) continue;
        rec.latticePoints += b - a + 1;
        if (rec.latticePoints > pointBudget)
            throw BudgetError("cmVerify: lattice enumeration budget exceeded");
        for (long long mx = a; mx <= b; ++mx) {
            if (static_cast<double>(mx) * mx + static_cast<double>(my) * my <= r * r) continue;
            lhs.add(disc::expSumNorm2(ps, mx, my));
        }
    }
    rec.lhs = lhs.value();
    rec.holds = rec.lhs >= rec.rhs;
    return rec;
}

}  // namespace disclab::bounds
