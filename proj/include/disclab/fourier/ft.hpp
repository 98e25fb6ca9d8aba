#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "disclab/fourier/bessel.hpp"
#include "disclab/fourier/profile.hpp"
#include "disclab/geometry/body.hpp"
#include "disclab/util/quadrature.hpp"

namespace disclab::fourier {

using Complex = std::complex<double>;

struct AccuracyError : std::runtime_error {
    double achieved;
    AccuracyError(const std::string& what, double est) : std::runtime_error(what), achieved(est) {}
};

namespace detail {

/// (e^z - 1)/z with the removable singularity handled.
inline Complex expm1OverZ(Complex z) {
    if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0));
    return (std::exp(z) - 1.0) / z;
}

}  // namespace detail

/// Exact edge-sum transform of a polygon indicator: the area integral is
/// converted to a boundary integral; each edge contributes a difference of
/// complex exponentials, with the parallel-edge case as an analytic limit.
inline Complex ftPolygon(const std::vector<Vec2>& verts, const Vec2& xi) {
    const double xi2 = xi.norm2();
    Complex sum(0.0, 0.0);
    const Complex i2pi(0.0, 2.0 * M_PI);
    for (size_t j = 0; j < verts.size(); ++j) {
        const Vec2& a = verts[j];
        const Vec2& b = verts[(j + 1) % verts.size()];
        const Vec2 d = b - a;
        const double nDotXi = d.y * xi.x - d.x * xi.y;  // (outward normal) . xi * length
        if (nDotXi == 0.0) continue;
        const Complex phase = std::exp(-i2pi * (a.x * xi.x + a.y * xi.y));
        const Complex z = -i2pi * (d.x * xi.x + d.y * xi.y);
        sum += nDotXi * phase * detail::expm1OverZ(z);
    }
    return sum / (-i2pi * xi2);
}

/// Fourier transform of the body indicator, hat{1}_C(xi) = int_C e^{-2 pi i x.xi} dx.
/// Polygons and disks use closed forms; curve-backed bodies use the
/// linear-phase Legendre (Filon-type) transform of the slice profile, whose
/// cost does not grow with |xi|.
inline Complex ftIndicator(const geo::ConvexBody& body, const Vec2& xi,
                           ProfileCache* cache = nullptr, double relTarget = 1e-8) {
    const double rho = xi.norm();
    if (rho == 0.0) return {body.area(), 0.0};
    switch (body.variant) {
        case geo::BodyVariant::Polygon:
            return ftPolygon(body.vertices, xi);
        case geo::BodyVariant::Disk:
            return {body.radius * besselJ1(2.0 * M_PI * body.radius * rho) / rho, 0.0};
        default: {
            const double theta = std::atan2(xi.y, xi.x);
            std::shared_ptr<const ChordProfile> owned;
            const ChordProfile* prof;
            if (cache) {
                owned = cache->forAngle(theta);
                prof = owned.get();
            } else {
                owned = std::make_shared<const ChordProfile>(body, theta);
                prof = owned.get();
            }
            const double value = prof->transform(rho);
            const double est = prof->errorEstimate(rho);
            if (est > relTarget * std::max(std::fabs(value), 1e-14 * body.area()) && est > 1e-15)
                throw AccuracyError("ftIndicator: profile accuracy target not met", est);
            return {value, 0.0};
        }
    }
}

/// Independent oscillatory-boundary-quadrature route (flux form of the
/// divergence theorem), with composite Gauss panels resolving the phase at
/// >= 4 nodes per oscillation and panel-count doubling until two
/// refinements agree. Used for cross-validation.
inline Complex ftIndicatorQuadrature(const geo::ConvexBody& body, const Vec2& xi,
                                     double relTarget = 1e-8, int maxDoublings = 7) {
    const double rho = xi.norm();
    if (rho == 0.0) return {body.area(), 0.0};
    if (body.variant == geo::BodyVariant::Polygon) return ftPolygon(body.vertices, xi);

    // flux form: hat{1}_C(xi) = -1/(2 pi i |xi|^2) * loop integral of
    // e^{-2 pi i x.xi} (xi . n) ds, parametrized by the tangent angle
    auto integrand = [&](double phi) -> Complex {
        const auto bs = body.gammaAt(normalizeAngle(phi));
        const Vec2 n{std::sin(bs.tangentAngle), -std::cos(bs.tangentAngle)};  // outward normal
        const double fluxDot = n.x * xi.x + n.y * xi.y;
        const double phase = -2.0 * M_PI * (bs.point.x * xi.x + bs.point.y * xi.y);
        return std::exp(Complex(0.0, phase)) * (fluxDot / bs.curvature);
    };
    // segment the angle range at piece junctions (the integrand has kinks
    // there and at the flat point), uniform panels within each segment
    std::vector<double> seams = {0.0, 2.0 * M_PI};
    if (body.curve) {
        std::vector<double> bounds = {0.0, M_PI / 2, body.curve->arc.phiLo};
        for (const auto& pc : body.curve->pieces) bounds.push_back(pc.phiLo);
        for (double b : bounds)
            for (double image : {b, M_PI - b, M_PI + b, 2.0 * M_PI - b}) {
                const double a = normalizeAngle(image);
                if (a > 1e-12 && a < 2.0 * M_PI - 1e-12) seams.push_back(a);
            }
        std::sort(seams.begin(), seams.end());
        seams.erase(std::unique(seams.begin(), seams.end(),
                                [](double a, double b) { return b - a < 1e-12; }),
                    seams.end());
    }
    const double perim = body.perimeter();
    int panels = static_cast<int>(std::ceil(4.0 * rho * perim)) + 8;
    auto evaluate = [&](int nPanels) {
        Complex s(0.0, 0.0);
        const GaussRule& r = gaussRule(8);
        for (size_t seg = 0; seg + 1 < seams.size(); ++seg) {
            const double lo = seams[seg], hi = seams[seg + 1];
            const int np = std::max(1, static_cast<int>(std::ceil(nPanels * (hi - lo) / (2.0 * M_PI))));
            const double h = (hi - lo) / np;
            for (int p = 0; p < np; ++p) {
                const double c = lo + (p + 0.5) * h;
                Complex acc(0.0, 0.0);
                for (int q = 0; q < 8; ++q) acc += r.weights[q] * integrand(c + 0.5 * h * r.nodes[q]);
                s += acc * (0.5 * h);
            }
        }
        return s;
    };
    Complex prev = evaluate(panels);
    for (int d = 0; d < maxDoublings; ++d) {
        panels *= 2;
        const Complex cur = evaluate(panels);
        const double err = std::abs(cur - prev);
        if (err <= relTarget * std::max(std::abs(cur), 1e-14 * body.area())) {
            return cur / Complex(0.0, -2.0 * M_PI * rho * rho);
        }
        prev = cur;
    }
    throw AccuracyError("ftIndicatorQuadrature: refinement budget exhausted",
                        std::abs(prev) / std::max(1e-300, rho * rho));
}

}  // namespace disclab::fourier
