#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "disclab/geometry/monomial.hpp"
#include "disclab/util/quadrature.hpp"
#include "disclab/util/vec2.hpp"

namespace disclab::geo {

struct GluingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One monomial graph piece y = x^beta on [a, b], placed by a rigid motion.
/// Curvature runs from kappaAtA (= high end) down to kappaAtB.
struct MonomialSegment {
    double beta = 0.0;
    double a = 0.0, b = 0.0;
    double kappaAtA = 0.0, kappaAtB = 0.0;
    RigidMotion motion;  // local (x, x^beta) -> assembled frame

    double localTangentAngle(double x) const { return std::atan(beta * std::pow(x, beta - 1.0)); }
    Vec2 localPoint(double x) const { return {x, std::pow(x, beta)}; }
    Vec2 point(double x) const { return motion.apply(localPoint(x)); }
    double tangentAngle(double x) const { return localTangentAngle(x) + motion.angle; }
    double curvature(double x) const { return monomialCurvature(beta, x); }
    double speed(double x) const {
        const double m = beta * std::pow(x, beta - 1.0);
        return std::sqrt(1.0 + m * m);
    }
};

/// Arc-length-parametrized C^2 chain of monomial segments, traversed from
/// the high-curvature endpoint (placed at the origin, tangent along +x)
/// outward, with curvature strictly decreasing along the way.
struct BoundaryCurve {
    std::vector<MonomialSegment> segments;  // traversal order (deep -> shallow)
    std::vector<double> sOffset;            // arclength at the start of each segment
    std::vector<double> phiOffset;          // tangent angle at the start of each segment
    double totalTurning = 0.0;
    double totalLength = 0.0;

    struct Sample {
        Vec2 point;
        double tangentAngle;
        double curvature;
    };

    /// Per-segment arclength from a to x.
    static double segmentArclength(const MonomialSegment& seg, double x) {
        if (x <= seg.a) return 0.0;
        auto [v, err] = adaptiveCompositeGauss([&](double t) { return seg.speed(t); }, seg.a, x, 4, 1e-13, 10, 12);
        (void)err;
        return v;
    }

    size_t locateByArclength(double s) const {
        size_t i = 0;
        while (i + 1 < segments.size() && s >= sOffset[i + 1]) ++i;
        return i;
    }

    Sample sample(double s) const {
        if (s < 0.0 || s > totalLength * (1.0 + 1e-12))
            throw std::domain_error("BoundaryCurve::sample: s out of range");
        s = std::min(s, totalLength);
        const size_t i = locateByArclength(s);
        const MonomialSegment& seg = segments[i];
        const double target = s - sOffset[i];
        // invert the per-segment arclength (monotone in x)
        double x;
        if (target <= 0.0) {
            x = seg.a;
        } else if (target >= segmentArclength(seg, seg.b)) {
            x = seg.b;
        } else {
            auto f = [&](double t) { return segmentArclength(seg, t) - target; };
            x = bisectNewton(f, [&](double t) { return seg.speed(t); }, seg.a, seg.b, 1e-14 * seg.b);
        }
        return {seg.point(x), seg.tangentAngle(x), seg.curvature(x)};
    }

    double curvatureAt(double s) const { return sample(s).curvature; }
};

/// Assemble the C^2 glued chain: segment i is the graph piece of x^beta_i on
/// [a_i, b_i] with kappa(a_i) = ks[i] and kappa(b_i) = ks[i-1] (ks[-1] = k0),
/// each placed tangentially against the previous segment's high-curvature
/// end. The result is traversed from the innermost (highest-curvature) end,
/// placed at the origin with horizontal tangent.
inline BoundaryCurve buildGluedCurve(const std::vector<double>& betas, const std::vector<double>& ks,
                                     double k0 = 10.0) {
    if (betas.empty() || betas.size() != ks.size())
        throw std::invalid_argument("buildGluedCurve: need len(betas) == len(ks) >= 1");
    for (size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] < k0) throw std::invalid_argument("buildGluedCurve: ks must be >= k0");
        if (i > 0 && ks[i] <= ks[i - 1]) throw std::invalid_argument("buildGluedCurve: ks must be strictly increasing");
    }

    const size_t n = betas.size();
    std::vector<MonomialSegment> segs(n);  // in paper order (outer -> inner)
    for (size_t i = 0; i < n; ++i) {
        const double kHigh = ks[i];
        const double kLow = (i == 0) ? k0 : ks[i - 1];
        MonomialSegment& s = segs[i];
        s.beta = betas[i];
        s.a = solveCurvatureLevel(betas[i], kHigh);
        s.b = solveCurvatureLevel(betas[i], kLow);
        s.kappaAtA = kHigh;
        s.kappaAtB = kLow;
        if (!(s.a < s.b))
            throw GluingError("buildGluedCurve: degenerate segment (a >= b); curvature levels too close");
    }

    BoundaryCurve curve;
    curve.segments.reserve(n);
    Vec2 cursor{0.0, 0.0};
    double angle = 0.0;  // accumulated tangent angle at the cursor
    // traversal order: innermost (largest curvature) first
    for (size_t t = 0; t < n; ++t) {
        MonomialSegment seg = segs[n - 1 - t];
        const double psiA = seg.localTangentAngle(seg.a);
        seg.motion.angle = angle - psiA;
        const Vec2 pa = seg.localPoint(seg.a);
        seg.motion.shift = cursor - seg.motion.applyVector(pa);
        curve.phiOffset.push_back(angle);
        curve.sOffset.push_back(curve.totalLength);
        cursor = seg.point(seg.b);
        angle += seg.localTangentAngle(seg.b) - psiA;
        curve.totalLength += BoundaryCurve::segmentArclength(seg, seg.b);
        curve.segments.push_back(seg);
    }
    curve.totalTurning = angle;
    return curve;
}

}  // namespace disclab::geo
