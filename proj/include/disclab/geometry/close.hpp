#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "disclab/geometry/body.hpp"
#include "disclab/geometry/curve.hpp"
#include "disclab/util/quadrature.hpp"

namespace disclab::geo {

namespace detail {

/// Raw (unscaled, uncentered) description of the lower-right quarter before
/// closure bookkeeping: monomial pieces + the end state where the arc starts.
struct RawQuarter {
    struct Piece {
        double beta;
        double xLo, xHi;
        RigidMotion motion;
    };
    std::vector<Piece> pieces;
    double endTangent = 0.0;   // tangent angle at the end of the curve portion
    Vec2 endPoint{};
    double endCurvature = 0.0; // curvature there; the closing arc matches it
};

inline void adaptiveHermiteKnots(const QuarterMonomialPiece& pc, std::vector<double>& xs,
                                 std::vector<double>& ys, std::vector<double>& ms) {
    // recursively subdivide in local x until the cubic Hermite interpolant
    // reproduces the midpoint to 1e-12 (absolute, final frame)
    struct Frame {
        double x0, x1;
        int depth;
    };
    auto emit = [&](double xloc) {
        const Vec2 p = pc.point(xloc);
        const double slope = std::tan(pc.tangentAngle(xloc));
        if (!xs.empty() && p.x <= xs.back()) return;  // guard strict monotonicity
        xs.push_back(p.x);
        ys.push_back(p.y);
        ms.push_back(slope);
    };
    std::function<void(double, double, int)> rec = [&](double x0, double x1, int depth) {
        const Vec2 p0 = pc.point(x0), p1 = pc.point(x1);
        const double m0 = std::tan(pc.tangentAngle(x0)), m1 = std::tan(pc.tangentAngle(x1));
        const double xm = 0.5 * (x0 + x1);
        const Vec2 pm = pc.point(xm);
        // Hermite prediction at pm.x
        const double h = p1.x - p0.x;
        if (h > 0) {
            const double t = (pm.x - p0.x) / h;
            const double t2 = t * t, t3 = t2 * t;
            const double pred = (2 * t3 - 3 * t2 + 1) * p0.y + (t3 - 2 * t2 + t) * h * m0 +
                                (-2 * t3 + 3 * t2) * p1.y + (t3 - t2) * h * m1;
            if (depth >= 46 || std::fabs(pred - pm.y) < 1e-12) {
                emit(x0);
                return;
            }
        }
        rec(x0, xm, depth + 1);
        rec(xm, x1, depth + 1);
    };
    rec(pc.xLo, pc.xHi, 0);
    emit(pc.xHi);
}

inline std::shared_ptr<CurveData> assembleClosedQuarter(const RawQuarter& raw,
                                                        std::vector<double> betas,
                                                        std::vector<double> ks, double k0) {
    if (!(raw.endCurvature > 0.0))
        throw std::runtime_error("close_body: nonpositive end curvature (internal error)");
    const double delta = raw.endTangent;
    if (!(delta < M_PI / 2))
        throw GluingError("close_body: curve turning exceeds pi/2; arcs cannot close the half-boundary");

    const double r = 1.0 / raw.endCurvature;
    const Vec2 inward{-std::sin(delta), std::cos(delta)};
    const Vec2 center = raw.endPoint + r * inward;
    const Vec2 junction = center + Vec2{r, 0.0};
    const Vec2 M{0.0, junction.y};  // raw symmetry center

    auto build = [&](double scale) {
        auto cd = std::make_shared<CurveData>();
        cd->betas = betas;
        cd->ks = ks;
        cd->k0 = k0;
        cd->scale = scale;
        cd->rawCenter = M;
        for (const auto& rp : raw.pieces) {
            QuarterMonomialPiece pc;
            pc.beta = rp.beta;
            pc.xLo = rp.xLo;
            pc.xHi = rp.xHi;
            pc.rot = rp.motion.angle;
            pc.shift = scale * (rp.motion.shift - M);
            pc.scale = scale;
            pc.phiLo = pc.tangentAngle(rp.xLo);
            pc.phiHi = pc.tangentAngle(rp.xHi);
            cd->pieces.push_back(pc);
        }
        cd->arc.center = scale * (center - M);
        cd->arc.radius = scale * r;
        cd->arc.phiLo = delta;
        cd->arc.phiHi = M_PI / 2;
        cd->xA = scale * (junction - M).x;
        cd->arcStartX = scale * (raw.endPoint - M).x;
        // arclength offsets
        double s = 0.0;
        for (auto& pc : cd->pieces) {
            pc.sLo = s;
            s += pc.arclengthFrom(pc.xLo, pc.xHi);
            pc.sHi = s;
        }
        cd->arc.sLo = s;
        cd->arc.sHi = s + cd->arc.radius * (cd->arc.phiHi - cd->arc.phiLo);
        cd->quarterLength = cd->arc.sHi;
        return cd;
    };

    // first pass: measure the raw diameter, then rebuild in the unit frame
    auto raw1 = build(1.0);
    double best = 0.0;
    {
        // diameter of a centrally symmetric body = 2 max |Gamma|
        auto radius2 = [&](double phi) {
            Vec2 p;
            if (phi >= raw1->arc.phiLo) p = raw1->arc.point(phi);
            else {
                size_t i = 0;
                while (i + 1 < raw1->pieces.size() && phi >= raw1->pieces[i + 1].phiLo) ++i;
                const auto& pc = raw1->pieces[i];
                p = pc.point(std::clamp(pc.xFromTangent(phi), pc.xLo, pc.xHi));
            }
            return p.norm2();
        };
        const int n = 1024;
        double bestPhi = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double phi = (M_PI / 2) * i / n;
            const double v = radius2(phi);
            if (v > best) { best = v; bestPhi = phi; }
        }
        // golden-section polish around the best grid point
        double a = std::max(0.0, bestPhi - M_PI / n), b = std::min(M_PI / 2, bestPhi + M_PI / n);
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - g * (b - a), x2 = a + g * (b - a);
        double f1 = radius2(x1), f2 = radius2(x2);
        for (int it = 0; it < 80; ++it) {
            if (f1 < f2) { a = x1; x1 = x2; f1 = f2; x2 = a + g * (b - a); f2 = radius2(x2); }
            else { b = x2; x2 = x1; f2 = f1; x1 = b - g * (b - a); f1 = radius2(x1); }
        }
        best = std::max(radius2(0.5 * (a + b)), best);
    }
    const double rawDiam = 2.0 * std::sqrt(best);
    auto cd = build(1.0 / rawDiam);
    cd->rawDiameter = rawDiam;
    cd->diameter = 1.0;

    // lower-boundary interpolant over the monomial portion
    for (const auto& pc : cd->pieces) adaptiveHermiteKnots(pc, cd->fx, cd->fy, cd->fm);
    if (cd->fx.empty() || cd->fx.back() < cd->arcStartX) {
        // ensure the knot chain reaches the arc junction
        const auto& last = cd->pieces.back();
        const Vec2 p = last.point(last.xHi);
        if (cd->fx.empty() || p.x > cd->fx.back()) {
            cd->fx.push_back(p.x);
            cd->fy.push_back(p.y);
            cd->fm.push_back(std::tan(last.tangentAngle(last.xHi)));
        }
    }

    // area = -4 * integral of the lower boundary over [0, xA]
    double integral = 0.0;
    for (const auto& pc : cd->pieces) {
        integral += adaptiveCompositeGauss([&](double x) {
            const Vec2 p = pc.point(x);
            const double c = std::cos(pc.rot), s = std::sin(pc.rot);
            const double dxdx = pc.scale * (c - s * pc.beta * std::pow(x, pc.beta - 1.0));
            return p.y * dxdx;
        }, pc.xLo, pc.xHi, 8, 1e-13, 12, 12).first;
    }
    integral += adaptiveCompositeGauss([&](double phi) {
        const Vec2 p = cd->arc.point(phi);
        return p.y * cd->arc.radius * std::cos(phi);
    }, cd->arc.phiLo, cd->arc.phiHi, 4, 1e-13, 12, 12).first;
    cd->area = -4.0 * integral;
    if (!(cd->area > 0.0)) throw std::runtime_error("close_body: nonpositive area (internal error)");
    return cd;
}

}  // namespace detail

/// Close a glued boundary curve into a C^2 centrally symmetric convex body:
/// mirror across the vertical axis through the high-curvature endpoint,
/// attach circular arcs of radius 1/k0 at the outer ends (arc turnings make
/// the lower-half turning exactly pi), complete by point reflection, and
/// scale uniformly so the diameter is 1.
inline ConvexBody closeBody(const BoundaryCurve& bc) {
    detail::RawQuarter raw;
    for (const auto& seg : bc.segments)
        raw.pieces.push_back({seg.beta, seg.a, seg.b, seg.motion});
    const auto& last = bc.segments.back();
    raw.endTangent = bc.totalTurning;
    raw.endPoint = last.point(last.b);
    raw.endCurvature = last.kappaAtB;

    std::vector<double> betas, ks;
    for (auto it = bc.segments.rbegin(); it != bc.segments.rend(); ++it) {
        betas.push_back(it->beta);
        ks.push_back(it->kappaAtA);
    }
    const double k0 = bc.segments.back().kappaAtB;

    ConvexBody b;
    b.variant = BodyVariant::Glued;
    b.curve = detail::assembleClosedQuarter(raw, betas, ks, k0);
    b.centralSymmetry = b.axisSymmetry = true;
    b.finalize(b.curve->area, b.curve->diameter);
    return b;
}

inline ConvexBody gluedBody(const std::vector<double>& betas, const std::vector<double>& ks,
                            double k0 = 10.0) {
    return closeBody(buildGluedCurve(betas, ks, k0));
}

/// The body A(beta): boundary coincides with the graph of |x|^beta on [-1, 1],
/// closed by matched circular arcs of radius (1+beta^2)^(3/2) / (beta(beta-1)),
/// centrally symmetric, y-axis symmetric, scaled to diameter 1.
inline ConvexBody monomialBody(double beta) {
    if (beta <= 1.0 || beta >= 2.0) throw std::invalid_argument("monomialBody: beta must be in (1, 2)");
    detail::RawQuarter raw;
    raw.pieces.push_back({beta, 0.0, 1.0, RigidMotion{}});
    raw.endTangent = std::atan(beta);
    raw.endPoint = {1.0, 1.0};
    raw.endCurvature = monomialCurvature(beta, 1.0);

    ConvexBody b;
    b.variant = BodyVariant::MonomialGraph;
    b.curve = detail::assembleClosedQuarter(raw, {beta}, {}, raw.endCurvature);
    b.centralSymmetry = b.axisSymmetry = true;
    b.finalize(b.curve->area, b.curve->diameter);
    return b;
}

inline ConvexBody ConvexBody_fromJsonImpl(const json& j) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "disk") return ConvexBody::disk(j.at("radius").get<double>());
    if (v == "polygon") {
        std::vector<Vec2> verts;
        for (const auto& p : j.at("vertices")) verts.push_back({p[0].get<double>(), p[1].get<double>()});
        return ConvexBody::polygon(std::move(verts));
    }
    if (v == "monomial") {
        const auto betas = j.at("betas").get<std::vector<double>>();
        return monomialBody(betas.at(0));
    }
    if (v == "glued") {
        return gluedBody(j.at("betas").get<std::vector<double>>(), j.at("ks").get<std::vector<double>>(),
                         j.value("k0", 10.0));
    }
    throw std::invalid_argument("ConvexBody::fromJson: unknown variant " + v);
}

inline ConvexBody ConvexBody::fromJson(const json& j) {
    ConvexBody b = ConvexBody_fromJsonImpl(j);
    if (j.contains("fingerprint") && j["fingerprint"].get<std::string>() != b.fingerprint())
        throw std::runtime_error("ConvexBody::fromJson: fingerprint mismatch");
    if (j.contains("windows"))
        for (auto it = j["windows"].begin(); it != j["windows"].end(); ++it)
            b.setWindow(it.key(), it.value().get<double>());
    return b;
}

}  // namespace disclab::geo
