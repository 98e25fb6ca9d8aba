#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "disclab/geometry/body.hpp"
#include "disclab/util/quadrature.hpp"
#include "disclab/util/rootfind.hpp"

namespace disclab::geo {

struct ChordQuery {
    double theta = 0.0;
    double lambda = 0.0;
};

struct ChordEndpoints {
    double phi1 = 0.0, phi2 = 0.0;  // boundary tangent angles of the two ends
    Vec2 e1{}, e2{};
    double length = 0.0;
};

namespace detail {

/// Chord endpoints of a curve-backed (or disk) body at depth lambda from the
/// supporting line with inner normal u(theta). Two monotone root solves on
/// the Gauss-map parametrization.
inline ChordEndpoints chordEndpointsCurve(const ConvexBody& body, double theta, double lambda) {
    const Vec2 u = dir(theta);
    const double hOpp = body.support(theta + M_PI);
    const double v = -hOpp + lambda;
    const double phiB = theta + 1.5 * M_PI;  // tangent angle at the bottom point
    auto g = [&](double phi) { return body.gammaAt(normalizeAngle(phi)).point.dot(u) - v; };
    const double eps = 1e-9;
    ChordEndpoints ce;
    // ascending side: phi in (phiB, phiB + pi), g increasing
    {
        const double lo = phiB + eps, hi = phiB + M_PI - eps;
        const double glo = g(lo), ghi = g(hi);
        double phi;
        if (glo >= 0.0) phi = phiB;
        else if (ghi <= 0.0) phi = phiB + M_PI;
        else phi = brent(g, lo, hi, glo, ghi, 1e-14);
        ce.phi1 = normalizeAngle(phi);
        ce.e1 = body.gammaAt(ce.phi1).point;
    }
    // descending side: phi in (phiB - pi, phiB), g decreasing
    {
        const double lo = phiB - M_PI + eps, hi = phiB - eps;
        const double glo = g(lo), ghi = g(hi);
        double phi;
        if (ghi >= 0.0) phi = phiB;
        else if (glo <= 0.0) phi = phiB - M_PI;
        else phi = brent(g, lo, hi, glo, ghi, 1e-14);
        ce.phi2 = normalizeAngle(phi);
        ce.e2 = body.gammaAt(ce.phi2).point;
    }
    ce.length = std::fabs((ce.e1 - ce.e2).dot(u.perp()));
    return ce;
}

}  // namespace detail

/// Length of the chord K_C(theta, lambda).
inline double chord(const ConvexBody& body, double theta, double lambda) {
    const double w = body.width(theta);
    if (lambda < -1e-12 || lambda > w * (1.0 + 1e-9) + 1e-12)
        throw std::domain_error("chord: lambda outside [0, width]");
    lambda = std::clamp(lambda, 0.0, w);
    switch (body.variant) {
        case BodyVariant::Disk: {
            const double r = body.radius;
            return 2.0 * std::sqrt(std::max(0.0, lambda * (2.0 * r - lambda)));
        }
        case BodyVariant::Polygon: {
            const Vec2 u = dir(theta);
            const double v = -body.support(theta + M_PI) + lambda;
            // clip the line {x . u = v} against the edge halfplanes
            const Vec2 p0 = u * v;
            const Vec2 d = u.perp();
            double tLo = -1e18, tHi = 1e18;
            for (size_t i = 0; i < body.vertices.size(); ++i) {
                const Vec2& a = body.vertices[i];
                const Vec2& b = body.vertices[(i + 1) % body.vertices.size()];
                const Vec2 e = b - a;
                // inside: e x (x - a) >= 0
                const double denom = e.cross(d);
                const double num = e.cross(p0 - a);
                if (std::fabs(denom) <= 1e-14 * e.norm()) {
                    // line parallel to the edge; reject only if clearly outside
                    if (num < -1e-12 * e.norm() * (1.0 + p0.norm())) return 0.0;
                    continue;
                }
                const double t = -num / denom;
                if (denom > 0) tLo = std::max(tLo, t);
                else tHi = std::min(tHi, t);
            }
            return std::max(0.0, tHi - tLo);
        }
        default: {
            if (lambda <= 0.0 || lambda >= w) return 0.0;  // strictly convex
            return detail::chordEndpointsCurve(body, theta, lambda).length;
        }
    }
}

inline double chord(const ConvexBody& body, const ChordQuery& q) { return chord(body, q.theta, q.lambda); }

/// gamma_C(theta, lambda) = max(|K(theta, lambda)|, |K(theta + pi, lambda)|).
inline double gamma(const ConvexBody& body, double theta, double lambda) {
    return std::max(chord(body, theta, lambda), chord(body, theta + M_PI, lambda));
}

struct SemiChords {
    double plus = 0.0, minus = 0.0;
    double total() const { return plus + minus; }
};

/// Semi-chords via the intrinsic (curvature) route: with the substitution
/// t <-> phi along the boundary,
///   lambda    = int sin(phi - phiB) / kappa(phi) dphi,
///   semichord = int cos(phi - phiB) / kappa(phi) dphi,
/// inverted monotonically in the sweep angle. Valid while the endpoints stay
/// on the constructed curve portion (checked for glued/monomial bodies).
inline SemiChords chordViaCurvature(const ConvexBody& body, double theta, double lambda) {
    if (body.variant == BodyVariant::Polygon)
        throw std::domain_error("chordViaCurvature: needs a curvature-backed body");
    if (lambda < 0.0) throw std::domain_error("chordViaCurvature: lambda must be >= 0");
    if (lambda == 0.0) return {};
    const double phiB = theta + 1.5 * M_PI;

    // sweep-angle breakpoints where the integrand crosses piece junctions
    // (the curvature derivative jumps there)
    auto junctionBreaks = [&](double sign, double psiMax) {
        std::vector<double> out;
        if (body.variant == BodyVariant::Disk) return out;
        std::vector<double> bounds;
        for (const auto& pc : body.curve->pieces) bounds.push_back(pc.phiLo);
        bounds.push_back(body.curve->arc.phiLo);
        bounds.push_back(M_PI / 2);
        for (double b : bounds)
            for (double image : {b, M_PI - b, M_PI + b, 2.0 * M_PI - b}) {
                for (int k = -2; k <= 2; ++k) {
                    const double t = sign * (image + 2.0 * M_PI * k - phiB);
                    if (t > 1e-15 && t < psiMax - 1e-15) out.push_back(t);
                }
            }
        std::sort(out.begin(), out.end());
        return out;
    };
    auto sweepIntegral = [&](double psi, double sign, bool depth) {
        auto f = [&](double t) {
            const double trig = depth ? std::sin(t) : std::cos(t);
            return trig / body.gammaAt(normalizeAngle(phiB + sign * t)).curvature;
        };
        std::vector<double> cuts = junctionBreaks(sign, psi);
        cuts.insert(cuts.begin(), 0.0);
        cuts.push_back(psi);
        double s = 0.0;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i], b = cuts[i + 1];
            if (b - a < 1e-300) continue;
            s += compositeGauss(f, a, b, std::max(1, static_cast<int>((b - a) * 8)) , 16);
        }
        return s;
    };
    auto depthIntegral = [&](double psi, double sign) { return sweepIntegral(psi, sign, true); };
    auto widthIntegral = [&](double psi, double sign) { return sweepIntegral(psi, sign, false); };

    SemiChords out;
    for (double sign : {+1.0, -1.0}) {
        auto f = [&](double psi) { return depthIntegral(psi, sign) - lambda; };
        double hi = 0.02;
        while (hi < M_PI - 1e-9 && f(hi) < 0.0) hi = std::min(M_PI - 1e-9, hi * 2.0);
        if (f(hi) < 0.0) throw std::domain_error("chordViaCurvature: depth outside the curvature window");
        const double psi = brent(f, 0.0, hi, 1e-13);
        const double semi = widthIntegral(psi, sign);
        if (sign > 0) out.plus = semi; else out.minus = semi;
        if (body.variant != BodyVariant::Disk) {
            // endpoint must stay on the monomial portion of the boundary
            const double phiEnd = normalizeAngle(phiB + sign * psi);
            double q = phiEnd;
            if (q > 1.5 * M_PI) q = 2.0 * M_PI - q;
            else if (q > M_PI) q = q - M_PI;
            else if (q > 0.5 * M_PI) q = M_PI - q;
            if (q >= body.curve->arc.phiLo)
                throw std::domain_error("chordViaCurvature: endpoint leaves the curve portion; use chord()");
        }
    }
    return out;
}

struct MonotonicityReport {
    double maxRatio = 0.0;
    size_t violations = 0;
    std::vector<std::array<double, 3>> witnesses;  // (theta1, theta2, lambda)
};

/// Factor-2 chord comparison: |K(theta1, lambda)| <= 2 |K(theta2, lambda)|
/// for all grid pairs theta1 < theta2.
inline MonotonicityReport checkChordMonotonicity(const ConvexBody& body,
                                                 const std::vector<double>& thetas,
                                                 const std::vector<double>& lambdas) {
    MonotonicityReport rep;
    for (double lam : lambdas) {
        std::vector<double> lens(thetas.size());
        for (size_t i = 0; i < thetas.size(); ++i) lens[i] = chord(body, thetas[i], lam);
        for (size_t i = 0; i < thetas.size(); ++i)
            for (size_t j = i + 1; j < thetas.size(); ++j) {
                if (lens[j] <= 0.0) continue;
                const double ratio = lens[i] / lens[j];
                rep.maxRatio = std::max(rep.maxRatio, ratio);
                if (ratio > 2.0) {
                    ++rep.violations;
                    if (rep.witnesses.size() < 16) rep.witnesses.push_back({thetas[i], thetas[j], lam});
                }
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Window estimation: the paper asserts the existence of window constants
// without values; they are estimated by scanning until the defining
// condition first fails and shrinking by a safety factor 2.

namespace detail {

/// Both chord endpoints on the monomial portion, with the endpoint tangent
/// rise bounded by 1/10 relative to the chord direction.
inline bool tec1ConditionHolds(const ConvexBody& body, double theta, double lambda) {
    const auto ce = chordEndpointsCurve(body, theta, lambda);
    const double arcPhi = body.curve->arc.phiLo;
    for (double phi : {ce.phi1, ce.phi2}) {
        double q = phi;
        if (q > 1.5 * M_PI) q = 2.0 * M_PI - q;
        else if (q > M_PI) q -= M_PI;
        else if (q > 0.5 * M_PI) q = M_PI - q;
        if (q >= arcPhi * 0.999) return false;
        if (std::fabs(std::sin(phi)) > 0.1) return false;
    }
    return true;
}

}  // namespace detail

/// Estimate (theta0, lambda0) for the factor-2 chord comparison window and
/// store them in the body metadata. theta0 > pi/2; lambda in [0, lambda0).
inline std::pair<double, double> estimateTec1Window(const ConvexBody& body) {
    if (body.variant != BodyVariant::Glued && body.variant != BodyVariant::MonomialGraph)
        throw std::domain_error("estimateTec1Window: needs a glued or monomial body");
    if (auto t0 = body.getWindow("tec1_theta0")) return {*t0, *body.getWindow("tec1_lambda0")};

    const double probeLambda = 1e-9;
    double tLo = 0.0, tHi = 0.5;
    while (tHi > 1e-4 && !detail::tec1ConditionHolds(body, M_PI / 2 + tHi, probeLambda)) tHi *= 0.5;
    if (tHi <= 1e-4) tHi = 1e-4;
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (tLo + tHi);
        if (detail::tec1ConditionHolds(body, M_PI / 2 + mid, probeLambda)) tLo = mid; else tHi = mid;
    }
    const double theta0 = M_PI / 2 + 0.5 * tLo;  // safety factor 2

    auto okAt = [&](double lam) {
        for (int i = 0; i <= 8; ++i) {
            const double th = M_PI / 2 + (theta0 - M_PI / 2) * i / 8.0;
            if (!detail::tec1ConditionHolds(body, th, lam)) return false;
        }
        return true;
    };
    double lam = body.width(M_PI / 2) / 4.0;
    while (lam > 1e-14 && !okAt(lam)) lam *= 0.5;
    const double lambda0 = 0.5 * lam;

    body.setWindow("tec1_theta0", theta0);
    body.setWindow("tec1_lambda0", lambda0);
    return {theta0, lambda0};
}

/// Estimate the Prop-Aux window (c, lambda_tilde) for chords around the
/// flat-normal direction of a monomial-type body.
inline std::pair<double, double> estimateAuxWindow(const ConvexBody& body) {
    if (body.variant != BodyVariant::Glued && body.variant != BodyVariant::MonomialGraph)
        throw std::domain_error("estimateAuxWindow: needs a glued or monomial body");
    if (auto c = body.getWindow("aux_c")) return {*c, *body.getWindow("aux_lambda")};

    auto endpointsOnCurve = [&](double theta, double lam) {
        const auto ce = detail::chordEndpointsCurve(body, theta, lam);
        const double arcPhi = body.curve->arc.phiLo;
        for (double phi : {ce.phi1, ce.phi2}) {
            double q = phi;
            if (q > 1.5 * M_PI) q = 2.0 * M_PI - q;
            else if (q > M_PI) q -= M_PI;
            else if (q > 0.5 * M_PI) q = M_PI - q;
            if (q >= arcPhi * 0.999) return false;
        }
        return true;
    };
    const double probeLambda = 1e-9;
    double cHi = 0.8;
    while (cHi > 1e-3 && !endpointsOnCurve(M_PI / 2 + cHi, probeLambda)) cHi *= 0.5;
    double cLo = 0.0;
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (cLo + cHi);
        if (endpointsOnCurve(M_PI / 2 + mid, probeLambda)) cLo = mid; else cHi = mid;
    }
    const double c = 0.5 * cLo;
    auto okAt = [&](double lam) {
        for (int i = -4; i <= 4; ++i)
            if (!endpointsOnCurve(M_PI / 2 + c * i / 4.0, lam)) return false;
        return true;
    };
    double lam = body.width(M_PI / 2) / 4.0;
    while (lam > 1e-14 && !okAt(lam)) lam *= 0.5;
    const double lambdaTilde = 0.5 * lam;
    body.setWindow("aux_c", c);
    body.setWindow("aux_lambda", lambdaTilde);
    return {c, lambdaTilde};
}

// ---------------------------------------------------------------------------

struct ClosureDiagnostics {
    double totalTurning = 0.0;       // integral of kappa ds around the boundary
    double closureGap = 0.0;         // | integral of Gamma'(s) ds |
    double maxCurvatureJump = 0.0;   // relative, across junctions
    double maxTangentJump = 0.0;     // radians, across junctions
    double minSupportSum = 0.0;      // min over grid of support(t)+support(t+pi)
};

/// Independent re-measurement of the closed boundary: curvature integrated
/// against the arclength element, tangent displacement integrated around the
/// loop, and junction continuity evaluated from both adjacent
/// parametrizations.
inline ClosureDiagnostics closureDiagnostics(const ConvexBody& body) {
    if (!body.curve) throw std::domain_error("closureDiagnostics: needs a curve-backed body");
    const CurveData& cd = *body.curve;
    ClosureDiagnostics d;

    // per-piece integration; pieces starting at x = 0 carry an integrable
    // x^(beta-2) curvature singularity, handled by dyadic grading
    auto integratePiece = [](const QuarterMonomialPiece& pc, auto&& f) {
        if (pc.xLo > 0.0)
            return adaptiveCompositeGauss(f, pc.xLo, pc.xHi, 8, 1e-12, 10, 12).first;
        double s = 0.0;
        const int kmax = std::min(2000, static_cast<int>(std::ceil(44.0 / (pc.beta - 1.0))));
        double hi = pc.xHi;
        for (int k = 0; k < kmax; ++k) {
            const double lo = hi * 0.5;
            s += gauss(f, lo, hi, 12);
            hi = lo;
        }
        return s;
    };

    double quarterTurn = 0.0;
    Vec2 quarterDisp{};
    for (const auto& pc : cd.pieces) {
        quarterTurn += integratePiece(pc, [&](double x) {
            return pc.curvature(std::max(x, 1e-300)) * pc.speed(x);
        });
        quarterDisp += Vec2{
            integratePiece(pc, [&](double x) { return std::cos(pc.tangentAngle(x)) * pc.speed(x); }),
            integratePiece(pc, [&](double x) { return std::sin(pc.tangentAngle(x)) * pc.speed(x); })};
    }
    quarterTurn += (cd.arc.phiHi - cd.arc.phiLo);  // arc: kappa * ds = dphi exactly
    quarterDisp += Vec2{
        gauss([&](double phi) { return std::cos(phi) * cd.arc.radius; }, cd.arc.phiLo, cd.arc.phiHi, 48),
        gauss([&](double phi) { return std::sin(phi) * cd.arc.radius; }, cd.arc.phiLo, cd.arc.phiHi, 48)};
    d.totalTurning = 4.0 * quarterTurn;

    // loop closure: the integrated tangent displacement over the quarter must
    // land on the junction point A; the remaining quarters are symmetric
    // images whose seam gaps repeat this one (factor 4).
    const Vec2 seamStart = body.gammaAt(0.0).point;                // bottom point
    const Vec2 quarterEnd = body.gammaAt(M_PI / 2 - 1e-15).point;  // junction A
    d.closureGap = 4.0 * ((seamStart + quarterDisp) - quarterEnd).norm();

    // junction continuity, both parametrizations
    auto qa = [&](const QuarterMonomialPiece& pc, double x) {
        return std::pair<double, double>{pc.tangentAngle(x), pc.curvature(std::max(x, 1e-300))};
    };
    for (size_t i = 0; i + 1 < cd.pieces.size(); ++i) {
        auto [t1, k1] = qa(cd.pieces[i], cd.pieces[i].xHi);
        auto [t2, k2] = qa(cd.pieces[i + 1], cd.pieces[i + 1].xLo);
        d.maxTangentJump = std::max(d.maxTangentJump, std::fabs(t1 - t2));
        d.maxCurvatureJump = std::max(d.maxCurvatureJump, std::fabs(k1 - k2) / std::max(k1, k2));
    }
    {
        const auto& last = cd.pieces.back();
        auto [t1, k1] = qa(last, last.xHi);
        d.maxTangentJump = std::max(d.maxTangentJump, std::fabs(t1 - cd.arc.phiLo));
        const double kArc = 1.0 / cd.arc.radius;
        d.maxCurvatureJump = std::max(d.maxCurvatureJump, std::fabs(k1 - kArc) / std::max(k1, kArc));
    }
    // mirror seam at the bottom point: tangent must be horizontal
    d.maxTangentJump = std::max(d.maxTangentJump, std::fabs(cd.pieces.front().tangentAngle(cd.pieces.front().xLo)));

    double minSum = 1e300;
    for (int i = 0; i < 720; ++i) {
        const double th = 2.0 * M_PI * i / 720;
        minSum = std::min(minSum, body.width(th));
    }
    d.minSupportSum = minSum;
    return d;
}

}  // namespace disclab::geo
