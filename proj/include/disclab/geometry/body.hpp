#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "disclab/geometry/curve.hpp"
#include "disclab/geometry/monomial.hpp"
#include "disclab/util/hash.hpp"
#include "disclab/util/io.hpp"
#include "disclab/util/rootfind.hpp"
#include "disclab/util/vec2.hpp"

namespace disclab::geo {

using nlohmann::json;

enum class BodyVariant { Polygon, Disk, MonomialGraph, Glued };

inline const char* variantName(BodyVariant v) {
    switch (v) {
        case BodyVariant::Polygon: return "polygon";
        case BodyVariant::Disk: return "disk";
        case BodyVariant::MonomialGraph: return "monomial";
        default: return "glued";
    }
}

struct BoundarySample {
    Vec2 point;
    double tangentAngle = 0.0;
    double curvature = 0.0;
};

/// One piece of the lower-right boundary quarter of a curve-backed body,
/// described in the final (centered, scaled) frame. The local curve is the
/// graph (x, x^beta); global = scale * R(rot) * local + shift.
struct QuarterMonomialPiece {
    double beta = 0.0;
    double xLo = 0.0, xHi = 0.0;
    double rot = 0.0;
    Vec2 shift{};
    double scale = 1.0;
    double phiLo = 0.0, phiHi = 0.0;  // global tangent angle range
    double sLo = 0.0, sHi = 0.0;      // quarter arclength offsets

    Vec2 point(double x) const {
        const double c = std::cos(rot), s = std::sin(rot);
        const double y = std::pow(x, beta);
        return {scale * (c * x - s * y) + shift.x, scale * (s * x + c * y) + shift.y};
    }
    double tangentAngle(double x) const { return std::atan(beta * std::pow(x, beta - 1.0)) + rot; }
    double curvature(double x) const { return monomialCurvature(beta, x) / scale; }
    double xFromTangent(double phi) const {
        const double t = std::tan(std::clamp(phi - rot, 0.0, M_PI / 2 - 1e-15));
        if (t <= 0.0) return 0.0;
        return std::pow(t / beta, 1.0 / (beta - 1.0));
    }
    double speed(double x) const {  // |d global / d local x|
        const double m = beta * std::pow(x, beta - 1.0);
        return scale * std::sqrt(1.0 + m * m);
    }
    double arclengthFrom(double x0, double x1) const {
        if (x1 <= x0) return 0.0;
        auto [v, e] = adaptiveCompositeGauss([&](double t) { return speed(t); }, x0, x1, 4, 1e-13, 10, 12);
        (void)e;
        return v;
    }
};

struct QuarterArcPiece {
    Vec2 center{};
    double radius = 0.0;
    double phiLo = 0.0, phiHi = 0.0;
    double sLo = 0.0, sHi = 0.0;

    Vec2 point(double phi) const { return {center.x + radius * std::sin(phi), center.y - radius * std::cos(phi)}; }
};

/// Shared immutable geometry of a closed, centrally symmetric, y-axis
/// symmetric C^2 body built from monomial arcs + closing circular arcs.
/// Only the lower-right quarter (tangent angle in [0, pi/2]) is stored;
/// the rest follows by symmetry.
struct CurveData {
    std::vector<QuarterMonomialPiece> pieces;  // increasing tangent angle
    QuarterArcPiece arc;
    double xA = 0.0;        // right junction A = (xA, 0)
    double arcStartX = 0.0; // abscissa where the closing arc takes over
    double quarterLength = 0.0;
    double area = 0.0;
    double diameter = 0.0;
    double scale = 1.0;       // final uniform scale applied to the raw frame
    double rawDiameter = 0.0;
    Vec2 rawCenter{};

    // defining parameters
    std::vector<double> betas, ks;
    double k0 = 10.0;

    // lower-boundary interpolant y = f(x) on [0, arcStartX] (Hermite knots)
    std::vector<double> fx, fy, fm;

    // empirically estimated window constants (lambda0, theta0, lambdaC, ...)
    mutable std::map<std::string, double> windows;
    mutable std::mutex windowsMutex;

    double lowerBoundary(double x) const {  // f(x) <= 0 on [0, xA]
        if (x >= arcStartX) {
            const double dx = x - arc.center.x;
            const double t = std::max(0.0, arc.radius * arc.radius - dx * dx);
            return arc.center.y - std::sqrt(t);
        }
        // Hermite cubic between knots
        const auto it = std::upper_bound(fx.begin(), fx.end(), x);
        size_t i = (it == fx.begin()) ? 0 : static_cast<size_t>(it - fx.begin() - 1);
        if (i + 1 >= fx.size()) i = fx.size() - 2;
        const double h = fx[i + 1] - fx[i];
        const double t = (x - fx[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * fy[i] + (t3 - 2 * t2 + t) * h * fm[i] +
               (-2 * t3 + 3 * t2) * fy[i + 1] + (t3 - t2) * h * fm[i + 1];
    }
};

class ConvexBody {
  public:
    BodyVariant variant = BodyVariant::Disk;

    // polygon data (counterclockwise vertices)
    std::vector<Vec2> vertices;
    // disk data
    double radius = 0.0;
    // curve data (monomial / glued)
    std::shared_ptr<const CurveData> curve;

    bool centralSymmetry = false;
    bool axisSymmetry = false;

    static ConvexBody disk(double r);
    static ConvexBody polygon(std::vector<Vec2> verts);
    /// Axis-aligned (or rotated) rectangle centered at the origin.
    static ConvexBody rectangle(double width, double height, double angle = 0.0);

    double area() const { return area_; }
    double diameter() const { return diameter_; }

    double support(double theta) const;
    double width(double theta) const { return support(theta) + support(theta + M_PI); }
    bool contains(const Vec2& p) const;

    /// Boundary point with tangent angle phi (curve variants; Gauss map).
    BoundarySample gammaAt(double phi) const;
    /// Boundary sample at arclength s in [0, perimeter) from the bottom point.
    BoundarySample sampleByArclength(double s) const;
    double perimeter() const;

    /// If the polygon is a rectangle, its (center, unit axes, half-extents).
    struct RectData {
        Vec2 center, e1, e2;
        double h1, h2;
    };
    std::optional<RectData> asRectangle() const;

    std::string canonicalParams() const;
    std::string fingerprint() const { return hex64(fnv1a(canonicalParams())); }

    json toJson() const;
    static ConvexBody fromJson(const json& j);

    void setWindow(const std::string& key, double value) const;
    std::optional<double> getWindow(const std::string& key) const;

    double areaCache() const { return area_; }

    // internal: finalize cached quantities (builders call this)
    void finalize(double area, double diam) {
        area_ = area;
        diameter_ = diam;
    }

  private:
    double area_ = 0.0;
    double diameter_ = 0.0;
};

// ---------------------------------------------------------------------------

inline ConvexBody ConvexBody::disk(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("disk: radius must be > 0");
    ConvexBody b;
    b.variant = BodyVariant::Disk;
    b.radius = r;
    b.centralSymmetry = b.axisSymmetry = true;
    b.finalize(M_PI * r * r, 2.0 * r);
    return b;
}

inline ConvexBody ConvexBody::polygon(std::vector<Vec2> verts) {
    if (verts.size() < 3) throw std::invalid_argument("polygon: need >= 3 vertices");
    double a2 = 0.0;
    for (size_t i = 0; i < verts.size(); ++i) {
        const Vec2& p = verts[i];
        const Vec2& q = verts[(i + 1) % verts.size()];
        a2 += p.cross(q);
    }
    if (a2 < 0.0) {  // enforce counterclockwise
        std::reverse(verts.begin(), verts.end());
        a2 = -a2;
    }
    ConvexBody b;
    b.variant = BodyVariant::Polygon;
    b.vertices = std::move(verts);
    double diam = 0.0;
    for (size_t i = 0; i < b.vertices.size(); ++i)
        for (size_t j = i + 1; j < b.vertices.size(); ++j)
            diam = std::max(diam, (b.vertices[i] - b.vertices[j]).norm());
    b.finalize(0.5 * a2, diam);
    // central symmetry about the origin: every vertex has its antipode
    bool central = true;
    for (const Vec2& v : b.vertices) {
        bool found = false;
        for (const Vec2& w : b.vertices)
            if ((v + w).norm() <= 1e-12 * (1.0 + v.norm())) { found = true; break; }
        if (!found) { central = false; break; }
    }
    b.centralSymmetry = central;
    bool axis = true;
    for (const Vec2& v : b.vertices) {
        bool found = false;
        for (const Vec2& w : b.vertices)
            if (std::fabs(v.x + w.x) <= 1e-12 * (1.0 + std::fabs(v.x)) &&
                std::fabs(v.y - w.y) <= 1e-12 * (1.0 + std::fabs(v.y))) { found = true; break; }
        if (!found) { axis = false; break; }
    }
    b.axisSymmetry = axis;
    return b;
}

inline ConvexBody ConvexBody::rectangle(double width, double height, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    const Vec2 e1{c, s}, e2{-s, c};
    std::vector<Vec2> v = {
        e1 * (width / 2) + e2 * (height / 2),
        e1 * (-width / 2) + e2 * (height / 2),
        e1 * (-width / 2) + e2 * (-height / 2),
        e1 * (width / 2) + e2 * (-height / 2),
    };
    std::reverse(v.begin(), v.end());  // counterclockwise
    return polygon(std::move(v));
}

inline std::optional<ConvexBody::RectData> ConvexBody::asRectangle() const {
    if (variant != BodyVariant::Polygon || vertices.size() != 4) return std::nullopt;
    const Vec2 d1 = vertices[1] - vertices[0];
    const Vec2 d2 = vertices[2] - vertices[1];
    const Vec2 d3 = vertices[3] - vertices[2];
    const Vec2 d4 = vertices[0] - vertices[3];
    const double tol = 1e-12 * (d1.norm() + d2.norm());
    if (std::fabs(d1.dot(d2)) > tol || std::fabs(d2.dot(d3)) > tol || std::fabs(d3.dot(d4)) > tol)
        return std::nullopt;
    RectData r;
    r.center = (vertices[0] + vertices[1] + vertices[2] + vertices[3]) * 0.25;
    r.e1 = d1.normalized();
    r.e2 = d2.normalized();
    r.h1 = 0.5 * d1.norm();
    r.h2 = 0.5 * d2.norm();
    return r;
}

inline double ConvexBody::support(double theta) const {
    const Vec2 u = dir(theta);
    switch (variant) {
        case BodyVariant::Polygon: {
            double h = -1e300;
            for (const Vec2& v : vertices) h = std::max(h, v.dot(u));
            return h;
        }
        case BodyVariant::Disk:
            return radius;
        default: {
            return gammaAt(normalizeAngle(theta + M_PI / 2)).point.dot(u);
        }
    }
}

inline BoundarySample ConvexBody::gammaAt(double phi) const {
    if (variant == BodyVariant::Disk) {
        phi = normalizeAngle(phi);
        return {{radius * std::sin(phi), -radius * std::cos(phi)}, phi, 1.0 / radius};
    }
    if (!curve) throw std::logic_error("gammaAt: not a curve-backed body");
    phi = normalizeAngle(phi);
    // reduce to the lower-right quarter [0, pi/2] by symmetry
    int quadrant;
    double q;
    if (phi <= M_PI / 2) { quadrant = 0; q = phi; }
    else if (phi <= M_PI) { quadrant = 1; q = M_PI - phi; }
    else if (phi <= 1.5 * M_PI) { quadrant = 2; q = phi - M_PI; }
    else { quadrant = 3; q = 2.0 * M_PI - phi; }

    const CurveData& cd = *curve;
    BoundarySample s;
    if (q >= cd.arc.phiLo) {
        s.point = cd.arc.point(q);
        s.curvature = 1.0 / cd.arc.radius;
    } else {
        size_t i = 0;
        while (i + 1 < cd.pieces.size() && q >= cd.pieces[i + 1].phiLo) ++i;
        const auto& pc = cd.pieces[i];
        const double x = pc.xFromTangent(q);
        s.point = pc.point(std::clamp(x, pc.xLo, pc.xHi));
        s.curvature = pc.curvature(std::max(x, 1e-300));
    }
    s.tangentAngle = phi;
    switch (quadrant) {
        case 0: break;
        case 1: s.point = {s.point.x, -s.point.y}; break;           // upper-right
        case 2: s.point = -s.point; break;                          // upper-left
        case 3: s.point = {-s.point.x, s.point.y}; break;           // lower-left
    }
    return s;
}

inline double ConvexBody::perimeter() const {
    switch (variant) {
        case BodyVariant::Polygon: {
            double L = 0.0;
            for (size_t i = 0; i < vertices.size(); ++i)
                L += (vertices[(i + 1) % vertices.size()] - vertices[i]).norm();
            return L;
        }
        case BodyVariant::Disk:
            return 2.0 * M_PI * radius;
        default:
            return 4.0 * curve->quarterLength;
    }
}

inline BoundarySample ConvexBody::sampleByArclength(double s) const {
    if (variant == BodyVariant::Disk) {
        const double phi = s / radius;
        return gammaAt(phi);
    }
    if (!curve) throw std::logic_error("sampleByArclength: not a curve-backed body");
    const CurveData& cd = *curve;
    const double Q = cd.quarterLength;
    s = std::fmod(s, 4.0 * Q);
    if (s < 0) s += 4.0 * Q;
    const int quadrant = std::min(3, static_cast<int>(s / Q));
    double t = s - quadrant * Q;
    const bool reversed = (quadrant == 1 || quadrant == 3);
    const double tq = reversed ? Q - t : t;

    BoundarySample base;
    if (tq >= cd.arc.sLo) {
        const double phi = cd.arc.phiLo + (tq - cd.arc.sLo) / cd.arc.radius;
        base.point = cd.arc.point(std::min(phi, cd.arc.phiHi));
        base.tangentAngle = std::min(phi, cd.arc.phiHi);
        base.curvature = 1.0 / cd.arc.radius;
    } else {
        size_t i = 0;
        while (i + 1 < cd.pieces.size() && tq >= cd.pieces[i + 1].sLo) ++i;
        const auto& pc = cd.pieces[i];
        const double target = tq - pc.sLo;
        double x;
        if (target <= 0) {
            x = pc.xLo;
        } else if (target >= pc.sHi - pc.sLo) {
            x = pc.xHi;
        } else {
            auto f = [&](double xx) { return pc.arclengthFrom(pc.xLo, xx) - target; };
            x = bisectNewton(f, [&](double xx) { return pc.speed(xx); }, pc.xLo, pc.xHi,
                             1e-14 * std::max(1.0, pc.xHi));
        }
        base.point = pc.point(x);
        base.tangentAngle = pc.tangentAngle(x);
        base.curvature = pc.curvature(std::max(x, 1e-300));
    }
    BoundarySample out;
    out.curvature = base.curvature;
    switch (quadrant) {
        case 0:
            out.point = base.point;
            out.tangentAngle = base.tangentAngle;
            break;
        case 1:
            out.point = {base.point.x, -base.point.y};
            out.tangentAngle = M_PI - base.tangentAngle;
            break;
        case 2:
            out.point = -base.point;
            out.tangentAngle = M_PI + base.tangentAngle;
            break;
        default:
            out.point = {-base.point.x, base.point.y};
            out.tangentAngle = 2.0 * M_PI - base.tangentAngle;
            break;
    }
    out.tangentAngle = normalizeAngle(out.tangentAngle);
    return out;
}

inline bool ConvexBody::contains(const Vec2& p) const {
    switch (variant) {
        case BodyVariant::Disk:
            return p.norm2() <= radius * radius * (1.0 + 4e-16);
        case BodyVariant::Polygon: {
            for (size_t i = 0; i < vertices.size(); ++i) {
                const Vec2& a = vertices[i];
                const Vec2& b = vertices[(i + 1) % vertices.size()];
                if ((b - a).cross(p - a) < -1e-14 * (1.0 + p.norm())) return false;
            }
            return true;
        }
        default: {
            const CurveData& cd = *curve;
            const double ax = std::fabs(p.x);
            if (ax > cd.xA * (1.0 + 1e-15)) return false;
            const double f = cd.lowerBoundary(std::min(ax, cd.xA));
            const double tol = 1e-14;
            return p.y >= f - tol && p.y <= -f + tol;
        }
    }
}

inline void ConvexBody::setWindow(const std::string& key, double value) const {
    if (!curve) return;
    std::lock_guard<std::mutex> lock(curve->windowsMutex);
    curve->windows[key] = value;
}

inline std::optional<double> ConvexBody::getWindow(const std::string& key) const {
    if (!curve) return std::nullopt;
    std::lock_guard<std::mutex> lock(curve->windowsMutex);
    auto it = curve->windows.find(key);
    if (it == curve->windows.end()) return std::nullopt;
    return it->second;
}

inline std::string ConvexBody::canonicalParams() const {
    std::string s = variantName(variant);
    s += "|";
    switch (variant) {
        case BodyVariant::Polygon:
            for (const Vec2& v : vertices) s += fmtDouble(v.x) + "," + fmtDouble(v.y) + ";";
            break;
        case BodyVariant::Disk:
            s += fmtDouble(radius);
            break;
        default:
            for (double b : curve->betas) s += fmtDouble(b) + ",";
            s += "|";
            for (double k : curve->ks) s += fmtDouble(k) + ",";
            s += "|k0=" + fmtDouble(curve->k0);
            break;
    }
    return s;
}

inline json ConvexBody::toJson() const {
    json j;
    j["variant"] = variantName(variant);
    j["area"] = area_;
    j["diameter"] = diameter_;
    j["central_symmetry"] = centralSymmetry;
    j["axis_symmetry"] = axisSymmetry;
    j["fingerprint"] = fingerprint();
    switch (variant) {
        case BodyVariant::Polygon: {
            json vs = json::array();
            for (const Vec2& v : vertices) vs.push_back({v.x, v.y});
            j["vertices"] = vs;
            break;
        }
        case BodyVariant::Disk:
            j["radius"] = radius;
            break;
        default: {
            j["betas"] = curve->betas;
            if (variant == BodyVariant::Glued) j["ks"] = curve->ks;
            j["k0"] = curve->k0;
            j["closure"] = {{"scale", curve->scale},
                            {"raw_diameter", curve->rawDiameter},
                            {"raw_center", {curve->rawCenter.x, curve->rawCenter.y}},
                            {"arc_radius", curve->arc.radius},
                            {"arc_phi_lo", curve->arc.phiLo},
                            {"junction_x", curve->xA}};
            json segs = json::array();
            for (const auto& pc : curve->pieces)
                segs.push_back({{"beta", pc.beta},
                                {"x_lo", pc.xLo},
                                {"x_hi", pc.xHi},
                                {"rot", pc.rot},
                                {"shift", {pc.shift.x, pc.shift.y}},
                                {"scale", pc.scale}});
            j["segments"] = segs;
            {
                std::lock_guard<std::mutex> lock(curve->windowsMutex);
                json w = json::object();
                for (const auto& [k, v] : curve->windows) w[k] = v;
                j["windows"] = w;
            }
            break;
        }
    }
    return j;
}

}  // namespace disclab::geo
