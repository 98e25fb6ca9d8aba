#pragma once

#include <cmath>
#include <ostream>

namespace disclab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double xx, double yy) : x(xx), y(yy) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    Vec2 perp() const { return {-y, x}; }  // rotate by +pi/2
    Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
    double angle() const { return std::atan2(y, x); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << "(" << v.x << ", " << v.y << ")";
}

/// Unit direction u(theta) = (cos theta, sin theta).
inline Vec2 dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Rotation by `angle` followed by translation by `shift`.
struct RigidMotion {
    double angle = 0.0;
    Vec2 shift{};

    Vec2 apply(const Vec2& p) const {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y};
    }
    Vec2 applyVector(const Vec2& v) const {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c * v.x - s * v.y, s * v.x + c * v.y};
    }
};

inline double normalizeAngle(double a) {  // into [0, 2pi)
    const double twoPi = 2.0 * M_PI;
    a = std::fmod(a, twoPi);
    if (a < 0) a += twoPi;
    return a;
}

/// Distance of `a` to the nearest multiple of pi.
inline double distToPiMultiple(double a) {
    const double t = std::fmod(std::fabs(a), M_PI);
    return std::min(t, M_PI - t);
}

}  // namespace disclab
