#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace disclab {

struct NoBracketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Brent's method on [a, b] with f(a) f(b) <= 0.
/// Stops when the bracket is below `xtol` or f hits zero exactly.
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double xtol = 1e-15, int maxIter = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw NoBracketError("brent: endpoints do not bracket a root");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < maxIter; ++it) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0) return b;
        if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
            d = e = m;
        } else {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
                e = d; d = p / q;
            } else {
                d = e = m;
            }
        }
        a = b; fa = fb;
        b += (std::fabs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) { c = a; fc = fa; e = d = b - a; }
    }
    return b;
}

template <class F>
double brent(F&& f, double a, double b, double xtol = 1e-15, int maxIter = 200) {
    return brent(f, a, b, f(a), f(b), xtol, maxIter);
}

/// Root of a strictly monotone function: bisect to a narrow bracket, then
/// polish with a few Newton steps (derivative supplied).
template <class F, class DF>
double bisectNewton(F&& f, DF&& df, double a, double b, double xtol = 1e-13, int newtonSteps = 3) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw NoBracketError("bisectNewton: endpoints do not bracket a root");
    while (b - a > xtol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0) == (fa > 0)) { a = m; fa = fm; } else { b = m; fb = fm; }
    }
    double x = 0.5 * (a + b);
    for (int i = 0; i < newtonSteps; ++i) {
        const double d = df(x);
        if (d == 0.0) break;
        double step = f(x) / d;
        double xn = x - step;
        if (xn < a || xn > b) break;  // stay inside the certified bracket
        x = xn;
    }
    return x;
}

/// Expand [x0/grow, x0*grow] geometrically until f changes sign (f monotone
/// decreasing expected). Returns the bracket.
template <class F>
std::pair<double, double> expandBracket(F&& f, double x0, double grow = 4.0, int maxExpand = 200) {
    double lo = x0, hi = x0;
    double flo = f(lo), fhi = f(hi);
    int i = 0;
    while (flo * fhi > 0.0) {
        if (++i > maxExpand) throw NoBracketError("expandBracket: no sign change found");
        if (flo > 0.0 && fhi > 0.0) { lo = hi; flo = fhi; hi *= grow; fhi = f(hi); }
        else { hi = lo; fhi = flo; lo /= grow; flo = f(lo); }
    }
    return {lo, hi};
}

}  // namespace disclab
