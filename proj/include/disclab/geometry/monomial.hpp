#pragma once

#include <cmath>
#include <stdexcept>

#include "disclab/util/rootfind.hpp"

namespace disclab::geo {

/// Curvature of the graph y = x^beta at abscissa x:
///   kappa(x) = beta (beta-1) x^(beta-2) (1 + beta^2 x^(2 beta - 2))^(-3/2).
/// Strictly decreasing on (0, +inf) for beta in (1, 2); diverges as x -> 0+.
/// beta = 2 is admitted (kappa(0) = 2, finite).
inline double monomialCurvature(double beta, double x) {
    if (beta <= 1.0 || beta > 2.0) throw std::domain_error("monomialCurvature: beta must be in (1, 2]");
    if (x < 0.0 || (x == 0.0 && beta < 2.0)) throw std::domain_error("monomialCurvature: x must be > 0 for beta < 2");
    if (beta == 2.0) return 2.0 / std::pow(1.0 + 4.0 * x * x, 1.5);
    const double xp = std::pow(x, beta - 2.0);
    const double slope = beta * std::pow(x, beta - 1.0);
    return beta * (beta - 1.0) * xp / std::pow(1.0 + slope * slope, 1.5);
}

/// d(kappa)/dx, used for Newton polish.
inline double monomialCurvatureDeriv(double beta, double x) {
    const double k = monomialCurvature(beta, x);
    const double t = beta * beta * std::pow(x, 2.0 * beta - 2.0);
    return k * ((beta - 2.0) / x - 3.0 * (beta - 1.0) * t / (x * (1.0 + t)));
}

/// Abscissa x with kappa_beta(x) = k. Bracket by geometric expansion around
/// the small-x asymptotic guess, bisect, then Newton polish; the residual
/// satisfies |kappa(x) - k| / k <= 1e-12.
inline double solveCurvatureLevel(double beta, double k) {
    if (k <= 0.0) throw std::domain_error("solveCurvatureLevel: k must be > 0");
    if (beta == 2.0) {
        // kappa in (0, 2]; exact inversion of 2 (1+4x^2)^(-3/2) = k
        if (k > 2.0) throw NoBracketError("solveCurvatureLevel: k above max curvature 2 for beta = 2");
        return 0.5 * std::sqrt(std::pow(2.0 / k, 2.0 / 3.0) - 1.0);
    }
    // solve in log-abscissa so the tolerance is relative; roots span many
    // orders of magnitude across curvature levels
    auto g = [&](double t) { return std::log(monomialCurvature(beta, std::exp(t))) - std::log(k); };
    // small-x law kappa ~ beta(beta-1) x^(beta-2) gives a good starting scale
    double x0 = std::pow(k / (beta * (beta - 1.0)), 1.0 / (beta - 2.0));
    if (!(x0 > 0.0) || !std::isfinite(x0)) x0 = 1.0;
    double tLo = std::log(x0), tHi = tLo;
    double gLo = g(tLo), gHi = gLo;
    const double step = std::log(4.0);
    int guard = 0;
    while (gLo * gHi > 0.0) {
        if (++guard > 600) throw NoBracketError("solveCurvatureLevel: no bracket found");
        if (gLo > 0.0) { tLo = tHi; gLo = gHi; tHi += step; gHi = g(tHi); }  // kappa decreasing in x
        else { tHi = tLo; gHi = gLo; tLo -= step; gLo = g(tLo); }
    }
    auto dg = [&](double t) {
        const double x = std::exp(t);
        return x * monomialCurvatureDeriv(beta, x) / monomialCurvature(beta, x);
    };
    const double t = bisectNewton(g, dg, tLo, tHi, 1e-13, 4);
    return std::exp(t);
}

/// Root z >= 0 of f(z) = (z+1)^beta - z*beta - 1 = lambda / (x_o^beta cos(theta)).
/// f is increasing on [0, inf); monotone bisection + Newton.
inline double solveChordEquation(double beta, double xo, double lambda, double theta) {
    if (lambda < 0.0) throw std::domain_error("solveChordEquation: lambda must be >= 0");
    if (xo <= 0.0) throw std::domain_error("solveChordEquation: x_o must be > 0");
    if (std::cos(theta) <= 0.0) throw std::domain_error("solveChordEquation: cos(theta) must be > 0");
    const double rhs = lambda / (std::pow(xo, beta) * std::cos(theta));
    if (rhs == 0.0) return 0.0;
    if (beta == 2.0) return std::sqrt(rhs);
    auto f = [&](double z) { return std::pow(z + 1.0, beta) - z * beta - 1.0 - rhs; };
    auto df = [&](double z) { return beta * (std::pow(z + 1.0, beta - 1.0) - 1.0); };
    double hi = std::max(1.0, 2.0 * std::pow(rhs, 1.0 / beta) + 2.0);
    while (f(hi) < 0.0) hi *= 2.0;
    return bisectNewton(f, df, 0.0, hi, 1e-14 * hi);
}

/// Piecewise power-law chord prediction for the body A(beta), up to constants:
///   lambda^(1/beta)                              for |theta| <  lambda^((beta-1)/beta)
///   lambda^(1/2) |theta|^((2-beta)/(2(beta-1)))  for |theta| >= lambda^((beta-1)/beta)
/// Continuous across the regime boundary. Out-of-window arguments are
/// rejected; the window constants are configuration.
inline double predictedChordAbeta(double beta, double theta, double lambda,
                                  double windowC = 0.5, double windowLambda = 0.25) {
    if (beta <= 1.0 || beta > 2.0) throw std::domain_error("predictedChordAbeta: beta must be in (1, 2]");
    const double t = std::fabs(theta);
    if (!(t < windowC) || !(lambda < windowLambda) || lambda < 0.0)
        throw std::domain_error("predictedChordAbeta: query outside the admissible window");
    if (lambda == 0.0) return 0.0;
    const double boundary = std::pow(lambda, (beta - 1.0) / beta);
    if (t < boundary) return std::pow(lambda, 1.0 / beta);
    return std::sqrt(lambda) * std::pow(t, (2.0 - beta) / (2.0 * (beta - 1.0)));
}

/// Inverse of the exact piecewise power g(x) = x^alpha (x < 1), x^beta (x >= 1):
/// x = y^(1/alpha) for y < 1, y^(1/beta) for y >= 1; continuous at y = 1.
inline double invertPiecewisePower(double alpha, double beta, double y) {
    if (alpha <= 0.0 || beta <= 0.0) throw std::domain_error("invertPiecewisePower: exponents must be > 0");
    if (y < 0.0) throw std::domain_error("invertPiecewisePower: y must be >= 0");
    return (y < 1.0) ? std::pow(y, 1.0 / alpha) : std::pow(y, 1.0 / beta);
}

}  // namespace disclab::geo
