#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "disclab/fourier/weights.hpp"
#include "disclab/geometry/chords.hpp"

namespace disclab::fourier {

/// Radial/angular window where the spectral weight follows one beta's
/// power law (located empirically; the windows exist but are not
/// quantified a priori).
struct RegimeWindow {
    int index = 0;
    double beta = 0.0;
    double rhoLo = 1.0, rhoHi = 1.0;
    double thetaMax = 0.0;

    void validate() const {
        if (!(1.0 <= rhoLo && rhoLo < rhoHi)) throw std::domain_error("RegimeWindow: need 1 <= rhoLo < rhoHi");
        if (!(thetaMax > 0.0)) throw std::domain_error("RegimeWindow: thetaMax must be > 0");
    }
};

/// Predicted dilation-averaged power (unit constants):
///   rho^(-2-2/beta)                        for |theta| <= rho^((1-beta)/beta)
///   rho^(-3) |theta|^((2-beta)/(beta-1))   otherwise,
/// continuous across the regime boundary; theta is measured from the
/// flat-normal direction.
inline double predictedAvgPower(const RegimeWindow& win, double rho, double theta) {
    win.validate();
    const double t = std::fabs(theta);
    if (rho < win.rhoLo || rho > win.rhoHi || t > win.thetaMax)
        throw std::domain_error("predictedAvgPower: query outside the window");
    const double beta = win.beta;
    const double boundary = std::pow(rho, (1.0 - beta) / beta);
    if (t <= boundary) return std::pow(rho, -2.0 - 2.0 / beta);
    return std::pow(rho, -3.0) * std::pow(t, (2.0 - beta) / (beta - 1.0));
}

struct RatioStats {
    double min = 0.0, max = 0.0;
    double maxOverMin() const { return max / min; }
    std::vector<double> ratios;
};

/// Lemma-L1 measurement: ratio of the dilation-averaged power at
/// xi = u(theta)/lambda against lambda^2 gamma_C^2(theta, lambda) on a
/// lambda grid; both sides computed independently.
inline RatioStats verifyL1(const geo::ConvexBody& body, double theta,
                           const std::vector<double>& lambdas, ProfileCache* cache = nullptr) {
    RatioStats st;
    st.min = 1e300;
    st.max = 0.0;
    for (double lam : lambdas) {
        const Vec2 xi = dir(theta) * (1.0 / lam);
        const double w = dilationAvgPower(body, xi, cache).w;
        const double g = geo::gamma(body, theta, lam);
        const double denom = lam * lam * g * g;
        const double ratio = w / denom;
        st.ratios.push_back(ratio);
        st.min = std::min(st.min, ratio);
        st.max = std::max(st.max, ratio);
    }
    return st;
}

/// Estimate lambda_C: the largest lambda scale on which the L1 ratio stays
/// within a fixed band (scan, then shrink by the safety factor 2).
inline double estimateLambdaC(const geo::ConvexBody& body, ProfileCache* cache = nullptr,
                              double band = 50.0) {
    if (auto v = body.getWindow("lambda_c")) return *v;
    double lamHi = body.width(M_PI / 2) / 4.0;
    auto bandOk = [&](double lamTop) {
        std::vector<double> grid;
        for (int i = 0; i < 8; ++i) grid.push_back(lamTop * std::pow(0.05, i / 7.0));
        double lo = 1e300, hi = 0.0;
        for (double th : {0.0, M_PI / 2, 1.0}) {
            const auto st = verifyL1(body, th, grid, cache);
            lo = std::min(lo, st.min);
            hi = std::max(hi, st.max);
        }
        return hi / lo <= band;
    };
    int guard = 0;
    while (lamHi > 1e-6 && !bandOk(lamHi) && ++guard < 24) lamHi *= 0.5;
    const double lambdaC = 0.5 * lamHi;
    body.setWindow("lambda_c", lambdaC);
    return lambdaC;
}

/// Angular comparison of spectral weights along a fixed radius
/// (monotone-in-theta check with a fixed acceptance constant).
struct AngularComparisonReport {
    double maxRatio = 0.0;  // max over theta1 < theta2 of w(theta1)/w(theta2)
    size_t violations = 0;
    double allowed = 100.0;
};

inline AngularComparisonReport checkAngularComparison(const geo::ConvexBody& body, double rho,
                                                      const std::vector<double>& thetas,
                                                      double allowed = 100.0,
                                                      ProfileCache* cache = nullptr) {
    AngularComparisonReport rep;
    rep.allowed = allowed;
    std::vector<double> w(thetas.size());
    for (size_t i = 0; i < thetas.size(); ++i)
        w[i] = dilationAvgPower(body, dir(thetas[i]) * rho, cache).w;
    for (size_t i = 0; i < thetas.size(); ++i)
        for (size_t j = i + 1; j < thetas.size(); ++j) {
            const double r = w[i] / w[j];
            rep.maxRatio = std::max(rep.maxRatio, r);
            if (r > allowed) ++rep.violations;
        }
    return rep;
}

/// Away-from-the-flat-point chord law |K(theta + pi/2, lambda)| ~ lambda^(1/2)
/// (curvature bounded above and below there): band check of the ratio.
struct SqrtLawReport {
    double minRatio = 1e300, maxRatio = 0.0;
    double band() const { return maxRatio / minRatio; }
};

inline SqrtLawReport checkSqrtChordLaw(const geo::ConvexBody& body,
                                       const std::vector<double>& thetas,
                                       const std::vector<double>& lambdas) {
    SqrtLawReport rep;
    for (double th : thetas) {
        if (distToPiMultiple(th) <= 0.1) continue;  // excluded neighbourhood of the flat normal
        for (double lam : lambdas) {
            const double c = geo::chord(body, th + M_PI / 2, lam);
            const double r = c / std::sqrt(lam);
            rep.minRatio = std::min(rep.minRatio, r);
            rep.maxRatio = std::max(rep.maxRatio, r);
        }
    }
    return rep;
}

}  // namespace disclab::fourier
