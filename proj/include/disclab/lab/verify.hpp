#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "disclab/bounds/cm.hpp"
#include "disclab/bounds/xyz.hpp"
#include "disclab/discrepancy/d2.hpp"
#include "disclab/fourier/regime.hpp"
#include "disclab/geometry/chords.hpp"
#include "disclab/geometry/close.hpp"
#include "disclab/lab/fit.hpp"
#include "disclab/pointsets/generators.hpp"

namespace disclab::lab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

inline CheckResult check(const std::string& name, bool pass, const std::string& detail) {
    return {name, pass, detail};
}

inline std::string num(double v) { return fmtDouble(v); }

/// Lemma L1 bounded-ratio checks on the spec grids (disk and monomial body).
inline std::vector<CheckResult> verifyL1Suite(const std::string& cacheDir = fourier::defaultCacheDir()) {
    std::vector<CheckResult> out;
    (void)cacheDir;
    auto disk = geo::ConvexBody::disk(0.25);
    std::vector<double> lamDisk;
    for (int i = 0; i < 20; ++i) lamDisk.push_back(1e-3 * std::pow(100.0, i / 19.0));
    const auto s0 = fourier::verifyL1(disk, 0.0, lamDisk);
    out.push_back(check("l1 disk theta=0 ratio band <= 50", s0.maxOverMin() <= 50.0,
                        "max/min = " + num(s0.maxOverMin())));
    const auto s1 = fourier::verifyL1(disk, M_PI / 3, lamDisk);
    out.push_back(check("l1 disk theta=pi/3 ratio band <= 50", s1.maxOverMin() <= 50.0,
                        "max/min = " + num(s1.maxOverMin())));
    double sym = 0.0;
    for (size_t i = 0; i < lamDisk.size(); ++i)
        sym = std::max(sym, std::fabs(s0.ratios[i] - s1.ratios[i]) / s0.ratios[i]);
    out.push_back(check("l1 disk rotational symmetry 1e-6", sym <= 1e-6, "max rel diff = " + num(sym)));

    auto mono = geo::monomialBody(1.5);
    fourier::ProfileCache cache(mono);
    std::vector<double> lamMono;
    for (int i = 0; i < 20; ++i) lamMono.push_back(1e-4 * std::pow(100.0, i / 19.0));
    const auto s2 = fourier::verifyL1(mono, M_PI / 2, lamMono, &cache);
    out.push_back(check("l1 monomial(1.5) flat normal ratio band <= 50", s2.maxOverMin() <= 50.0,
                        "max/min = " + num(s2.maxOverMin())));
    return out;
}

/// Prop-Aux exponents: regime-boundary continuity of the predictor (exact)
/// and fitted chord slopes in both regimes for beta in {1.2, 1.5, 1.8}.
inline std::vector<CheckResult> verifyAuxSuite() {
    std::vector<CheckResult> out;
    for (double beta : {1.2, 1.5, 1.8}) {
        // exponent identity at the regime boundary
        double worst = 0.0;
        for (double lam : {1e-6, 1e-4, 1e-2}) {
            const double tb = std::pow(lam, (beta - 1.0) / beta);
            const double left = std::pow(lam, 1.0 / beta);
            const double right = std::sqrt(lam) * std::pow(tb, (2.0 - beta) / (2.0 * (beta - 1.0)));
            worst = std::max(worst, std::fabs(left - right) / left);
        }
        out.push_back(check("aux predictor continuity beta=" + num(beta), worst <= 1e-12,
                            "max rel gap = " + num(worst)));

        auto body = geo::monomialBody(beta);
        // regime 1: slope of |K| vs lambda at the flat normal
        {
            std::vector<std::pair<double, double>> pts;
            for (int i = 0; i <= 12; ++i) {
                const double lam = 1e-5 * std::pow(1e3, i / 12.0);
                pts.push_back({lam, geo::chord(body, M_PI / 2, lam)});
            }
            const double slope = fitSlope(pts).slope;
            const double target = 1.0 / beta;
            out.push_back(check("aux regime1 slope beta=" + num(beta),
                                std::fabs(slope - target) <= 0.05,
                                "slope = " + num(slope) + ", target = " + num(target)));
        }
        // regime 2: slope of |K| vs theta at fixed depth
        {
            const double lam = 1e-10;
            const double tLo = 4.0 * std::pow(lam, (beta - 1.0) / beta);
            const double tHi = 0.2;
            std::vector<std::pair<double, double>> pts;
            for (int i = 0; i <= 10; ++i) {
                const double th = tLo * std::pow(tHi / tLo, i / 10.0);
                pts.push_back({th, geo::chord(body, M_PI / 2 + th, lam)});
            }
            const double slope = fitSlope(pts).slope;
            const double target = (2.0 - beta) / (2.0 * (beta - 1.0));
            out.push_back(check("aux regime2 slope beta=" + num(beta),
                                std::fabs(slope - target) <= 0.1,
                                "slope = " + num(slope) + ", target = " + num(target)));
        }
    }
    return out;
}

/// Glued-construction integrity + the factor-2 chord comparison.
inline std::vector<CheckResult> verifyTec1Suite() {
    std::vector<CheckResult> out;
    auto body = geo::gluedBody({1.8, 1.2}, {50.0, 5000.0});
    const auto d = geo::closureDiagnostics(body);
    out.push_back(check("glued curvature jump <= 1e-8", d.maxCurvatureJump <= 1e-8,
                        "max rel jump = " + num(d.maxCurvatureJump)));
    out.push_back(check("glued tangent jump <= 1e-10", d.maxTangentJump <= 1e-10,
                        "max jump = " + num(d.maxTangentJump)));
    out.push_back(check("glued total turning 2pi +- 1e-9",
                        std::fabs(d.totalTurning - 2.0 * M_PI) <= 1e-9,
                        "turning - 2pi = " + num(d.totalTurning - 2.0 * M_PI)));
    out.push_back(check("glued closure gap <= 1e-9 diam", d.closureGap <= 1e-9 * body.diameter(),
                        "gap = " + num(d.closureGap)));
    out.push_back(check("support sum positive on 720-grid", d.minSupportSum > 0.0,
                        "min width = " + num(d.minSupportSum)));

    auto [theta0, lambda0] = geo::estimateTec1Window(body);
    std::vector<double> thetas, lambdas;
    for (int i = 0; i < 64; ++i) thetas.push_back(M_PI / 2 + (theta0 - M_PI / 2) * i / 64.0);
    for (int i = 0; i < 64; ++i) lambdas.push_back(lambda0 * (i + 0.5) / 64.0);
    const auto rep = geo::checkChordMonotonicity(body, thetas, lambdas);
    out.push_back(check("tec1 factor-2 comparison on 64x64 grid", rep.violations == 0,
                        "max ratio = " + num(rep.maxRatio) + ", window theta0 = " + num(theta0) +
                            ", lambda0 = " + num(lambda0)));
    return out;
}

/// Cassels-Montgomery: the M-family and random non-vacuous instances.
inline std::vector<CheckResult> verifyCmSuite(int randomSets = 100) {
    std::vector<CheckResult> out;
    bool familyOk = true;
    std::string detail;
    disc::PointSet one;
    one.points = {{0.0, 0.0}};
    for (int M = 1; M <= 32; ++M) {
        const double side = 2.0 * M + 1.0;
        auto region = geo::ConvexBody::rectangle(side, side);
        const auto rec = bounds::cmVerify(region, 0.5, one);
        const bool ok = rec.holds && std::fabs(rec.lhs - (side * side - 1.0)) < 1e-6;
        if (!ok && familyOk) detail = "first failure at M = " + std::to_string(M);
        familyOk = familyOk && ok;
    }
    out.push_back(check("cm single-point family M=1..32", familyOk, detail));

    auto region = geo::ConvexBody::rectangle(256.0, 256.0);
    bool allHold = true, nonVacuous = true;
    for (int s = 1; s <= randomSets; ++s) {
        auto ps = pts::randomPointSet(64, static_cast<uint64_t>(s));
        const auto rec = bounds::cmVerify(region, 2.0, ps);
        allHold = allHold && rec.holds;
        nonVacuous = nonVacuous && !rec.vacuous;
    }
    out.push_back(check("cm " + std::to_string(randomSets) + " random sets hold, non-vacuous",
                        allHold && nonVacuous, ""));
    return out;
}

/// UseLem inequality on nested square pairs + the bridging arithmetic.
inline std::vector<CheckResult> verifyUseLemSuite(int sets = 50,
                                                  const std::string& cacheDir = fourier::defaultCacheDir()) {
    std::vector<CheckResult> out;
    auto A = geo::ConvexBody::rectangle(0.5, 0.5);
    fourier::SpectralWeightTable tableA(A, cacheDir);
    for (double eta : {1e-2, 1e-4}) {
        const double sideB = std::sqrt(0.25 - eta);
        auto B = geo::ConvexBody::rectangle(sideB, sideB);
        fourier::SpectralWeightTable tableB(B, cacheDir);
        bool all = true;
        std::string detail;
        for (int s = 1; s <= sets; ++s) {
            auto ps = pts::randomPointSet(16, 1000 + static_cast<uint64_t>(s));
            const auto rec = disc::compareNested(A, B, ps, tableA, tableB, 64.0);
            if (!(rec.nested && rec.holds)) {
                all = false;
                detail = "failure at seed " + std::to_string(1000 + s);
                break;
            }
        }
        out.push_back(check("uselem eta=" + num(eta) + " on " + std::to_string(sets) + " sets", all, detail));
    }
    // eta = (N+q)^-4 => 2 N^2 sqrt(eta) <= 2, exactly
    bool arith = true;
    for (long long N : {16LL, 256LL, 65536LL})
        for (long long q : {1LL, 4LL, 1024LL}) {
            const double lhs = 2.0 * static_cast<double>(N) * N / (static_cast<double>(N + q) * (N + q));
            arith = arith && lhs <= 2.0;
        }
    out.push_back(check("uselem bridging arithmetic", arith, ""));
    return out;
}

/// Phi properties, XYZ identities, and the weight-domination slack.
inline std::vector<CheckResult> verifyDominationSuite() {
    std::vector<CheckResult> out;
    const double beta = 1.5, N = 4096.0, eps = 0.05;
    const auto xyz = bounds::xyzParams(N, beta, eps);
    bounds::PhiSpec spec;
    spec.X = xyz.X;
    spec.Y = xyz.Y;
    spec.rho1 = 8.0;

    Rng rng(123);
    bool range = true, mid = true, axisFull = true, excluded = true;
    int midChecked = 0;
    for (int t = 0; t < 40000; ++t) {
        const long long m1 = static_cast<long long>(rng.below(2 * 130 + 1)) - 130;
        const long long m2 = static_cast<long long>(rng.below(2 * 130 + 1)) - 130;
        const double p = bounds::phiWeight(spec, m1, m2);
        range = range && p >= 0.0 && p <= 0.2 + 1e-15;
        const double rho = std::hypot(static_cast<double>(m1), static_cast<double>(m2));
        if (rho <= spec.rho1 && p != 0.0) excluded = false;
        if (rho >= spec.Y && rho <= spec.X && midChecked < 10000) {
            ++midChecked;
            if (p > M_PI * spec.Y / (2.0 * rho) + 1e-12) mid = false;
        }
    }
    for (long long m1 = 9; m1 < spec.Y / 2; m1 += 3)
        axisFull = axisFull && std::fabs(bounds::phiWeight(spec, m1, 0) - 0.2) < 1e-14;
    out.push_back(check("phi range [0, 1/5]", range, ""));
    out.push_back(check("phi vanishes in the excluded ball", excluded, ""));
    out.push_back(check("phi full measure on the long axis", axisFull, ""));
    out.push_back(check("phi mid-region bound pi Y / (2|m|) on " + std::to_string(midChecked) + " points",
                        mid && midChecked >= 10000, ""));

    bool ident = true;
    Rng rng2(5);
    for (int t = 0; t < 100; ++t) {
        const auto p = bounds::xyzParams(rng2.uniform(16.0, 1e7), rng2.uniform(1.05, 1.95),
                                         rng2.uniform(0.0, 0.5));
        const double prodErr = std::fabs(p.X * p.Y - std::pow(p.N, 1.0 + p.epsTilde)) /
                               std::pow(p.N, 1.0 + p.epsTilde);
        const double eqErr = std::fabs(std::pow(p.Y, -2.0 - 2.0 / p.beta) - 1.0 / (p.Y * p.X * p.X)) *
                             (p.Y * p.X * p.X);
        ident = ident && prodErr <= 1e-9 && eqErr <= 1e-9;
    }
    out.push_back(check("xyz algebraic identities (100 random)", ident, ""));

    fourier::RegimeWindow window{0, beta, spec.rho1, 1e9, 0.6};
    const auto rep = bounds::verifyDomination(spec, xyz, beta, window);
    out.push_back(check("weight domination worst slack <= 8", rep.worstSlack <= 8.0,
                        "worst slack = " + num(rep.worstSlack) + " at (" + num(rep.worstAt.x) + "," +
                            num(rep.worstAt.y) + ")"));
    return out;
}

}  // namespace disclab::lab
