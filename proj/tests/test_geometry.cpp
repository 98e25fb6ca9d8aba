#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "disclab/geometry/body.hpp"
#include "disclab/geometry/chords.hpp"
#include "disclab/geometry/close.hpp"
#include "disclab/geometry/curve.hpp"
#include "disclab/geometry/monomial.hpp"
#include "disclab/util/rng.hpp"

using namespace disclab;
using namespace disclab::geo;

namespace {

// independent oracle for kappa_2(x) = 1: bisection on (1+4x^2)^(3/2) = 2
double kappa2LevelOneOracle() {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (lo + hi);
        if (std::pow(1.0 + 4.0 * m * m, 1.5) < 2.0) lo = m; else hi = m;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("monomial curvature formula") {
    CHECK(monomialCurvature(2.0, 0.0) == 2.0);

    // divergence as x -> 0+ for beta < 2: monotone unbounded on a decreasing grid
    double prev = 0.0;
    for (int i = 1; i <= 12; ++i) {
        const double x = std::pow(10.0, -i);
        const double k = monomialCurvature(1.5, x);
        CHECK(k > prev);
        prev = k;
    }
    CHECK(prev > 1e5);

    const double xs = kappa2LevelOneOracle();
    CHECK(std::fabs(xs - 0.3832) < 5e-4);  // frozen from the oracle
    CHECK(monomialCurvature(2.0, xs) == Catch::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS_AS(monomialCurvature(1.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(monomialCurvature(1.5, -1.0), std::domain_error);
    CHECK_THROWS_AS(monomialCurvature(1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(monomialCurvature(0.5, 0.5), std::domain_error);
}

TEST_CASE("curvature strictly decreasing on (0, 10]") {
    for (double beta : {1.1, 1.5, 1.9}) {
        double prev = 1e308;
        for (int i = 0; i <= 400; ++i) {
            const double x = 1e-4 * std::pow(10.0 / 1e-4, i / 400.0);
            const double k = monomialCurvature(beta, x);
            CHECK(k < prev);
            prev = k;
        }
    }
}

TEST_CASE("solve curvature level") {
    const double xs = solveCurvatureLevel(2.0, 1.0);
    CHECK(xs == Catch::Approx(kappa2LevelOneOracle()).margin(1e-12));

    const double k = monomialCurvature(1.5, 0.25);
    CHECK(solveCurvatureLevel(1.5, k) == Catch::Approx(0.25).epsilon(1e-11));

    CHECK(solveCurvatureLevel(1.2, 100.0) < solveCurvatureLevel(1.2, 10.0));

    for (double beta : {1.2, 1.5, 1.8}) {
        for (double lvl : {10.0, 123.0, 4e4}) {
            const double x = solveCurvatureLevel(beta, lvl);
            CHECK(std::fabs(monomialCurvature(beta, x) - lvl) / lvl < 1e-12);
        }
    }
    CHECK_THROWS_AS(solveCurvatureLevel(2.0, 3.0), NoBracketError);
}

TEST_CASE("glued curve construction") {
    CHECK_THROWS_AS(buildGluedCurve({1.5}, {10.0}), GluingError);  // a1 = b1 forced

    auto c1 = buildGluedCurve({1.5}, {100.0});
    REQUIRE(c1.segments.size() == 1);
    const auto& s = c1.segments[0];
    CHECK(monomialCurvature(1.5, s.a) == Catch::Approx(100.0).epsilon(1e-10));
    CHECK(monomialCurvature(1.5, s.b) == Catch::Approx(10.0).epsilon(1e-10));

    auto c2 = buildGluedCurve({1.8, 1.2}, {50.0, 5000.0});
    REQUIRE(c2.segments.size() == 2);
    // junction: end of traversal segment 0 meets start of segment 1
    const auto& inner = c2.segments[0];
    const auto& outer = c2.segments[1];
    CHECK(inner.beta == 1.2);
    CHECK(outer.beta == 1.8);
    const Vec2 pj1 = inner.point(inner.b);
    const Vec2 pj2 = outer.point(outer.a);
    CHECK((pj1 - pj2).norm() < 1e-12);
    const double t1 = inner.tangentAngle(inner.b);
    const double t2 = outer.tangentAngle(outer.a);
    CHECK(std::fabs(t1 - t2) < 1e-10);
    const double k1 = inner.curvature(inner.b);
    const double k2 = outer.curvature(outer.a);
    CHECK(std::fabs(k1 - k2) / k2 < 1e-8);
    // curvature decreasing along traversal
    CHECK(c2.sample(0.0).curvature > c2.sample(c2.totalLength).curvature);

    // deep end at origin with horizontal tangent
    CHECK(c2.sample(0.0).point.norm() < 1e-14);
    CHECK(std::fabs(c2.sample(0.0).tangentAngle) < 1e-14);
}

TEST_CASE("glued body closure integrity") {
    auto body = gluedBody({1.8, 1.2}, {50.0, 5000.0});
    CHECK(body.diameter() == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(body.area() > 0.0);
    CHECK(body.centralSymmetry);

    const auto d = closureDiagnostics(body);
    CHECK(std::fabs(d.totalTurning - 2.0 * M_PI) < 1e-9);
    CHECK(d.closureGap < 1e-9 * body.diameter());
    CHECK(d.maxCurvatureJump < 1e-8);
    CHECK(d.maxTangentJump < 1e-10);
    CHECK(d.minSupportSum > 0.0);

    // central symmetry of the support function
    for (int i = 0; i < 64; ++i) {
        const double th = 2.0 * M_PI * i / 64;
        CHECK(std::fabs(body.support(th) - body.support(th + M_PI)) < 1e-10);
    }
}

TEST_CASE("monomial body closure") {
    const double beta = 1.5;
    auto body = monomialBody(beta);
    // matched circle radius (1+beta^2)^(3/2) / (beta(beta-1)), then scaled
    const double rawR = std::pow(1.0 + beta * beta, 1.5) / (beta * (beta - 1.0));
    CHECK(body.curve->arc.radius == Catch::Approx(rawR * body.curve->scale).epsilon(1e-12));
    const auto d = closureDiagnostics(body);
    CHECK(d.maxCurvatureJump < 1e-8);
    CHECK(d.maxTangentJump < 1e-10);
    CHECK(d.minSupportSum > 0.0);
    CHECK(body.diameter() == Catch::Approx(1.0).epsilon(1e-9));

    // membership: boundary points classify inside after a 1e-9 inward nudge
    for (int i = 0; i < 37; ++i) {
        const double phi = 2.0 * M_PI * i / 37;
        const auto bs = body.gammaAt(phi);
        const Vec2 inward = dir(bs.tangentAngle + M_PI / 2);
        CHECK(body.contains(bs.point + inward * 1e-9));
        CHECK_FALSE(body.contains(bs.point - inward * 1e-6));
    }
}

TEST_CASE("chords: disk and square") {
    auto disk = ConvexBody::disk(0.25);
    CHECK(chord(disk, 0.3, 0.25) == Catch::Approx(0.5).epsilon(1e-14));
    for (int i = 1; i < 100; ++i) {
        const double lam = 0.5 * i / 100;
        const double expect = 2.0 * std::sqrt(lam * (0.5 - lam));
        CHECK(std::fabs(chord(disk, 1.1, lam) - expect) < 1e-10);
    }

    auto square = ConvexBody::rectangle(0.5, 0.5);
    for (double lam : {0.01, 0.2, 0.49})
        CHECK(chord(square, 0.0, lam) == Catch::Approx(0.5).epsilon(1e-13));
    CHECK(chord(square, 0.0, 0.0) == Catch::Approx(0.5).epsilon(1e-13));  // contact edge
    CHECK_THROWS_AS(chord(square, 0.0, 0.75), std::domain_error);

    // chord limits
    CHECK(chord(disk, 0.7, 0.0) == 0.0);
    CHECK(chord(disk, 0.7, disk.width(0.7)) == 0.0);
}

TEST_CASE("chords: centrally symmetric gamma equals chord") {
    auto body = monomialBody(1.5);
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const double th = rng.uniform(0.0, 2.0 * M_PI);
        const double lam = rng.uniform(1e-4, body.width(th) - 1e-4);
        const double c1 = chord(body, th, lam);
        const double c2 = chord(body, th + M_PI, lam);
        CHECK(std::fabs(c1 - c2) < 1e-9 * (1.0 + c1));
        CHECK(geo::gamma(body, th, lam) == Catch::Approx(c1).margin(1e-9));
    }
}

TEST_CASE("chord via curvature") {
    // circle: lambda(s) = (1 - cos(kappa s))/kappa, semi = sin(kappa s)/kappa
    auto disk = ConvexBody::disk(0.25);
    const double kappa = 4.0;
    for (double s : {0.05, 0.1, 0.2}) {
        const double lam = (1.0 - std::cos(kappa * s)) / kappa;
        const auto sc = chordViaCurvature(disk, 0.42, lam);
        const double expect = std::sin(kappa * s) / kappa;
        CHECK(sc.plus == Catch::Approx(expect).epsilon(1e-9));
        CHECK(sc.minus == Catch::Approx(expect).epsilon(1e-9));
    }

    // glued body: 20 in-window queries must match the direct chord to 1e-6
    auto body = gluedBody({1.8, 1.2}, {50.0, 5000.0});
    auto [theta0, lambda0] = estimateTec1Window(body);
    REQUIRE(theta0 > M_PI / 2);
    REQUIRE(lambda0 > 0.0);
    Rng rng(11);
    int tested = 0;
    for (int i = 0; i < 200 && tested < 20; ++i) {
        const double th = rng.uniform(M_PI / 2, theta0);
        const double lam = rng.uniform(lambda0 * 1e-3, lambda0 * 0.999);
        double direct;
        SemiChords sc;
        try {
            sc = chordViaCurvature(body, th, lam);
        } catch (const std::domain_error&) {
            continue;
        }
        direct = chord(body, th, lam);
        CHECK(std::fabs(sc.total() - direct) / direct < 1e-6);
        ++tested;
    }
    CHECK(tested == 20);

    // lambda -> 0+: both semi-chords -> 0 monotonically
    double prevPlus = 1e300, prevMinus = 1e300;
    for (double lam : {1e-5, 1e-6, 1e-7, 1e-8}) {
        const auto sc = chordViaCurvature(body, M_PI / 2, lam);
        CHECK(sc.plus < prevPlus);
        CHECK(sc.minus < prevMinus);
        prevPlus = sc.plus;
        prevMinus = sc.minus;
    }
    CHECK(prevPlus < 1e-2);
}

TEST_CASE("predicted chord law") {
    // regime boundary continuity is an exponent identity
    for (double beta : {1.2, 1.5, 1.8}) {
        for (double lam : {1e-6, 1e-4, 1e-2}) {
            const double tb = std::pow(lam, (beta - 1.0) / beta);
            const double left = std::pow(lam, 1.0 / beta);
            const double right = std::sqrt(lam) * std::pow(tb, (2.0 - beta) / (2.0 * (beta - 1.0)));
            CHECK(left == Catch::Approx(right).epsilon(1e-12));
        }
    }
    CHECK(predictedChordAbeta(2.0, 0.0, 1e-4) == Catch::Approx(1e-2).epsilon(1e-12));
    CHECK_THROWS_AS(predictedChordAbeta(1.5, 0.49, 0.5), std::domain_error);

    // measured chord of monomial_body(1.5) at the flat normal: slope 1/1.5 +- 0.05
    auto body = monomialBody(1.5);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i <= 12; ++i) {
        const double lam = 1e-5 * std::pow(1e-2 / 1e-5, i / 12.0);
        const double c = chord(body, M_PI / 2, lam);
        const double lx = std::log(lam), ly = std::log(c);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::fabs(slope - 1.0 / 1.5) < 0.05);
}

TEST_CASE("chord equation root") {
    // beta = 2: f(z) = z^2, so z = sqrt(rhs) exactly
    CHECK(solveChordEquation(2.0, 0.5, 1e-3, 0.1) ==
          Catch::Approx(std::sqrt(1e-3 / (0.25 * std::cos(0.1)))).epsilon(1e-12));
    CHECK(solveChordEquation(1.5, 0.3, 0.0, 0.0) == 0.0);

    const double z = solveChordEquation(1.5, 0.1, 1e-4, 0.0);
    const double rhs = 1e-4 / std::pow(0.1, 1.5);
    const double res = std::fabs(std::pow(z + 1.0, 1.5) - 1.5 * z - 1.0 - rhs);
    CHECK(res <= 1e-12 * rhs);
    // independent sign-change bracketing around the root
    const double f1 = std::pow(z * 0.999 + 1.0, 1.5) - 1.5 * (z * 0.999) - 1.0 - rhs;
    const double f2 = std::pow(z * 1.001 + 1.0, 1.5) - 1.5 * (z * 1.001) - 1.0 - rhs;
    CHECK(f1 < 0.0);
    CHECK(f2 > 0.0);
}

TEST_CASE("piecewise power inversion") {
    CHECK(invertPiecewisePower(2.0, 1.5, 1.0) == 1.0);
    CHECK(invertPiecewisePower(2.0, 1.5, 0.25) == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(invertPiecewisePower(2.0, 1.5, 8.0) == Catch::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("chord monotonicity window") {
    // disk: all chords at fixed lambda equal, ratio exactly 1
    auto disk = ConvexBody::disk(0.3);
    std::vector<double> thetas, lambdas;
    for (int i = 0; i < 8; ++i) thetas.push_back(M_PI / 2 + 0.3 * i / 8);
    for (int i = 1; i <= 8; ++i) lambdas.push_back(0.02 * i / 8);
    auto rep = checkChordMonotonicity(disk, thetas, lambdas);
    CHECK(rep.violations == 0);
    CHECK(rep.maxRatio == Catch::Approx(1.0).epsilon(1e-9));

    // glued body on its estimated window
    auto body = gluedBody({1.8, 1.2}, {50.0, 5000.0});
    auto [theta0, lambda0] = estimateTec1Window(body);
    std::vector<double> th2, la2;
    for (int i = 0; i < 16; ++i) th2.push_back(M_PI / 2 + (theta0 - M_PI / 2) * i / 16);
    for (int i = 0; i < 16; ++i) la2.push_back(lambda0 * (i + 0.5) / 16);
    auto rep2 = checkChordMonotonicity(body, th2, la2);
    CHECK(rep2.violations == 0);
}

TEST_CASE("body serialization round-trip") {
    auto body = gluedBody({1.8, 1.2}, {50.0, 5000.0});
    estimateTec1Window(body);
    const auto j = body.toJson();
    auto body2 = ConvexBody::fromJson(j);
    CHECK(body2.fingerprint() == body.fingerprint());
    CHECK(body2.area() == Catch::Approx(body.area()).epsilon(1e-12));
    for (int i = 0; i < 32; ++i) {
        const double th = 2.0 * M_PI * i / 32;
        CHECK(body2.support(th) == Catch::Approx(body.support(th)).margin(1e-12));
    }
    CHECK(body2.getWindow("tec1_theta0").has_value());

    auto disk = ConvexBody::disk(0.25);
    CHECK(ConvexBody::fromJson(disk.toJson()).radius == 0.25);
}

TEST_CASE("boundary arclength sampling") {
    auto body = monomialBody(1.4);
    const double P = body.perimeter();
    // samples walk counterclockwise and land back at the start
    Vec2 prev = body.sampleByArclength(0.0).point;
    double travelled = 0.0;
    const int n = 400;
    for (int i = 1; i <= n; ++i) {
        const auto s = body.sampleByArclength(P * i / n);
        travelled += (s.point - prev).norm();
        prev = s.point;
    }
    CHECK(travelled == Catch::Approx(P).epsilon(1e-3));
    CHECK((body.sampleByArclength(0.0).point - body.sampleByArclength(P * 0.999999).point).norm() < 1e-3);
}
