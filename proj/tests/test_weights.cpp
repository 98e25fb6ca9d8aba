#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <set>

#include "disclab/fourier/regime.hpp"
#include "disclab/fourier/weights.hpp"
#include "disclab/geometry/close.hpp"
#include "disclab/util/rng.hpp"

using namespace disclab;
using namespace disclab::fourier;
using geo::ConvexBody;

namespace {

// dense-quadrature oracle for w, independent of the production dispatch
double weightOracle(const ConvexBody& body, const Vec2& xi, double tol = 1e-9) {
    const double rho = xi.norm();
    auto f = [&](double d) {
        const Complex v = ftIndicator(body, xi * d, nullptr, 1e-7);
        const double d2 = d * d;
        return d2 * d2 * std::norm(v);
    };
    const int base = 8 + 2 * static_cast<int>(rho * body.diameter());
    return adaptiveCompositeGauss(f, 0.0, 1.0, base, tol, 10, 10).first;
}

std::filesystem::path tempCacheDir() {
    auto p = std::filesystem::temp_directory_path() / "disclab_test_cache";
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("weight at zero frequency") {
    auto square = ConvexBody::rectangle(0.5, 0.5);
    auto disk = ConvexBody::disk(0.25);
    const double a1 = square.area(), a2 = disk.area();
    CHECK(dilationAvgPower(square, {0, 0}).w == Catch::Approx(a1 * a1 / 5.0));
    CHECK(dilationAvgPower(disk, {0, 0}).w == Catch::Approx(a2 * a2 / 5.0));
}

TEST_CASE("rectangle closed form vs quadrature oracle") {
    auto square = ConvexBody::rectangle(0.5, 0.5);
    auto tilted = ConvexBody::rectangle(1.0, 1.0, std::atan(0.5));
    Rng rng(3);
    for (int i = 0; i < 12; ++i) {
        const Vec2 m{std::floor(rng.uniform(-40.0, 40.0)), std::floor(rng.uniform(-40.0, 40.0))};
        if (m.norm() < 1.0) continue;
        for (const auto* b : {&square, &tilted}) {
            const double fast = dilationAvgPower(*b, m).w;
            const double slow = weightOracle(*b, m);
            CHECK(std::fabs(fast - slow) <= 1e-8 * std::max(slow, 1e-14));
        }
    }
    // axis frequencies exercise the one-small-one-large branch
    for (double m1 : {1.0, 7.0, 33.0, 211.0}) {
        const double fast = dilationAvgPower(square, {m1, 0.0}).w;
        const double slow = weightOracle(square, {m1, 0.0});
        CHECK(std::fabs(fast - slow) <= 1e-8 * slow);
    }
}

TEST_CASE("disk weight decay band") {
    auto disk = ConvexBody::disk(0.25);
    double lo = 1e300, hi = 0.0;
    for (double m : {50.0, 80.0, 130.0, 210.0, 340.0, 500.0}) {
        const double w = dilationAvgPower(disk, {m, 0.0}).w;
        const double v = w * m * m * m;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi / lo <= 10.0);
}

TEST_CASE("hybrid route matches direct quadrature") {
    auto mono = geo::monomialBody(1.5);
    ProfileCache cache(mono);
    for (double ang : {M_PI / 2, M_PI / 2 + 0.01, M_PI / 2 + 0.3, 0.0, 1.0}) {
        for (double rho : {300.0, 800.0, 2500.0}) {
            auto prof = cache.forAngle(ang);
            const double hybrid = dilationAvgPowerHybrid(*prof, rho).w;
            const double direct = dilationAvgPowerDirect(mono, dir(ang) * rho, &cache, 1e-9, 9).w;
            // demodulation residual peaks near the switchover and decays in rho
            const double tol = (rho <= 400.0) ? 5e-4 : 1e-4;
            CHECK(std::fabs(hybrid - direct) <= tol * direct);
        }
    }
}

TEST_CASE("single-point spectral identity: sum of weights") {
    // sum over m != 0 of w(m) = |C|/3 - |C|^2/5 (Parseval; diam <= 1)
    auto square = ConvexBody::rectangle(0.5, 0.5);
    const double analytic = 0.25 / 3.0 - 0.0625 / 5.0;  // 17/240
    CHECK(analytic == Catch::Approx(17.0 / 240.0));

    auto dir = tempCacheDir();
    SpectralWeightTable table(square, dir.string());
    double prev = 0.0;
    for (double R : {10.0, 20.0, 40.0}) {
        table.ensureRadius(R);
        double partial = 0.0;
        const long long Ri = static_cast<long long>(R);
        for (long long m1 = -Ri; m1 <= Ri; ++m1)
            for (long long m2 = -Ri; m2 <= Ri; ++m2) {
                if (m1 == 0 && m2 == 0) continue;
                if (m1 * m1 + m2 * m2 > R * R) continue;
                partial += table.lookup(m1, m2).w;
            }
        CHECK(partial > prev);           // monotone nondecreasing in R
        CHECK(partial < analytic);       // nonnegative tail
        const double tailBound = table.tailConstant() * 2.0 * M_PI / R;
        CHECK(analytic - partial < tailBound);
        prev = partial;
    }
}

TEST_CASE("weight cache: bit-exact reload and class counting") {
    auto disk = ConvexBody::disk(0.25);
    auto dir = tempCacheDir();
    {
        SpectralWeightTable table(disk, dir.string());
        table.ensureRadius(20.0);
        CHECK(table.classCount() > 0);
    }
    SpectralWeightTable reload(disk, dir.string());
    CHECK(reload.coveredRadius() == 20.0);
    SpectralWeightTable fresh(disk, tempCacheDir().string());
    fresh.ensureRadius(20.0);
    REQUIRE(reload.classCount() == fresh.classCount());
    auto itA = reload.entries().begin();
    auto itB = fresh.entries().begin();
    for (; itA != reload.entries().end(); ++itA, ++itB) {
        CHECK(itA->first == itB->first);
        CHECK(std::memcmp(&itA->second.w, &itB->second.w, 8) == 0);  // bit-exact
    }

    // disk classes = distinct squared norms (oracle by enumeration)
    std::set<long long> norms;
    for (long long m1 = -100; m1 <= 100; ++m1)
        for (long long m2 = -100; m2 <= 100; ++m2) {
            if (m1 == 0 && m2 == 0) continue;
            if (m1 * m1 + m2 * m2 <= 10000) norms.insert(m1 * m1 + m2 * m2);
        }
    SpectralWeightTable big(disk, tempCacheDir().string());
    big.ensureRadius(100.0);
    CHECK(big.classCount() == norms.size());

    // w(m) = w(-m) exactly via class lookup
    CHECK(big.lookup(3, 4).w == big.lookup(-3, -4).w);
}

TEST_CASE("L1 bounded ratio") {
    auto disk = ConvexBody::disk(0.25);
    std::vector<double> lambdas;
    for (int i = 0; i < 20; ++i) lambdas.push_back(1e-3 * std::pow(100.0, i / 19.0));
    const auto st0 = verifyL1(disk, 0.0, lambdas);
    CHECK(st0.maxOverMin() <= 50.0);
    const auto st1 = verifyL1(disk, M_PI / 3, lambdas);
    CHECK(st1.maxOverMin() <= 50.0);
    for (size_t i = 0; i < lambdas.size(); ++i)
        CHECK(std::fabs(st0.ratios[i] - st1.ratios[i]) <= 1e-6 * st0.ratios[i]);

    auto mono = geo::monomialBody(1.5);
    ProfileCache cache(mono);
    std::vector<double> lam2;
    for (int i = 0; i < 20; ++i) lam2.push_back(1e-4 * std::pow(100.0, i / 19.0));
    const auto st2 = verifyL1(mono, M_PI / 2, lam2, &cache);
    CHECK(st2.maxOverMin() <= 50.0);
}

TEST_CASE("predicted average power law") {
    RegimeWindow win{0, 1.5, 10.0, 1e4, 0.5};
    for (double rho : {20.0, 100.0, 4000.0}) {
        const double tb = std::pow(rho, (1.0 - win.beta) / win.beta);
        const double left = predictedAvgPower(win, rho, tb * (1.0 - 1e-12));
        const double right = predictedAvgPower(win, rho, tb * (1.0 + 1e-12));
        CHECK(left == Catch::Approx(right).epsilon(1e-9));
    }
    RegimeWindow win2{0, 2.0, 10.0, 1e4, 0.5};
    CHECK(predictedAvgPower(win2, 100.0, 0.0) == Catch::Approx(std::pow(100.0, -3.0)));
    CHECK(predictedAvgPower(win2, 100.0, 0.3) == Catch::Approx(std::pow(100.0, -3.0)));
    CHECK_THROWS_AS(predictedAvgPower(win, 5.0, 0.0), std::domain_error);
}

TEST_CASE("L2 decay exponent at the flat normal") {
    auto mono = geo::monomialBody(1.5);
    ProfileCache cache(mono);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i <= 10; ++i) {
        const double rho = 30.0 * std::pow(10.0, i / 10.0);
        const double w = dilationAvgPower(mono, dir(M_PI / 2) * rho, &cache).w;
        const double lx = std::log(rho), ly = std::log(w);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::fabs(slope - (-2.0 - 2.0 / 1.5)) < 0.1);
}

TEST_CASE("angular weight comparison on the glued body") {
    auto glued = geo::gluedBody({1.8, 1.2}, {50.0, 5000.0});
    ProfileCache cache(glued);
    auto [theta0, lambda0] = geo::estimateTec1Window(glued);
    std::vector<double> thetas;
    for (int i = 0; i <= 6; ++i) thetas.push_back(M_PI / 2 + (theta0 - M_PI / 2) * i / 6.0);
    const auto rep = checkAngularComparison(glued, 60.0, thetas, 100.0, &cache);
    CHECK(rep.violations == 0);
    CHECK(rep.maxRatio <= 100.0);
}

TEST_CASE("sqrt chord law away from the flat direction") {
    auto glued = geo::gluedBody({1.8, 1.2}, {50.0, 5000.0});
    std::vector<double> thetas = {0.15, 0.5, 1.0, 1.4, 2.0, 2.8};
    std::vector<double> lambdas;
    for (int i = 0; i <= 8; ++i) lambdas.push_back(1e-4 * std::pow(10.0, i / 4.0));
    const auto rep = checkSqrtChordLaw(glued, thetas, lambdas);
    CHECK(rep.band() <= 10.0);
}
