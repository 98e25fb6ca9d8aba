#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "disclab/bounds/cm.hpp"
#include "disclab/bounds/phi.hpp"
#include "disclab/bounds/xyz.hpp"
#include "disclab/pointsets/generators.hpp"
#include "disclab/util/rng.hpp"

using namespace disclab;
using namespace disclab::bounds;

TEST_CASE("cassels-montgomery: single point family") {
    // N = 1, region = closed square of side 2M+1, r = 1/2:
    // lhs = (2M+1)^2 - 1, rhs = (2M+1)^2 / 4 - 5 pi / 2
    disc::PointSet one;
    one.points = {{0.0, 0.0}};
    for (int M = 1; M <= 32; ++M) {
        const double side = 2.0 * M + 1.0;
        auto region = geo::ConvexBody::rectangle(side, side);
        const auto rec = cmVerify(region, 0.5, one);
        CHECK(rec.lhs == Catch::Approx(side * side - 1.0).margin(1e-6));
        CHECK(rec.rhs == Catch::Approx(side * side / 4.0 - 2.5 * M_PI));
        CHECK(rec.holds);
    }
}

TEST_CASE("cassels-montgomery: vacuous flag") {
    disc::PointSet ps = pts::randomPointSet(64, 3);
    auto region = geo::ConvexBody::rectangle(4.0, 4.0);  // |C| = 16 << 8 pi (r^2+1) N
    const auto rec = cmVerify(region, 1.0, ps);
    CHECK(rec.vacuous);
    CHECK(rec.holds);  // nonneg lhs >= negative rhs
}

TEST_CASE("cassels-montgomery: random sets, non-vacuous") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        auto ps = pts::randomPointSet(64, seed);
        auto region = geo::ConvexBody::rectangle(256.0, 256.0);
        const auto rec = cmVerify(region, 2.0, ps);
        CHECK_FALSE(rec.vacuous);
        CHECK(rec.holds);
    }
    // disks as regions exercise the non-polygonal row ranges
    auto ps = pts::randomPointSet(16, 5);
    auto region = geo::ConvexBody::disk(40.0);
    const auto rec = cmVerify(region, 1.5, ps);
    CHECK(rec.holds);
}

TEST_CASE("phi weight basics") {
    PhiSpec spec;
    spec.X = 120.0;
    spec.Y = 40.0;
    spec.rho1 = 8.0;

    CHECK(phiWeight(spec, 3, 2) == 0.0);  // inside the excluded ball

    // on the long axis with |m| < Y/2: inside for every omega
    CHECK(phiWeight(spec, 15, 0) == Catch::Approx(0.2));

    // range and symmetry on a scan
    Rng rng(7);
    for (int t = 0; t < 2000; ++t) {
        const long long m1 = static_cast<long long>(rng.below(301)) - 150;
        const long long m2 = static_cast<long long>(rng.below(301)) - 150;
        const double p = phiWeight(spec, m1, m2);
        CHECK(p >= 0.0);
        CHECK(p <= 0.2 + 1e-15);
        CHECK(p == phiWeight(spec, -m1, -m2));
        if (m1 * m1 + m2 * m2 > phiReach(spec) * phiReach(spec)) CHECK(p == 0.0);
    }

    // vanishing in the rotated-away sector: |m| >= Y and angle within 1/10
    // of the y-axis
    for (double rho : {45.0, 60.0, 58.0}) {
        for (double dth : {-0.09, 0.0, 0.09}) {
            const Vec2 m = dir(M_PI / 2 + dth) * rho;
            CHECK(phiWeight(spec, m) == 0.0);
        }
    }

    // mid-region bound Phi(m) <= pi Y / (2 |m|) on a 10^4-point scan
    int checked = 0;
    for (int t = 0; t < 40000 && checked < 10000; ++t) {
        const long long m1 = static_cast<long long>(rng.below(241)) - 120;
        const long long m2 = static_cast<long long>(rng.below(241)) - 120;
        const double rho = std::sqrt(static_cast<double>(m1 * m1 + m2 * m2));
        if (rho < spec.Y || rho > spec.X) continue;
        ++checked;
        CHECK(phiWeight(spec, m1, m2) <= M_PI * spec.Y / (2.0 * rho) + 1e-12);
    }
    CHECK(checked == 10000);

    // oracle cross-check: quadrature of the indicator over omega
    for (int t = 0; t < 25; ++t) {
        const long long m1 = static_cast<long long>(rng.below(241)) - 120;
        const long long m2 = static_cast<long long>(rng.below(241)) - 120;
        double acc = 0.0;
        const int K = 40000;
        for (int k = 0; k < K; ++k) {
            const double w = -0.1 + 0.2 * (k + 0.5) / K;
            const double c = std::cos(w), s = std::sin(w);
            const double u = c * m1 + s * m2, v = -s * m1 + c * m2;
            const bool inside = std::fabs(u) <= spec.X / 2 && std::fabs(v) <= spec.Y / 2 &&
                                m1 * m1 + m2 * m2 > spec.rho1 * spec.rho1;
            acc += inside ? 0.2 / K : 0.0;
        }
        CHECK(phiWeight(spec, m1, m2) == Catch::Approx(acc).margin(2e-5));
    }
}

TEST_CASE("xyz parameters") {
    {
        const auto p = xyzParams(1024.0, 2.0, 0.0);
        CHECK(p.X == Catch::Approx(32.0));
        CHECK(p.Y == Catch::Approx(32.0));
        CHECK(p.Z == Catch::Approx(std::pow(1024.0, -1.5)));
    }
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        const double N = rng.uniform(16.0, 1e7);
        const double beta = rng.uniform(1.05, 1.95);
        const double eps = rng.uniform(0.0, 0.5);
        const auto p = xyzParams(N, beta, eps);
        CHECK(p.X * p.Y == Catch::Approx(std::pow(N, 1.0 + eps)).epsilon(1e-9));
        // equalization: Y^(-2-2/beta) = Y^-1 X^-2
        const double lhs = std::pow(p.Y, -2.0 - 2.0 / beta);
        const double rhs = 1.0 / (p.Y * p.X * p.X);
        CHECK(lhs == Catch::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("weight domination scan") {
    const double beta = 1.5;
    const double N = 4096.0;
    const auto xyz = xyzParams(N, beta, 0.05);
    PhiSpec spec;
    spec.X = xyz.X;
    spec.Y = xyz.Y;
    spec.rho1 = 8.0;
    fourier::RegimeWindow window{0, beta, 8.0, 1e9, 0.6};
    const auto rep = verifyDomination(spec, xyz, beta, window);
    CHECK(rep.nonzeroPhi > 0);
    CHECK(rep.worstSlack <= 8.0);

    // stability: 4x larger N at most doubles the worst slack
    const auto xyz4 = xyzParams(4.0 * N, beta, 0.05);
    PhiSpec spec4;
    spec4.X = xyz4.X;
    spec4.Y = xyz4.Y;
    spec4.rho1 = 8.0;
    const auto rep4 = verifyDomination(spec4, xyz4, beta, window);
    CHECK(rep4.worstSlack <= 2.0 * rep.worstSlack + 1e-12);
}

TEST_CASE("lower bound witness") {
    const auto xyz = xyzParams(4096.0, 1.5, 0.05);
    PhiSpec spec;
    spec.X = xyz.X;
    spec.Y = xyz.Y;
    spec.rho1 = 8.0;

    // single point: the witness equals Z * sum Phi(m) (direct oracle)
    disc::PointSet one;
    one.points = {{0.25, 0.75}};
    const auto rec = lowerBoundWitness(spec, xyz, one);
    double direct = 0.0;
    const long long top = static_cast<long long>(phiReach(spec)) + 1;
    for (long long m2 = -top; m2 <= top; ++m2)
        for (long long m1 = -top; m1 <= top; ++m1) direct += phiWeight(spec, m1, m2);
    CHECK(rec.phiWeightedSum == Catch::Approx(xyz.Z * direct).epsilon(1e-12));

    // vacuous CM floor when N^eps < 4 pi (rho1^2 + 1)
    auto psBig = pts::randomPointSet(64, 3);
    const auto xyzSmall = xyzParams(64.0, 1.5, 0.05);
    PhiSpec specSmall;
    specSmall.X = xyzSmall.X;
    specSmall.Y = xyzSmall.Y;
    specSmall.rho1 = 8.0;
    const auto recSmall = lowerBoundWitness(specSmall, xyzSmall, psBig);
    CHECK(recSmall.vacuous);

    // full G x L lattice with G > X: the sweep support meets the sublattice
    // only where the exp-sum identity allows; consistency with expSum
    auto [lp, lattice] = pts::anisotropicLattice(65536.0, 1.5);
    REQUIRE(static_cast<double>(lp.G) > xyz.X);
    const auto recLat = lowerBoundWitness(spec, xyz, lattice);
    double filtered = 0.0;
    for (long long m2 = -top; m2 <= top; ++m2)
        for (long long m1 = -top; m1 <= top; ++m1) {
            if (m1 % lp.G != 0 || m2 % lp.L != 0) continue;  // S vanishes off the sublattice
            const double N2 = static_cast<double>(lp.N()) * lp.N();
            filtered += phiWeight(spec, m1, m2) * N2;
        }
    CHECK(recLat.phiWeightedSum == Catch::Approx(xyz.Z * filtered).margin(xyz.Z * 1e-4 * (filtered + 1.0)));
}
