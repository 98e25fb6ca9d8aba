// Acceptance suite: one pass/fail line per criterion. Exit 0 iff all pass.
//
// Heavy spectral runs reuse the on-disk weight cache (DISCLAB_CACHE or
// ./disclab_cache), so repeat runs are much faster than the first.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "disclab/discrepancy/d2.hpp"
#include "disclab/geometry/chords.hpp"
#include "disclab/geometry/close.hpp"
#include "disclab/lab/config.hpp"
#include "disclab/lab/scaling.hpp"
#include "disclab/lab/verify.hpp"
#include "disclab/pointsets/generators.hpp"

using namespace disclab;

namespace {

int failures = 0;
std::string filter;

bool wanted(const char* id) { return filter.empty() || filter.find(id) != std::string::npos; }

void line(const char* id, bool pass, const std::string& detail) {
    std::printf("[%s] %s — %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string cacheDir() { return fourier::defaultCacheDir(); }

// C1 + C2: spectral vs direct cross-validation and the analytic single-point value.
void criterion1and2() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case {
        const char* name;
        geo::ConvexBody body;
        double radius;
    };
    std::vector<Case> cases;
    cases.push_back({"square(1/2)", geo::ConvexBody::rectangle(0.5, 0.5), 512.0});
    cases.push_back({"disk(1/4)", geo::ConvexBody::disk(0.25), 512.0});
    cases.push_back({"monomial(1.5)", geo::monomialBody(1.5), 320.0});

    bool all = true;
    std::string worst;
    double worstRatio = 0.0;
    for (auto& c : cases) {
        fourier::SpectralWeightTable table(c.body, cacheDir());
        for (size_t N : {1, 16, 64}) {
            auto ps = pts::randomPointSet(static_cast<long long>(N), 100 + N);
            disc::DirectParams prm;
            prm.samples = 1000000;
            prm.seed = 7 * N + 1;
            const auto direct = disc::d2Direct(c.body, ps, prm);
            const auto spectral = disc::d2Spectral(c.body, ps, c.radius, table);
            const double allow = 3.0 * direct.error + spectral.error;
            const double dev = std::fabs(spectral.value - direct.value);
            if (dev / allow > worstRatio) {
                worstRatio = dev / allow;
                worst = std::string(c.name) + " N=" + std::to_string(N) + " dev=" + fmtDouble(dev) +
                        " allow=" + fmtDouble(allow);
            }
            all = all && dev <= allow;
        }
    }
    line("C1 spectral-direct equivalence", all,
         "9 cases; worst dev/allowance at " + worst + " (" + fmtDouble(seconds(t0)) + " s)");

    // C2: N = 1 analytic oracle for the square of side 1/2
    auto square = geo::ConvexBody::rectangle(0.5, 0.5);
    disc::PointSet one;
    one.points = {{0.3711, 0.6103}};
    disc::DirectParams prm;
    prm.samples = 1000000;
    prm.seed = 2;
    const auto direct = disc::d2Direct(square, one, prm);
    fourier::SpectralWeightTable table(square, cacheDir());
    const auto spectral = disc::d2Spectral(square, one, 512.0, table);
    const double analytic = 17.0 / 240.0;
    const bool okDirect = std::fabs(direct.value - analytic) <= 3.0 * direct.error;
    const bool okSpectral = std::fabs(spectral.value - analytic) <= spectral.error;
    line("C2 single-point analytic value 17/240", okDirect && okSpectral,
         "direct " + fmtDouble(direct.value) + " +- " + fmtDouble(direct.error) + ", spectral " +
             fmtDouble(spectral.value) + " (tail " + fmtDouble(spectral.error) + ")");
}

void criterion3() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = lab::verifyL1Suite(cacheDir());
    bool all = true;
    double worst = 0.0;
    for (const auto& c : checks) {
        all = all && c.pass;
        (void)c;
    }
    (void)worst;
    line("C3 L1 bounded ratio (disk + monomial)", all,
         std::to_string(checks.size()) + " checks (" + fmtDouble(seconds(t0)) + " s)");
}

void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = lab::verifyAuxSuite();
    bool all = true;
    std::string detail;
    for (const auto& c : checks) {
        all = all && c.pass;
        if (!c.pass) detail += c.name + "; ";
    }
    line("C4 chord power-law exponents", all,
         detail.empty() ? std::to_string(checks.size()) + " checks (" + fmtDouble(seconds(t0)) + " s)"
                        : detail);
}

void criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    std::string detail;

    {  // disk + square lattices
        lab::ScalingConfig cfg;
        cfg.body = geo::ConvexBody::disk(0.25);
        cfg.family = "square_lattice";
        for (int e = 8; e <= 16; ++e) cfg.schedule.push_back(std::pow(2.0, e));
        cfg.tailFrac = 0.02;
        cfg.cacheDir = cacheDir();
        const auto rep = lab::runScaling(cfg);
        all = all && rep.pass;
        detail += "disk slope " + fmtDouble(rep.global->slope) + "; ";
    }
    for (double beta : {1.2, 1.5, 1.8}) {  // monomial bodies + anisotropic lattices
        lab::ScalingConfig cfg;
        cfg.body = geo::monomialBody(beta);
        cfg.family = "anisotropic";
        cfg.beta = beta;
        for (int e = 8; e <= 16; ++e) cfg.schedule.push_back(std::pow(2.0, e));
        cfg.tailFrac = 0.05;
        cfg.cacheDir = cacheDir();
        const auto rep = lab::runScaling(cfg);
        all = all && rep.pass;
        detail += "beta " + fmtDouble(beta) + " slope " + fmtDouble(rep.global->slope) + " (target " +
                  fmtDouble(rep.target) + "); ";
    }
    {  // unit square (tilted off the lattice axes by a badly approximable
       //  slope) + aligned lattices: log N band
        lab::ScalingConfig cfg;
        cfg.body = geo::ConvexBody::rectangle(1.0, 1.0, std::atan(0.61803398874989479));
        cfg.family = "square_lattice";
        for (int e = 6; e <= 16; ++e) cfg.schedule.push_back(std::pow(2.0, e));
        cfg.method = "direct";
        cfg.samples = 2000000;
        cfg.seed = 42;
        cfg.mode = "logband";
        cfg.logBand = 10.0;
        const auto rep = lab::runScaling(cfg);
        all = all && rep.pass;
        detail += "square d2/logN band " + fmtDouble(rep.logBandRatio);
    }
    line("C5 scaling exponents", all, detail + " (" + fmtDouble(seconds(t0)) + " s)");
}

void criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    lab::OscillationConfig cfg;
    cfg.body = geo::gluedBody({1.8, 1.2}, {15.0, 2000.0});
    cfg.betas = {1.8, 1.2};
    for (double e = 6.0; e <= 17.5; e += 0.75) cfg.schedule.push_back(std::pow(2.0, e));
    cfg.tailFrac = 0.1;
    cfg.cacheDir = cacheDir();
    cfg.tolerance = 0.1;
    const auto rep = lab::runOscillationDemo(cfg);
    std::string detail;
    for (const auto& w : rep.windows)
        detail += "target " + fmtDouble(w.target) + ": " +
                  (w.matched ? "slope " + fmtDouble(w.slope) + " on N=[" + fmtDouble(w.nLo) + "," +
                                   fmtDouble(w.nHi) + "]"
                             : "window not found") +
                  "; ";
    line("C6 oscillation demo (glued 1.8 then 1.2)", rep.pass,
         detail + "(" + fmtDouble(seconds(t0)) + " s)");
}

void criterion7() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = lab::verifyTec1Suite();
    bool all = true;
    std::string detail;
    for (const auto& c : checks) {
        all = all && c.pass;
        if (!c.pass) detail += c.name + "; ";
    }
    line("C7 glued-construction integrity + Tec1", all,
         detail.empty() ? std::to_string(checks.size()) + " checks (" + fmtDouble(seconds(t0)) + " s)"
                        : detail);
}

void criterion8() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = lab::verifyCmSuite(100);
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    line("C8 Cassels-Montgomery (100 random + M family)", all,
         "(" + fmtDouble(seconds(t0)) + " s)");
}

void criterion9() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = lab::verifyUseLemSuite(50, cacheDir());
    bool all = true;
    for (const auto& c : checks) all = all && c.pass;
    line("C9 UseLem nested inequality (50 sets, eta 1e-2/1e-4)", all,
         "(" + fmtDouble(seconds(t0)) + " s)");
}

void criterion10() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = lab::verifyDominationSuite();
    bool all = true;
    std::string detail;
    for (const auto& c : checks) {
        all = all && c.pass;
        if (c.name.find("slack") != std::string::npos) detail = c.detail;
    }
    line("C10 lower-bound machinery (phi, xyz, domination)", all,
         detail + " (" + fmtDouble(seconds(t0)) + " s)");
}

void criterion11() {
    bool all = true;
    auto d4 = pts::greedyDecompose(4, 0.5);
    all = all && d4.parts.size() == 1 && d4.parts[0] == 8 && d4.remainder == 0;
    Rng rng(7);
    for (int t = 0; t < 1000 && all; ++t) {
        const long long N = 1 + static_cast<long long>(rng.below(1000000));
        const double alpha = rng.uniform(0.41, 0.49);
        const auto d = pts::greedyDecompose(N, alpha);
        long long sum = d.remainder;
        for (long long s : d.sizes) sum += s;
        all = all && sum == N;
        for (size_t j = 0; j + 1 < d.parts.size(); ++j) all = all && d.parts[j] > d.parts[j + 1];
        const double bound = std::pow(4.0, static_cast<double>(d.parts.size())) *
                             std::pow(static_cast<double>(N),
                                      std::pow(1.0 - alpha, static_cast<double>(d.parts.size())));
        all = all && static_cast<double>(d.remainder) <= bound + 1e-6;
    }
    line("C11 greedy decomposition invariants (1000 random)", all, "n1(4, 0.5) = 8");
}

void criterion12() {
    const auto t0 = std::chrono::steady_clock::now();
    // spectral: bit-identical across 1 vs 8 workers (fresh caches)
    namespace fs = std::filesystem;
    auto body = geo::monomialBody(1.5);
    const auto base = fs::temp_directory_path() / "disclab_acc_det";
    fs::remove_all(base);
    fourier::SpectralWeightTable t1(body, (base / "w1").string());
    fourier::SpectralWeightTable t8(body, (base / "w8").string());
    auto ps = pts::randomPointSet(16, 99);
    const auto a = disc::d2Spectral(body, ps, 96.0, t1, 1);
    const auto b = disc::d2Spectral(body, ps, 96.0, t8, 8);
    bool spectralSame = std::memcmp(&a.value, &b.value, 8) == 0;

    // direct: bit-identical at fixed seed, for 1 and 8 workers
    disc::DirectParams prm;
    prm.samples = 200000;
    prm.seed = 31;
    prm.threads = 1;
    const auto d1 = disc::d2Direct(body, ps, prm);
    prm.threads = 8;
    const auto d8 = disc::d2Direct(body, ps, prm);
    prm.threads = 1;
    const auto d1b = disc::d2Direct(body, ps, prm);
    const bool directSame =
        std::memcmp(&d1.value, &d8.value, 8) == 0 && std::memcmp(&d1.value, &d1b.value, 8) == 0;
    line("C12 determinism across worker counts", spectralSame && directSame,
         std::string("spectral ") + (spectralSame ? "bit-identical" : "DIFFERS") + ", direct " +
             (directSame ? "bit-identical" : "DIFFERS") + " (" + fmtDouble(seconds(t0)) + " s)");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) filter = argv[1];
    const auto t0 = std::chrono::steady_clock::now();
    if (wanted("c1") || wanted("c2")) criterion1and2();
    if (wanted("c3")) criterion3();
    if (wanted("c4")) criterion4();
    if (wanted("c5")) criterion5();
    if (wanted("c6")) criterion6();
    if (wanted("c7")) criterion7();
    if (wanted("c8")) criterion8();
    if (wanted("c9")) criterion9();
    if (wanted("c10")) criterion10();
    if (wanted("c11")) criterion11();
    if (wanted("c12")) criterion12();
    std::printf("%s — %d failure(s), total %.1f s\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures, seconds(t0));
    return failures == 0 ? 0 : 1;
}
