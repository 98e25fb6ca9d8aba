#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "disclab/discrepancy/counting.hpp"
#include "disclab/discrepancy/pointset.hpp"
#include "disclab/fourier/weights.hpp"
#include "disclab/util/parallel.hpp"
#include "disclab/util/rng.hpp"
#include "disclab/util/summation.hpp"

namespace disclab::disc {

struct D2Estimate {
    double value = 0.0;
    std::string method;     // "direct" | "spectral"
    double error = 0.0;     // standard error (direct) or truncation bound (spectral)
    bool tailWarning = false;
    nlohmann::json params = nlohmann::json::object();
};

// ---------------------------------------------------------------------------
// Direct (tau, delta)-averaged estimator.

struct DirectParams {
    size_t samples = 1000000;
    uint64_t seed = 1;
    int strata = 16;  // stratified in delta
    int threads = 0;
};

namespace detail {

/// Static orthogonal-range counter (block decomposition, v-sorted blocks).
class RangeCounter {
  public:
    RangeCounter(std::vector<std::pair<double, double>> pts, size_t blockSize = 1024)
        : block_(blockSize) {
        std::sort(pts.begin(), pts.end());
        u_.reserve(pts.size());
        v_.reserve(pts.size());
        for (auto& [u, v] : pts) {
            u_.push_back(u);
            v_.push_back(v);
        }
        const size_t nb = (pts.size() + block_ - 1) / block_;
        sortedV_.resize(nb);
        for (size_t b = 0; b < nb; ++b) {
            const size_t lo = b * block_, hi = std::min(pts.size(), lo + block_);
            sortedV_[b].assign(v_.begin() + lo, v_.begin() + hi);
            std::sort(sortedV_[b].begin(), sortedV_[b].end());
        }
    }

    /// #points with u in [u1, u2] and v in [v1, v2] (closed box).
    long long count(double u1, double u2, double v1, double v2) const {
        if (u_.empty() || u1 > u2 || v1 > v2) return 0;
        const size_t lo = std::lower_bound(u_.begin(), u_.end(), u1) - u_.begin();
        const size_t hi = std::upper_bound(u_.begin(), u_.end(), u2) - u_.begin();
        if (lo >= hi) return 0;
        long long total = 0;
        size_t i = lo;
        while (i < hi) {
            const size_t b = i / block_;
            const size_t bLo = b * block_, bHi = std::min(u_.size(), bLo + block_);
            if (i == bLo && hi >= bHi) {  // whole block inside
                const auto& sv = sortedV_[b];
                total += std::upper_bound(sv.begin(), sv.end(), v2) -
                         std::lower_bound(sv.begin(), sv.end(), v1);
                i = bHi;
            } else {
                const size_t stop = std::min(hi, bHi);
                for (; i < stop; ++i)
                    if (v_[i] >= v1 && v_[i] <= v2) ++total;
            }
        }
        return total;
    }

  private:
    size_t block_;
    std::vector<double> u_;
    std::vector<double> v_;
    std::vector<std::vector<double>> sortedV_;
};

}  // namespace detail

/// Monte Carlo estimate of D2 = E |D(P, tau + delta C)|^2 with delta
/// stratified; per-block seeded RNG streams and fixed-order reduction give
/// bit-identical results for any worker count. Rectangle bodies with large
/// point sets use an orthogonal-range counting fast path.
inline D2Estimate d2Direct(const geo::ConvexBody& body, const PointSet& ps, const DirectParams& prm) {
    ps.validate();
    const size_t N = ps.size();
    const int strata = std::max(1, prm.strata);
    const size_t perStratum = std::max<size_t>(1, prm.samples / strata);
    constexpr size_t kBlock = 8192;
    const size_t blocksPerStratum = (perStratum + kBlock - 1) / kBlock;

    // rectangle fast path
    std::unique_ptr<detail::RangeCounter> counter;
    auto rect = body.asRectangle();
    if (rect && N >= 2048) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(9 * N);
        for (const Vec2& p : ps.points)
            for (int nx = -1; nx <= 1; ++nx)
                for (int ny = -1; ny <= 1; ++ny) {
                    const Vec2 q{p.x + nx, p.y + ny};
                    pts.push_back({q.dot(rect->e1), q.dot(rect->e2)});
                }
        counter = std::make_unique<detail::RangeCounter>(std::move(pts));
    }

    const double area = body.area();
    struct BlockResult {
        double sum = 0.0, sum2 = 0.0;
        size_t n = 0;
    };
    std::vector<BlockResult> results(static_cast<size_t>(strata) * blocksPerStratum);

    auto runBlock = [&](size_t taskIdx) {
        const size_t stratum = taskIdx / blocksPerStratum;
        const size_t block = taskIdx % blocksPerStratum;
        const size_t first = block * kBlock;
        const size_t count = std::min(kBlock, perStratum - std::min(perStratum, first));
        if (count == 0) return;
        Rng rng(prm.seed, (stratum << 32) | block);
        BlockResult res;
        for (size_t i = 0; i < count; ++i) {
            const double delta = (stratum + rng.uniform()) / strata;
            const Vec2 tau{rng.uniform(), rng.uniform()};
            double D;
            if (counter) {
                const Vec2 c = tau + rect->center * delta;
                const double u = c.dot(rect->e1), v = c.dot(rect->e2);
                const long long cnt = counter->count(u - delta * rect->h1, u + delta * rect->h1,
                                                     v - delta * rect->h2, v + delta * rect->h2);
                D = static_cast<double>(cnt) - static_cast<double>(N) * delta * delta * area;
            } else {
                D = countDiscrepancy(body, ps, tau, delta);
            }
            res.sum += D * D;
            res.sum2 += D * D * D * D;
            res.n += 1;
        }
        results[taskIdx] = res;
    };
    parallelFor(results.size(), runBlock, prm.threads);

    double value = 0.0, varSum = 0.0;
    for (int s = 0; s < strata; ++s) {
        double sum = 0.0, sum2 = 0.0;
        size_t n = 0;
        for (size_t b = 0; b < blocksPerStratum; ++b) {
            const auto& r = results[s * blocksPerStratum + b];
            sum += r.sum;
            sum2 += r.sum2;
            n += r.n;
        }
        const double mean = sum / n;
        const double var = std::max(0.0, sum2 / n - mean * mean);
        value += mean / strata;
        varSum += var / (static_cast<double>(strata) * strata * n);
    }
    D2Estimate est;
    est.value = value;
    est.method = "direct";
    est.error = std::sqrt(varSum);
    est.params = {{"samples", perStratum * strata},
                  {"seed", prm.seed},
                  {"strata", strata},
                  {"fast_path", counter != nullptr}};
    return est;
}

// ---------------------------------------------------------------------------
// Spectral evaluator (Parseval route).

/// D2 = sum over 0 < |m| <= R of |S(m)|^2 w(m), plus a reported tail bound
/// N^2 chat 2 pi / R with chat = 4 max over the outer half-shell of
/// w(m) |m|^3. Shell sums are Kahan-compensated and merged in shell order,
/// so the value is independent of the worker count.
inline D2Estimate d2Spectral(const geo::ConvexBody& body, const PointSet& ps, double R,
                             fourier::SpectralWeightTable& table, int threads = 0) {
    ps.validate();
    if (table.body().fingerprint() != body.fingerprint())
        throw std::invalid_argument("d2Spectral: weight table belongs to a different body");
    const size_t N = ps.size();
    table.ensureRadius(R, threads);
    const long long Ri = static_cast<long long>(R);
    std::vector<double> shellSums(static_cast<size_t>(Ri) + 1, 0.0);

    parallelFor(static_cast<size_t>(Ri), [&](size_t idx) {
        const long long r = static_cast<long long>(idx) + 1;  // shell [r^2, (r+1)^2)
        const long long lo2 = r * r;
        const long long hi2 = std::min((r + 1) * (r + 1) - 1, Ri * Ri);
        if (lo2 > hi2) return;
        KahanSum acc;
        // half-plane (m1 > 0) plus the ray (0, m2 > 0); factor 2 by conjugacy
        for (long long m1 = 0; m1 <= r + 1; ++m1) {
            const long long rem = hi2 - m1 * m1;
            if (rem < 0) break;
            const long long m2max = static_cast<long long>(std::sqrt(static_cast<double>(rem))) + 2;
            for (long long m2 = (m1 == 0) ? 1 : -m2max; m2 <= m2max; ++m2) {
                const long long n2 = m1 * m1 + m2 * m2;
                if (n2 < lo2 || n2 > hi2 || n2 == 0) continue;
                if (m1 == 0 && m2 < 0) continue;
                const double s2 = expSumNorm2(ps, m1, m2);
                const double w = table.lookup(m1, m2).w;
                acc.add(2.0 * s2 * w);
            }
        }
        shellSums[static_cast<size_t>(r)] = acc.value();
    }, threads);

    D2Estimate est;
    est.value = pairwiseSum(shellSums);
    est.method = "spectral";
    const double chat = table.tailConstant();
    est.error = static_cast<double>(N) * N * chat * 2.0 * M_PI / R;
    est.tailWarning = est.error > 0.1 * est.value;
    est.params = {{"radius", R}, {"tail_constant", chat}, {"N", N}};
    return est;
}

/// Lattice specialization: for the full G x L lattice the exponential sum is
/// supported on the sublattice GZ x LZ with |S|^2 = (GL)^2, so
/// D2 = G^2 L^2 sum over sublattice 0 < |m| <= R of w(m). The tail bound
/// accounts for the sublattice density: N chat 2 pi / R.
inline D2Estimate d2SpectralLattice(const geo::ConvexBody& body, long long G, long long L, double R,
                                    fourier::SpectralWeightTable& table, int threads = 0) {
    if (G < 1 || L < 1) throw std::domain_error("d2SpectralLattice: need G, L >= 1");
    if (table.body().fingerprint() != body.fingerprint())
        throw std::invalid_argument("d2SpectralLattice: weight table belongs to a different body");
    table.ensureRadius(R, threads);
    const double N = static_cast<double>(G) * static_cast<double>(L);
    KahanSum acc;
    const long long j1max = static_cast<long long>(R / G);
    for (long long j1 = 0; j1 <= j1max; ++j1) {
        const double x = static_cast<double>(j1 * G);
        const double rem = R * R - x * x;
        if (rem < 0.0) break;
        const long long j2max = static_cast<long long>(std::sqrt(rem) / L);
        for (long long j2 = (j1 == 0) ? 1 : -j2max; j2 <= j2max; ++j2) {
            if (j1 == 0 && j2 < 1) continue;
            const long long m1 = j1 * G, m2 = j2 * L;
            if (static_cast<double>(m1) * m1 + static_cast<double>(m2) * m2 > R * R) continue;
            acc.add(2.0 * table.lookup(m1, m2).w);
        }
    }
    D2Estimate est;
    est.value = N * N * acc.value();
    est.method = "spectral";
    const double chat = table.tailConstant();
    est.error = N * chat * 2.0 * M_PI / R;
    est.tailWarning = est.error > 0.1 * est.value;
    est.params = {{"radius", R}, {"G", G}, {"L", L}, {"tail_constant", chat}};
    return est;
}

// ---------------------------------------------------------------------------

struct NestedCheck {
    double d2A = 0.0, d2B = 0.0;
    double errA = 0.0, errB = 0.0;
    double eta = 0.0;
    double bound = 0.0;  // 2 N^2 sqrt(eta) + 3 (errA + errB)
    bool holds = false;
    bool nested = true;
    Vec2 witness{};
};

namespace detail {

inline Vec2 boundaryPoint(const geo::ConvexBody& body, double t) {  // t in [0, 1)
    switch (body.variant) {
        case geo::BodyVariant::Disk:
            return dir(2.0 * M_PI * t) * body.radius;
        case geo::BodyVariant::Polygon: {
            const double P = body.perimeter();
            double s = t * P;
            for (size_t i = 0; i < body.vertices.size(); ++i) {
                const Vec2& a = body.vertices[i];
                const Vec2& b = body.vertices[(i + 1) % body.vertices.size()];
                const double len = (b - a).norm();
                if (s <= len) return a + (b - a) * (s / len);
                s -= len;
            }
            return body.vertices[0];
        }
        default:
            return body.sampleByArclength(t * body.perimeter()).point;
    }
}

}  // namespace detail

/// Nested-body comparison: verifies B inside A by boundary sampling, then
/// checks |D2(P, A) - D2(P, B)| <= 2 N^2 eta^(1/2) + 3 (combined error)
/// with eta = |A| - |B|, both sides evaluated with the same method.
inline NestedCheck compareNested(const geo::ConvexBody& A, const geo::ConvexBody& B, const PointSet& ps,
                                 fourier::SpectralWeightTable& tableA,
                                 fourier::SpectralWeightTable& tableB, double R, int threads = 0,
                                 size_t boundarySamples = 10000) {
    NestedCheck out;
    for (size_t i = 0; i < boundarySamples; ++i) {
        const Vec2 q = detail::boundaryPoint(B, static_cast<double>(i) / boundarySamples);
        // shrink slightly toward the center so roundoff on the shared
        // boundary of A = B does not produce spurious witnesses
        const Vec2 qin = q * (1.0 - 1e-12);
        if (!A.contains(qin)) {
            out.nested = false;
            out.witness = q;
            return out;
        }
    }
    out.eta = A.area() - B.area();
    if (out.eta < -1e-12) {
        out.nested = false;
        return out;
    }
    out.eta = std::max(0.0, out.eta);
    const auto eA = d2Spectral(A, ps, R, tableA, threads);
    const auto eB = d2Spectral(B, ps, R, tableB, threads);
    out.d2A = eA.value;
    out.d2B = eB.value;
    out.errA = eA.error;
    out.errB = eB.error;
    const double N = static_cast<double>(ps.size());
    out.bound = 2.0 * N * N * std::sqrt(out.eta) + 3.0 * (out.errA + out.errB);
    out.holds = std::fabs(out.d2A - out.d2B) <= out.bound;
    return out;
}

}  // namespace disclab::disc
