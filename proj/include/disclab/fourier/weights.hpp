#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "disclab/fourier/ft.hpp"
#include "disclab/fourier/profile.hpp"
#include "disclab/geometry/body.hpp"
#include "disclab/util/io.hpp"
#include "disclab/util/parallel.hpp"
#include "disclab/util/summation.hpp"
#include "disclab/util/quadrature.hpp"

namespace disclab::fourier {

namespace detail {

/// cosmom(q, c) = int_0^1 d^q cos(c d) dd ; sinmom analogous.
/// Taylor for small |c|, forward by-parts recurrence otherwise.
inline void trigMoments(int qmax, double c, double* cosm, double* sinm) {
    const double ac = std::fabs(c);
    if (ac < 2.0 * qmax + 4.0) {
        for (int q = 0; q <= qmax; ++q) {
            double cs = 0.0, sn = 0.0, term = 1.0;
            for (int j = 0; j < 80; ++j) {
                // cos: (-1)^j c^(2j) / (2j)! / (q + 2j + 1)
                cs += term / (q + 2 * j + 1);
                const double t2 = term * c / (2 * j + 1);
                sn += t2 / (q + 2 * j + 2);
                term *= -c * c / ((2 * j + 1) * (2 * j + 2));
                if (std::fabs(term) < 1e-19 && j > 2) break;
            }
            cosm[q] = cs;
            sinm[q] = sn;  // carries the sign of c through the odd powers
        }
        return;
    }
    const double sc = std::sin(c), cc = std::cos(c);
    cosm[0] = sc / c;
    sinm[0] = (1.0 - cc) / c;
    for (int q = 1; q <= qmax; ++q) {
        cosm[q] = sc / c - (q / c) * sinm[q - 1];
        sinm[q] = -cc / c + (q / c) * cosm[q - 1];
    }
}

/// Iw(a, b) = int_0^1 d^4 sinc^2(a d) sinc^2(b d) dd  (exact where possible).
inline double rectWeightIntegral(double a, double b) {
    double s = std::fabs(a), t = std::fabs(b);
    if (s > t) std::swap(s, t);
    if (t < 2.0) {
        return gauss([&](double d) {
            const double f1 = sinc(s * d), f2 = sinc(t * d);
            const double d2 = d * d;
            return d2 * d2 * f1 * f1 * f2 * f2;
        }, 0.0, 1.0, 24);
    }
    if (s >= 2.0) {
        const double bracket = 1.0 - sinc(2.0 * s) - sinc(2.0 * t) +
                               0.5 * (sinc(2.0 * (s - t)) + sinc(2.0 * (s + t)));
        return 0.25 * bracket / (s * s * t * t);
    }
    if (t >= 40.0) {
        // sinc^2(s d) = sum_k (-1)^k 2^(2k+1) (s d)^(2k) / (2k+2)!
        // int d^p sinc^2(t d) dd = [1/(p-1) - cosmom(p-2, 2t)] / (2 t^2)
        constexpr int K = 14;
        double cosm[2 * K + 4], sinm[2 * K + 4];
        trigMoments(2 * K + 2, 2.0 * t, cosm, sinm);
        double coef = 1.0;  // 2^(2k+1)/(2k+2)! * (-1)^k, k = 0 -> 1
        double sum = 0.0, spow = 1.0;
        for (int k = 0; k <= K; ++k) {
            const int p = 2 * k + 4;
            const double Jp = (1.0 / (p - 1) - cosm[p - 2]) / (2.0 * t * t);
            sum += coef * spow * Jp;
            spow *= s * s;
            coef *= -4.0 / ((2.0 * k + 3) * (2.0 * k + 4));
            if (std::fabs(coef * spow) < 1e-19) break;
        }
        return sum;
    }
    // one factor small, the other moderate: short direct quadrature
    const int panels = 2 + static_cast<int>((s + t) / M_PI);
    return compositeGauss([&](double d) {
        const double f1 = sinc(s * d), f2 = sinc(t * d);
        const double d2 = d * d;
        return d2 * d2 * f1 * f1 * f2 * f2;
    }, 0.0, 1.0, panels, 12);
}

}  // namespace detail

struct WeightValue {
    double w = 0.0;
    double err = 0.0;
};

/// Direct route: one-dimensional quadrature in the dilation with node count
/// proportional to 1 + |xi| * diam, split at delta = 1/2, panel-doubling
/// until two refinements agree.
inline WeightValue dilationAvgPowerDirect(const geo::ConvexBody& body, const Vec2& xi,
                                          ProfileCache* cache = nullptr, double relTol = 1e-6,
                                          int maxDoublings = 7) {
    const double rho = xi.norm();
    const double A = body.area();
    if (rho == 0.0) return {A * A / 5.0, 0.0};

    std::function<double(double)> power2;  // |hat{1}_C(d * xi)|^2
    std::shared_ptr<const ChordProfile> prof;
    switch (body.variant) {
        case geo::BodyVariant::Disk: {
            const double r = body.radius;
            power2 = [r, rho](double d) {
                const double arg = 2.0 * M_PI * r * rho * d;
                const double v = (arg == 0.0) ? M_PI * r * r : r * besselJ1(arg) / (rho * d);
                return v * v;
            };
            break;
        }
        case geo::BodyVariant::Polygon: {
            power2 = [&body, xi](double d) {
                const Complex v = ftPolygon(body.vertices, xi * d);
                return std::norm(v);
            };
            break;
        }
        default: {
            const double theta = std::atan2(xi.y, xi.x);
            prof = cache ? cache->forAngle(theta)
                         : std::make_shared<const ChordProfile>(body, theta);
            power2 = [prof, rho](double d) {
                const double v = prof->transform(rho * d);
                return v * v;
            };
            break;
        }
    }
    auto integrand = [&](double d) {
        const double d2 = d * d;
        return d2 * d2 * power2(d);
    };
    const double periods = rho * body.diameter();
    int panels = 4 + static_cast<int>(periods);
    auto eval = [&](int n) {
        return compositeGauss(integrand, 0.0, 0.5, (n + 1) / 2, 8) +
               compositeGauss(integrand, 0.5, 1.0, (n + 1) / 2, 8);
    };
    double prev = eval(panels);
    for (int d = 0; d < maxDoublings; ++d) {
        panels *= 2;
        const double cur = eval(panels);
        const double err = std::fabs(cur - prev);
        if (err <= relTol * std::max(cur, 1e-300)) return {cur, err};
        prev = cur;
    }
    throw AccuracyError("dilationAvgPower: refinement budget exhausted", prev);
}

namespace detail {

/// Solve the small normal-equation system M x = rhs (n <= 12).
inline void solveNormal(int n, double M[][12], double* rhs, double* x) {
    double mat[12][13];
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) mat[r][c] = M[r][c];
        mat[r][n] = rhs[r];
        mat[r][r] += 1e-12 * (std::fabs(M[r][r]) + 1e-30);  // tiny ridge
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(mat[r][col]) > std::fabs(mat[piv][col])) piv = r;
        for (int c = col; c <= n; ++c) std::swap(mat[col][c], mat[piv][c]);
        for (int r = col + 1; r < n; ++r) {
            const double f = mat[r][col] / mat[col][col];
            for (int c = col; c <= n; ++c) mat[r][c] -= f * mat[col][c];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = mat[r][n];
        for (int c = r + 1; c < n; ++c) s -= mat[r][c] * x[c];
        x[r] = s / mat[r][r];
    }
}

}  // namespace detail

/// Demodulated route for curve-backed bodies at large |xi|: with
/// F(sigma) = hat{1}_C(sigma u) (real by central symmetry),
///   w = rho^-5 int_0^rho sigma^4 F(sigma)^2 dsigma.
/// Beyond a short head, sigma^4 F^2 is a sum of slowly modulated
/// oscillations at known frequencies: W (cap-cap) and, when the body has a
/// flat point at height tau_f, also T +- tau_f and 2 tau_f (cap-flat and
/// flat-flat cross terms). The components are extracted by local least
/// squares and integrated with linear-phase moments, so the cost grows only
/// logarithmically in rho.
inline WeightValue dilationAvgPowerHybrid(const ChordProfile& prof, double rho, double relTol = 1e-6) {
    const double W = prof.width();
    const double T = prof.halfWidth();
    auto g = [&](double sigma) {
        const double F = prof.transform(sigma);
        const double s2 = sigma * sigma;
        return s2 * s2 * F * F;
    };
    const double sigmaHead = std::min(rho, 40.0 / W);
    // 12 nodes per oscillation of F^2 resolve the head to ~1e-9
    const int headPanels = 4 + static_cast<int>(sigmaHead * W);
    const double head = compositeGauss(g, 0.0, sigmaHead, headPanels, 12);
    double errEst = 1e-9 * head;
    double total = head;
    if (rho > sigmaHead) {
        // model frequencies, deduplicated and kept only when resolvable by
        // the sampling window
        std::vector<double> freqs = {W};
        const double tf = prof.flatHeight();
        if (tf >= 0.0) {
            for (double cand : {T + tf, T - tf, 2.0 * tf}) {
                if (cand < 0.08 * W) continue;  // slow: absorbed by the smooth part
                bool dup = false;
                for (double f : freqs) dup = dup || std::fabs(f - cand) < 0.08 * W;
                if (!dup) freqs.push_back(cand);
            }
        }
        const int nf = static_cast<int>(freqs.size());
        const int nParam = 2 + 2 * nf;  // s, drift, (cos, sin) per frequency
        const int nSamp = 2 * (2 * nf + 4) + 1;
        const double hc = 0.25 / W;

        constexpr int K = 8;  // amplitude nodes per dyadic panel
        const GaussRule& rule = gaussRule(K);
        double lo = sigmaHead;
        while (lo < rho) {
            const double hi = std::min(rho, 2.0 * lo);
            std::array<std::array<double, K>, 9> comp{};  // s, then cos/sin per freq
            double residAcc = 0.0;
            for (int q = 0; q < K; ++q) {
                const double sq = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[q];
                double M[12][12] = {};
                double rhs[12] = {};
                const int half = nSamp / 2;
                for (int j = -half; j <= half; ++j) {
                    const double sig = sq + j * hc;
                    double base[12];
                    base[0] = 1.0;
                    base[1] = (sig - sq) * W;  // scaled drift column
                    for (int f = 0; f < nf; ++f) {
                        base[2 + 2 * f] = std::cos(2.0 * M_PI * freqs[f] * sig);
                        base[3 + 2 * f] = std::sin(2.0 * M_PI * freqs[f] * sig);
                    }
                    const double val = g(sig);
                    for (int r = 0; r < nParam; ++r) {
                        rhs[r] += base[r] * val;
                        for (int c = 0; c < nParam; ++c) M[r][c] += base[r] * base[c];
                    }
                }
                double x[12];
                detail::solveNormal(nParam, M, rhs, x);
                comp[0][q] = x[0];
                for (int f = 0; f < nf; ++f) {
                    comp[1 + 2 * f][q] = x[2 + 2 * f];
                    comp[2 + 2 * f][q] = x[3 + 2 * f];
                }
                double pred = x[0];
                for (int f = 0; f < nf; ++f)
                    pred += x[2 + 2 * f] * std::cos(2.0 * M_PI * freqs[f] * sq) +
                            x[3 + 2 * f] * std::sin(2.0 * M_PI * freqs[f] * sq);
                residAcc += std::fabs(g(sq) - pred);
            }
            auto project = [&](const std::array<double, K>& vals) {
                LegendrePanel p;
                p.a = lo;
                p.b = hi;
                p.coef.fill(0.0);
                std::array<double, LegendrePanel::kDegree + 1> pk;
                for (int q = 0; q < K; ++q) {
                    legendreAll(rule.nodes[q], K - 1, pk.data());
                    for (int k = 0; k < K; ++k) p.coef[k] += rule.weights[q] * vals[q] * pk[k];
                }
                for (int k = 0; k < K; ++k) p.coef[k] *= 0.5 * (2 * k + 1);
                return p;
            };
            total += project(comp[0]).integrate();
            for (int f = 0; f < nf; ++f) {
                total += project(comp[1 + 2 * f]).integrateOsc(-2.0 * M_PI * freqs[f]).real();
                total += project(comp[2 + 2 * f]).integrateOsc(-2.0 * M_PI * freqs[f]).imag();
            }
            errEst += (residAcc / K) * (hi - lo) * 0.5;
            lo = hi;
        }
    }
    (void)relTol;
    const double r5 = std::pow(rho, 5);
    return {total / r5, errEst / r5};
}

/// w(xi) = int_0^1 delta^4 |hat{1}_C(delta xi)|^2 d delta, dispatched to the
/// cheapest adequate route (exact for rectangles, Bessel quadrature for
/// disks, direct/demodulated for curve-backed bodies).
inline WeightValue dilationAvgPower(const geo::ConvexBody& body, const Vec2& xi,
                                    ProfileCache* cache = nullptr, double relTol = 1e-6) {
    const double rho = xi.norm();
    const double A = body.area();
    if (rho == 0.0) return {A * A / 5.0, 0.0};
    if (auto rect = body.asRectangle()) {
        // separable closed form in the rectangle frame
        const double x1 = xi.dot(rect->e1), x2 = xi.dot(rect->e2);
        const double a = M_PI * 2.0 * rect->h1 * x1;
        const double b = M_PI * 2.0 * rect->h2 * x2;
        const double val = A * A * detail::rectWeightIntegral(a, b);
        return {val, 1e-15 * val};
    }
    if (body.curve) {
        const double W = body.width(std::atan2(xi.y, xi.x));
        if (rho * W > 60.0) {
            std::shared_ptr<const ChordProfile> prof =
                cache ? cache->forAngle(std::atan2(xi.y, xi.x))
                      : std::make_shared<const ChordProfile>(body, std::atan2(xi.y, xi.x));
            return dilationAvgPowerHybrid(*prof, rho, relTol);
        }
    }
    return dilationAvgPowerDirect(body, xi, cache, relTol);
}

// ---------------------------------------------------------------------------
// Weight tables with symmetry-class reduction and a binary cache.

enum class SymmetryClass { Central, Quadrant, Dihedral, Radial };

inline SymmetryClass bodySymmetryClass(const geo::ConvexBody& body) {
    if (body.variant == geo::BodyVariant::Disk) return SymmetryClass::Radial;
    if (auto r = body.asRectangle()) {
        const bool axisAligned = std::fabs(r->e1.y) < 1e-14 || std::fabs(r->e1.x) < 1e-14;
        const bool square = std::fabs(r->h1 - r->h2) < 1e-14 * (r->h1 + r->h2);
        const bool centered = r->center.norm() < 1e-14;
        if (axisAligned && square && centered) return SymmetryClass::Dihedral;
        if (axisAligned && centered) return SymmetryClass::Quadrant;
        return SymmetryClass::Central;
    }
    if (body.centralSymmetry && body.axisSymmetry) return SymmetryClass::Quadrant;
    return SymmetryClass::Central;  // w(-m) = w(m) holds unconditionally
}

inline uint64_t weightClassKey(SymmetryClass sym, long long m1, long long m2) {
    auto pack = [](long long a, long long b) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(static_cast<int32_t>(a))) << 32) |
               static_cast<uint64_t>(static_cast<uint32_t>(static_cast<int32_t>(b)));
    };
    switch (sym) {
        case SymmetryClass::Radial:
            return static_cast<uint64_t>(m1 * m1 + m2 * m2);
        case SymmetryClass::Dihedral: {
            long long a = std::llabs(m1), b = std::llabs(m2);
            if (a < b) std::swap(a, b);
            return pack(a, b);
        }
        case SymmetryClass::Quadrant:
            return pack(std::llabs(m1), std::llabs(m2));
        default: {
            long long a = m1, b = m2;
            if (a < 0 || (a == 0 && b < 0)) { a = -a; b = -b; }
            return pack(a, b);
        }
    }
}

/// Representative frequency for a class key (used when computing entries).
inline Vec2 weightClassRep(SymmetryClass sym, long long m1, long long m2) {
    switch (sym) {
        case SymmetryClass::Radial:
            return {std::sqrt(static_cast<double>(m1 * m1 + m2 * m2)), 0.0};
        case SymmetryClass::Dihedral: {
            long long a = std::llabs(m1), b = std::llabs(m2);
            if (a < b) std::swap(a, b);
            return {static_cast<double>(a), static_cast<double>(b)};
        }
        case SymmetryClass::Quadrant:
            return {static_cast<double>(std::llabs(m1)), static_cast<double>(std::llabs(m2))};
        default: {
            long long a = m1, b = m2;
            if (a < 0 || (a == 0 && b < 0)) { a = -a; b = -b; }
            return {static_cast<double>(a), static_cast<double>(b)};
        }
    }
}

inline std::string defaultCacheDir() {
    if (const char* env = std::getenv("DISCLAB_CACHE")) return env;
    return "disclab_cache";
}

/// Cached map from frequency classes to w(m) = int_0^1 |hat{1}_{dC}(m)|^2 dd,
/// keyed by body fingerprint and, for lattice point sets, the sublattice
/// stride. Construction parallelizes over radial shells; entries are pure
/// functions of (body, m), so the result is identical for any worker count.
class SpectralWeightTable {
  public:
    explicit SpectralWeightTable(const geo::ConvexBody& body, std::string cacheDir = defaultCacheDir(),
                                 long long strideG = 1, long long strideL = 1)
        : body_(body),
          cache_(body),
          dir_(std::move(cacheDir)),
          sym_(bodySymmetryClass(body)),
          strideG_(strideG),
          strideL_(strideL) {
        loadIfPresent();
    }

    SymmetryClass symmetry() const { return sym_; }
    double coveredRadius() const { return coveredR_; }
    size_t classCount() const { return table_.size(); }
    const geo::ConvexBody& body() const { return body_; }

    WeightValue lookup(long long m1, long long m2) const {
        const auto it = table_.find(weightClassKey(sym_, m1, m2));
        if (it == table_.end()) throw std::out_of_range("SpectralWeightTable: frequency not covered");
        return it->second;
    }

    WeightValue computeOrLookup(long long m1, long long m2) {
        const uint64_t key = weightClassKey(sym_, m1, m2);
        auto it = table_.find(key);
        if (it != table_.end()) return it->second;
        const Vec2 rep = weightClassRep(sym_, m1, m2);
        const WeightValue v = dilationAvgPower(body_, rep, &cache_);
        table_.emplace(key, v);
        return v;
    }

    /// Ensure all sublattice frequencies (G j1, L j2) with 0 < |m| <= R are
    /// tabulated; persists to the cache directory.
    void ensureRadius(double R, int threads = 0) {
        if (R <= coveredR_) return;
        std::vector<uint64_t> missing;
        std::vector<Vec2> reps;
        const long long jMax1 = static_cast<long long>(R / strideG_) + 1;
        std::map<uint64_t, Vec2> want;
        for (long long j1 = -jMax1; j1 <= jMax1; ++j1) {
            const double x = static_cast<double>(j1 * strideG_);
            if (std::fabs(x) > R) continue;
            const double yMax = std::sqrt(R * R - x * x);
            const long long j2Max = static_cast<long long>(yMax / strideL_);
            for (long long j2 = -j2Max; j2 <= j2Max; ++j2) {
                if (j1 == 0 && j2 == 0) continue;
                const long long m1 = j1 * strideG_, m2 = j2 * strideL_;
                const uint64_t key = weightClassKey(sym_, m1, m2);
                if (table_.count(key) || want.count(key)) continue;
                want.emplace(key, weightClassRep(sym_, m1, m2));
            }
        }
        missing.reserve(want.size());
        reps.reserve(want.size());
        for (const auto& [k, rep] : want) {
            missing.push_back(k);
            reps.push_back(rep);
        }
        if (sym_ == SymmetryClass::Radial) {
            radialSweep(missing);
        } else {
            std::vector<WeightValue> out(missing.size());
            parallelFor(missing.size(), [&](size_t i) {
                out[i] = dilationAvgPower(body_, reps[i], &cache_);
            }, threads);
            for (size_t i = 0; i < missing.size(); ++i) table_.emplace(missing[i], out[i]);
        }
        coveredR_ = R;
        save();
    }

    /// Disk tables: w(rho) = (r/rho)^2 X^-3 int_0^X x^2 J1(x)^2 dx with
    /// X = 2 pi r rho, so one cumulative sweep over the sorted radii covers
    /// every class. Two resolutions give a per-entry error estimate.
    void radialSweep(const std::vector<uint64_t>& keys) {
        const double r = body_.radius;
        std::vector<double> radii(keys.size());
        for (size_t i = 0; i < keys.size(); ++i) radii[i] = std::sqrt(static_cast<double>(keys[i]));
        auto sweep = [&](int nodesPerPeriod, std::vector<double>& out) {
            out.resize(keys.size());
            double I = 0.0, Xprev = 0.0;
            KahanSum acc;
            for (size_t i = 0; i < keys.size(); ++i) {
                const double X = 2.0 * M_PI * r * radii[i];
                const double periods = (X - Xprev) / M_PI;
                const int panels = 1 + static_cast<int>(periods);
                acc.add(compositeGauss([](double x) {
                    const double j = besselJ1(x);
                    return x * x * j * j;
                }, Xprev, X, panels, std::max(4, nodesPerPeriod)));
                I = acc.value();
                out[i] = r * r / (radii[i] * radii[i]) * I / (X * X * X);
                Xprev = X;
            }
        };
        std::vector<double> w1, w2;
        sweep(6, w1);
        sweep(12, w2);
        for (size_t i = 0; i < keys.size(); ++i)
            table_.emplace(keys[i], WeightValue{w2[i], std::fabs(w2[i] - w1[i])});
    }

    /// 4 * max over the outer half-shell of w(m) |m|^3 (empirical tail
    /// constant; the outer shell is [R/2, R] of the covered radius).
    double tailConstant() const {
        double best = 0.0;
        const double r2lo = 0.25 * coveredR_ * coveredR_;
        for (const auto& [key, v] : table_) {
            const double n2 = keyNorm2(key);
            if (n2 < r2lo) continue;
            best = std::max(best, v.w * std::pow(n2, 1.5));
        }
        return 4.0 * best;
    }

    std::filesystem::path cacheFile() const {
        return std::filesystem::path(dir_) /
               (body_.fingerprint() + "_G" + std::to_string(strideG_) + "_L" + std::to_string(strideL_) +
                ".wt");
    }

    /// Binary snapshot: header (magic, version, symmetry, covered radius,
    /// stride, count) then fixed-width records (key, w, err) sorted by key.
    void save() const {
        std::string buf;
        auto put = [&](const void* p, size_t n) { buf.append(static_cast<const char*>(p), n); };
        const char magic[4] = {'D', 'L', 'W', 'T'};
        const uint32_t version = 1;
        const uint32_t symk = static_cast<uint32_t>(sym_);
        const uint64_t count = table_.size();
        const int64_t g = strideG_, l = strideL_;
        put(magic, 4);
        put(&version, 4);
        put(&symk, 4);
        put(&coveredR_, 8);
        put(&g, 8);
        put(&l, 8);
        put(&count, 8);
        for (const auto& [key, v] : table_) {
            put(&key, 8);
            put(&v.w, 8);
            put(&v.err, 8);
        }
        atomicWrite(cacheFile(), buf);
        nlohmann::json side;
        side["version"] = version;
        side["fingerprint"] = body_.fingerprint();
        side["symmetry"] = static_cast<int>(sym_);
        side["covered_radius"] = coveredR_;
        side["stride"] = {strideG_, strideL_};
        side["class_count"] = count;
        side["body"] = body_.canonicalParams();
        atomicWrite(cacheFile().string() + ".json", side.dump(2));
    }

    bool loadIfPresent() {
        std::error_code ec;
        if (!std::filesystem::exists(cacheFile(), ec)) return false;
        const std::string buf = readFile(cacheFile());
        if (buf.size() < 44 || std::memcmp(buf.data(), "DLWT", 4) != 0)
            throw std::runtime_error("weight cache corrupt: " + cacheFile().string());
        size_t off = 4;
        auto get = [&](void* p, size_t n) {
            std::memcpy(p, buf.data() + off, n);
            off += n;
        };
        uint32_t version, symk;
        int64_t g, l;
        uint64_t count;
        get(&version, 4);
        get(&symk, 4);
        get(&coveredR_, 8);
        get(&g, 8);
        get(&l, 8);
        get(&count, 8);
        if (version != 1 || symk != static_cast<uint32_t>(sym_) || g != strideG_ || l != strideL_)
            throw std::runtime_error("weight cache header mismatch: " + cacheFile().string());
        if (buf.size() != 44 + 24 * count)
            throw std::runtime_error("weight cache truncated: " + cacheFile().string());
        table_.clear();
        for (uint64_t i = 0; i < count; ++i) {
            uint64_t key;
            WeightValue v;
            get(&key, 8);
            get(&v.w, 8);
            get(&v.err, 8);
            table_.emplace(key, v);
        }
        return true;
    }

    const std::map<uint64_t, WeightValue>& entries() const { return table_; }

    double keyNorm2(uint64_t key) const {
        if (sym_ == SymmetryClass::Radial) return static_cast<double>(key);
        const auto a = static_cast<int32_t>(key >> 32);
        const auto b = static_cast<int32_t>(key & 0xffffffffu);
        return static_cast<double>(a) * a + static_cast<double>(b) * b;
    }

  private:
    const geo::ConvexBody& body_;
    ProfileCache cache_;
    std::string dir_;
    SymmetryClass sym_;
    long long strideG_, strideL_;
    double coveredR_ = 0.0;
    std::map<uint64_t, WeightValue> table_;  // ordered: deterministic save
};

}  // namespace disclab::fourier
