#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "disclab/discrepancy/pointset.hpp"
#include "disclab/util/rng.hpp"

namespace disclab::pts {

using disc::PointSet;

/// floor(n^e) with exact-power snapping: when n^e is within 1e-12 (log
/// scale) of an integer the integer wins, so quantities like 8192^(7/13)
/// floor to 128, not 127.
inline long long floorPow(double n, double e) {
    if (n < 1.0) return 0;
    const double v = std::pow(n, e);
    long long k = static_cast<long long>(std::floor(v));
    const double logN = e * std::log(n);
    if (k >= 0 && std::fabs(logN - std::log(static_cast<double>(k + 1))) < 1e-12) return k + 1;
    // guard against pow landing just above an exact power
    if (k >= 1 && std::fabs(logN - std::log(static_cast<double>(k))) < 1e-12) return k;
    return k;
}

struct LatticeParams {
    long long G = 0, L = 0;
    double beta = 0.0;
    double nTilde = 0.0;
    long long N() const { return G * L; }
};

/// Anisotropic G x L lattice tuned to the exponent beta:
///   G = floor(nTilde^((2+beta)/(2+3beta))), L = floor(nTilde^(2beta/(2+3beta))),
/// points p = (g/G, l/L).
inline std::pair<LatticeParams, PointSet> anisotropicLattice(double nTilde, double beta) {
    if (nTilde < 4.0) throw std::invalid_argument("anisotropicLattice: need nTilde >= 4");
    if (beta <= 1.0 || beta > 2.0) throw std::invalid_argument("anisotropicLattice: beta in (1, 2]");
    LatticeParams lp;
    lp.beta = beta;
    lp.nTilde = nTilde;
    lp.G = floorPow(nTilde, (2.0 + beta) / (2.0 + 3.0 * beta));
    lp.L = floorPow(nTilde, 2.0 * beta / (2.0 + 3.0 * beta));
    if (lp.G < 1 || lp.L < 1) throw std::invalid_argument("anisotropicLattice: degenerate G or L");
    PointSet ps;
    ps.points.reserve(static_cast<size_t>(lp.G * lp.L));
    for (long long l = 0; l < lp.L; ++l)
        for (long long g = 0; g < lp.G; ++g)
            ps.points.push_back({static_cast<double>(g) / lp.G, static_cast<double>(l) / lp.L});
    ps.provenance = {{"generator", "anisotropic_lattice"},
                     {"beta", beta},
                     {"n_tilde", nTilde},
                     {"G", lp.G},
                     {"L", lp.L}};
    return {lp, ps};
}

/// Aligned sqrt(N) x sqrt(N) lattice (the beta = 2 degenerate case).
inline std::pair<LatticeParams, PointSet> squareLattice(long long n) {
    const long long G = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(n)) + 1e-9));
    return anisotropicLattice(static_cast<double>(G) * G, 2.0);
}

struct Decomposition {
    double alpha = 0.0;
    long long N = 0;
    std::vector<long long> parts;    // n_j
    std::vector<long long> sizes;    // N_j = floor(n_j^(1-alpha)) floor(n_j^alpha)
    long long remainder = 0;
};

inline long long decompositionSize(long long n, double alpha) {
    return floorPow(static_cast<double>(n), 1.0 - alpha) * floorPow(static_cast<double>(n), alpha);
}

/// Greedy decomposition: n_j is the maximal n with
/// floor(n^(1-alpha)) floor(n^alpha) <= remaining count; at most 5 parts.
inline Decomposition greedyDecompose(long long N, double alpha, int maxParts = 5) {
    if (N < 1) throw std::invalid_argument("greedyDecompose: need N >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("greedyDecompose: alpha in (0, 1)");
    Decomposition d;
    d.alpha = alpha;
    d.N = N;
    long long rem = N;
    for (int j = 0; j < maxParts && rem >= 1; ++j) {
        // bracket by doubling, then integer binary search for the max n
        long long hi = 1;
        while (decompositionSize(hi, alpha) <= rem) hi *= 2;
        long long lo = hi / 2;  // size(lo) <= rem < size(hi)
        while (lo + 1 < hi) {
            const long long mid = lo + (hi - lo) / 2;
            if (decompositionSize(mid, alpha) <= rem) lo = mid; else hi = mid;
        }
        const long long nj = lo;
        const long long Nj = decompositionSize(nj, alpha);
        if (Nj < 1) break;
        d.parts.push_back(nj);
        d.sizes.push_back(Nj);
        rem -= Nj;
    }
    d.remainder = rem;
    return d;
}

/// Uniform random baseline from a named seeded stream.
inline PointSet randomPointSet(long long N, uint64_t seed) {
    if (N < 1) throw std::invalid_argument("randomPointSet: need N >= 1");
    PointSet ps;
    ps.points.reserve(static_cast<size_t>(N));
    Rng rng(seed, 0x72616e64ULL);  // stream tag "rand"
    for (long long i = 0; i < N; ++i) ps.points.push_back({rng.uniform(), rng.uniform()});
    ps.provenance = {{"generator", "random"}, {"N", N}, {"seed", seed}};
    return ps;
}

/// Composite point set: greedy decomposition with alpha = 2 beta/(2+3 beta),
/// anisotropic lattices for every part of size at least N^(alpha/2), random
/// filler for the small parts and the remainder, all parts independently
/// shifted on the torus. The total cardinality is exactly N.
inline PointSet compositePointSet(long long N, double beta, uint64_t seed) {
    if (N < 1) throw std::invalid_argument("compositePointSet: need N >= 1");
    const double alpha = 2.0 * beta / (2.0 + 3.0 * beta);
    const Decomposition d = greedyDecompose(N, alpha);
    PointSet out;
    out.points.reserve(static_cast<size_t>(N));
    Rng shiftRng(seed, 0x73686674ULL);  // stream tag "shft"
    const double threshold = std::pow(static_cast<double>(N), alpha / 2.0);
    long long filler = d.remainder;
    int latticeParts = 0;
    for (size_t j = 0; j < d.parts.size(); ++j) {
        if (static_cast<double>(d.sizes[j]) < threshold) {
            filler += d.sizes[j];
            continue;
        }
        auto [lp, part] = anisotropicLattice(static_cast<double>(d.parts[j]), beta);
        // parts after the first get a torus shift so points never coincide;
        // a lone part stays the plain lattice
        const Vec2 shift = (latticeParts == 0) ? Vec2{0.0, 0.0}
                                               : Vec2{shiftRng.uniform(), shiftRng.uniform()};
        for (Vec2 p : part.points) {
            p.x = std::fmod(p.x + shift.x, 1.0);
            p.y = std::fmod(p.y + shift.y, 1.0);
            out.points.push_back(p);
        }
        ++latticeParts;
    }
    Rng fillRng(seed, 0x66696c6cULL);  // stream tag "fill"
    for (long long i = 0; i < filler; ++i) out.points.push_back({fillRng.uniform(), fillRng.uniform()});
    out.provenance = {{"generator", "composite"},
                      {"N", N},
                      {"beta", beta},
                      {"alpha", alpha},
                      {"seed", seed},
                      {"lattice_parts", latticeParts},
                      {"filler", filler}};
    if (static_cast<long long>(out.points.size()) != N)
        throw std::logic_error("compositePointSet: cardinality mismatch");
    return out;
}

}  // namespace disclab::pts
