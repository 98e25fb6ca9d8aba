#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace disclab {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre nodes/weights by Newton on the Legendre polynomial.
inline GaussRule computeGaussRule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

inline const GaussRule& gaussRule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, computeGaussRule(n)).first;
    return it->second;
}

/// Single Gauss panel on [a, b].
template <class F>
double gauss(F&& f, double a, double b, int n = 16) {
    const GaussRule& r = gaussRule(n);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
    return s * h;
}

/// Composite Gauss with `panels` equal panels on [a, b].
template <class F>
double compositeGauss(F&& f, double a, double b, int panels, int n = 8) {
    double s = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) s += gauss(f, a + p * h, a + (p + 1) * h, n);
    return s;
}

/// Composite Gauss with panel doubling until two refinements agree to
/// `relTol` (relative to scale). Returns {value, errorEstimate}.
template <class F>
std::pair<double, double> adaptiveCompositeGauss(F&& f, double a, double b, int basePanels,
                                                 double relTol, int maxDoublings = 8, int n = 8) {
    int panels = std::max(1, basePanels);
    double prev = compositeGauss(f, a, b, panels, n);
    for (int d = 0; d < maxDoublings; ++d) {
        panels *= 2;
        const double cur = compositeGauss(f, a, b, panels, n);
        const double err = std::fabs(cur - prev);
        const double scale = std::max(std::fabs(cur), 1e-300);
        if (err <= relTol * scale) return {cur, err};
        prev = cur;
    }
    return {prev, std::fabs(prev) * relTol * 1e3 + 1e-300};  // not converged; caller decides
}

/// Legendre polynomial values P_0..P_kmax at x.
inline void legendreAll(double x, int kmax, double* out) {
    out[0] = 1.0;
    if (kmax >= 1) out[1] = x;
    for (int k = 2; k <= kmax; ++k)
        out[k] = ((2 * k - 1) * x * out[k - 1] - (k - 1) * out[k - 2]) / k;
}

}  // namespace disclab
