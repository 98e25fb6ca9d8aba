#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace disclab::lab {

struct SlopeFit {
    double slope = 0.0;
    double band = 0.0;  // 95% half-width from residual variance
    double intercept = 0.0;
};

/// Ordinary least squares on (log N, log value); needs >= 4 positive records.
inline SlopeFit fitSlope(const std::vector<std::pair<double, double>>& records) {
    if (records.size() < 4) throw std::invalid_argument("fitSlope: need >= 4 records");
    const size_t n = records.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [N, v] : records) {
        if (!(N > 0.0) || !(v > 0.0)) throw std::invalid_argument("fitSlope: values must be positive");
        const double x = std::log(N), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (det <= 0.0) throw std::invalid_argument("fitSlope: degenerate abscissas");
    SlopeFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double rss = 0.0;
    for (const auto& [N, v] : records) {
        const double r = std::log(v) - (f.intercept + f.slope * std::log(N));
        rss += r * r;
    }
    const double sxxCentered = sxx - sx * sx / n;
    const double sigma2 = (n > 2) ? rss / (n - 2) : 0.0;
    f.band = 1.96 * std::sqrt(sigma2 / std::max(sxxCentered, 1e-300));
    return f;
}

/// alpha -> beta map for the monomial exponent: beta = 2 alpha / (2 - 3 alpha).
inline double betaFromAlpha(double alpha) { return 2.0 * alpha / (2.0 - 3.0 * alpha); }
/// beta -> alpha: alpha = 2 beta / (3 beta + 2).
inline double alphaFromBeta(double beta) { return 2.0 * beta / (3.0 * beta + 2.0); }

}  // namespace disclab::lab
