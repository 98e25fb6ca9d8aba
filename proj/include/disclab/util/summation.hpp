#pragma once

#include <cstddef>
#include <vector>

namespace disclab {

/// Kahan compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;

    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// Pairwise sum of a vector (deterministic, order-defined).
inline double pairwiseSum(const std::vector<double>& v, size_t lo, size_t hi) {
    const size_t n = hi - lo;
    if (n <= 8) {
        double s = 0.0;
        for (size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const size_t mid = lo + n / 2;
    return pairwiseSum(v, lo, mid) + pairwiseSum(v, mid, hi);
}

inline double pairwiseSum(const std::vector<double>& v) { return pairwiseSum(v, 0, v.size()); }

}  // namespace disclab
