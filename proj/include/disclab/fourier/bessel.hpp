#pragma once

#include <cmath>

namespace disclab::fourier {

/// Bessel J1: power series up to the seam, Hankel asymptotic beyond.
/// The seam (x = 14) keeps both branches below ~1e-12 absolute error;
/// agreement at the seam is checked in the test suite.
inline double besselJ1(double x) {
    const double ax = std::fabs(x);
    double result;
    if (ax <= 14.0) {
        // J1(x) = (x/2) sum_k (-1)^k (x^2/4)^k / (k! (k+1)!)
        // accumulated in long double: the alternating terms reach ~3e4 near
        // the seam, so double-precision rounding alone would cost ~1e-11
        const long double q = 0.25L * ax * ax;
        long double term = 0.5L * ax;
        long double sum = term;
        for (int k = 1; k < 80; ++k) {
            term *= -q / (static_cast<long double>(k) * (k + 1));
            sum += term;
            if (std::fabs(static_cast<double>(term)) < 1e-22) break;
        }
        result = static_cast<double>(sum);
    } else {
        // Hankel expansion with a_k(1) = a_{k-1} (4 - (2k-1)^2) / (8k)
        const double chi = ax - 0.75 * M_PI;
        double ck = 1.0;
        double P = 1.0, Q = 0.0;
        double prev = 1.0;
        for (int k = 1; k <= 20; ++k) {
            ck *= (4.0 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * ax);
            if (std::fabs(ck) > prev) break;  // asymptotic series: stop at the smallest term
            prev = std::fabs(ck);
            const int r = k & 3;
            if (r == 0) P += ck;
            else if (r == 1) Q += ck;
            else if (r == 2) P -= ck;
            else Q -= ck;
        }
        result = std::sqrt(2.0 / (M_PI * ax)) * (P * std::cos(chi) - Q * std::sin(chi));
    }
    return x < 0 ? -result : result;
}

/// sin(x)/x with the removable singularity handled.
inline double sinc(double x) {
    if (std::fabs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

}  // namespace disclab::fourier
