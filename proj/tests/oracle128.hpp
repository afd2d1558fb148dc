#ifndef MAXTHETA_TESTS_ORACLE128_HPP
#define MAXTHETA_TESTS_ORACLE128_HPP

// Test-only oracles, independent of the library evaluation paths: plain
// fixed-window summation, no functional-equation routing, no tail logic.
// The 1D/2D theta sums run in __float128 (~33 significant digits) so frozen
// double-precision expectations have headroom; the big lattice sums run in
// compensated double precision, which is plenty for 1e-8 comparisons.

#include <quadmath.h>

#include <cmath>

namespace oracle {

using f128 = __float128;

inline f128 pi128() { return M_PIq; }

// --- 1D sums over k in [-K, K] ---------------------------------------------

inline double theta2_sum(double t, int K = 64) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k) {
        const f128 h = (f128)k + (f128)0.5;
        s += expq(-pi128() * (f128)t * h * h);
    }
    return (double)s;
}

inline double theta3_sum(double t, int K = 64) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k) s += expq(-pi128() * (f128)t * (f128)k * (f128)k);
    return (double)s;
}

inline double theta4_sum(double t, int K = 64) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k) {
        const f128 term = expq(-pi128() * (f128)t * (f128)k * (f128)k);
        s += (k % 2 == 0) ? term : -term;
    }
    return (double)s;
}

inline double vartheta_sum(double beta, double t, int K = 64) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k) {
        const f128 h = (f128)k + (f128)beta;
        s += expq(-pi128() * (f128)t * h * h);
    }
    return (double)s;
}

inline double vartheta_hat_sum(double beta, double t, int K = 64) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k)
        s += expq(-pi128() * (f128)t * (f128)k * (f128)k) *
             cosq(2 * pi128() * (f128)k * (f128)beta);
    return (double)s;
}

inline double vartheta2_sum(double beta, double t, int K = 64) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k) {
        const f128 h = (f128)k + (f128)beta;
        const f128 term = expq(-pi128() * (f128)t * h * h);
        s += (((k % 2) + 2) % 2 == 0) ? term : -term;
    }
    return (double)s;
}

inline double vartheta2_hat_sum(double beta, double t, int K = 64) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k) {
        const f128 h = (f128)k + (f128)0.5;
        s += expq(-pi128() * (f128)t * h * h) * cosq(2 * pi128() * h * (f128)beta);
    }
    return (double)s;
}

// --- 2D lattice sums, Gram form q(u,v) = (u^2 + 2xuv + (x^2+y^2)v^2)/y ------

inline f128 gram128(double x, double y, f128 u, f128 v) {
    return (u * u + 2 * (f128)x * u * v + ((f128)x * (f128)x + (f128)y * (f128)y) * v * v) /
           (f128)y;
}

inline double theta_plain_sum(double x, double y, double alpha, int K = 32) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k)
        for (int l = -K; l <= K; ++l)
            s += expq(-pi128() * (f128)alpha * gram128(x, y, (f128)k, (f128)l));
    return (double)s;
}

inline double theta_centered_sum(double x, double y, double alpha, int K = 32) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k)
        for (int l = -K; l <= K; ++l)
            s += expq(-pi128() * (f128)alpha *
                      gram128(x, y, (f128)k + (f128)0.5, (f128)l + (f128)0.5));
    return (double)s;
}

inline double theta_alternating_sum(double x, double y, double alpha, int K = 32) {
    f128 s = 0;
    for (int k = -K; k <= K; ++k)
        for (int l = -K; l <= K; ++l) {
            const f128 term = expq(-pi128() * (f128)alpha * gram128(x, y, (f128)k, (f128)l));
            s += (((k + l) % 2 + 2) % 2 == 0) ? term : -term;
        }
    return (double)s;
}

// --- Brute-force Epstein sums (compensated double) --------------------------

struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

inline double gram(double x, double y, double u, double v) {
    return (u * u + 2.0 * x * u * v + (x * x + y * y) * v * v) / y;
}

// sum over the square window |k|,|l| <= K of (-1)^{k+l} q(k,l)^{-s/2}.
inline double epstein_pm_window(double x, double y, double s, long K) {
    Kahan sum;
    for (long k = -K; k <= K; ++k)
        for (long l = -K; l <= K; ++l) {
            if (k == 0 && l == 0) continue;
            const double q = gram(x, y, double(k), double(l));
            const double term = std::pow(q, -0.5 * s);
            sum.add(((k + l) % 2 == 0) ? term : -term);
        }
    return sum.value();
}

// Same window but with boundary rows/columns weighted 1/2; these smoothed
// (charge-balanced) partial sums converge even in the conditionally
// convergent regime s <= 2, unlike the raw windows.
inline double epstein_pm_window_smoothed(double x, double y, double s, long K) {
    Kahan sum;
    for (long k = -K; k <= K; ++k)
        for (long l = -K; l <= K; ++l) {
            if (k == 0 && l == 0) continue;
            double w = 1.0;
            if (std::labs(k) == K) w *= 0.5;
            if (std::labs(l) == K) w *= 0.5;
            const double q = gram(x, y, double(k), double(l));
            const double term = w * std::pow(q, -0.5 * s);
            sum.add(((k + l) % 2 == 0) ? term : -term);
        }
    return sum.value();
}

// Plain Epstein on the square lattice, window sum plus the exact integral of
// r^{-s} over the complement of the square [-a, a]^2, a = K + 1/2 (midpoint
// rule; the residual is O(a^{-s-2})).  J(s) = int_0^1 (1+u^2)^{-s/2} du.
inline double epstein_plain_square_window(double s, long K) {
    Kahan sum;
    for (long k = -K; k <= K; ++k)
        for (long l = -K; l <= K; ++l) {
            if (k == 0 && l == 0) continue;
            sum.add(std::pow(double(k * k + l * l), -0.5 * s));
        }
    double j = 0.0;  // Simpson on [0,1], 200 panels: plenty for the 1e-8 target
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
        const double u = double(i) / n;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        j += w * std::pow(1.0 + u * u, -0.5 * s);
    }
    j /= 3.0 * n;
    const double a = K + 0.5;
    return sum.value() + 8.0 * j * std::pow(a, 2.0 - s) / (s - 2.0);
}

// Centered Epstein on the square lattice: points (k+1/2, l+1/2) for
// k,l in [-K-1, K] cover the square [-a, a]^2 with a = K + 1, midpoint rule.
inline double epstein_c_square_window(double s, long K) {
    Kahan sum;
    for (long k = -K - 1; k <= K; ++k)
        for (long l = -K - 1; l <= K; ++l) {
            const double u = k + 0.5, v = l + 0.5;
            sum.add(std::pow(u * u + v * v, -0.5 * s));
        }
    double j = 0.0;
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
        const double u = double(i) / n;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        j += w * std::pow(1.0 + u * u, -0.5 * s);
    }
    j /= 3.0 * n;
    const double a = K + 1.0;
    return sum.value() + 8.0 * j * std::pow(a, 2.0 - s) / (s - 2.0);
}

// 3D alternating cubic sum over |m|,|n|,|p| <= K.
inline double madelung3d_window(double s, long K) {
    Kahan sum;
    for (long m = -K; m <= K; ++m)
        for (long n = -K; n <= K; ++n)
            for (long p = -K; p <= K; ++p) {
                if (m == 0 && n == 0 && p == 0) continue;
                const double term = std::pow(double(m * m + n * n + p * p), -0.5 * s);
                sum.add(((m + n + p) % 2 == 0) ? term : -term);
            }
    return sum.value();
}

}  // namespace oracle

#endif
