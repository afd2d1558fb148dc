#include "maxtheta/theta1d.hpp"

#include <cmath>
#include <limits>

namespace maxtheta::theta1d {

namespace {

// Wrap to [-1/2, 1/2).
double wrap_half(double b) { return b - std::floor(b + 0.5); }

// Decompose beta = n + b with b in [-1/2, 1/2); returns (-1)^n, the sign
// picked up by the antiperiodic functions vartheta2 / vartheta2_hat.
double wrap_half_signed(double beta, double& b) {
    b = wrap_half(beta);
    const long long n = std::llround(beta - b);
    return (n % 2 == 0) ? 1.0 : -1.0;
}

// Upper bound on sum_{j >= K+1} (j+1)^d exp(-pi t (j - c)^2), c <= 1.
// Infinite until the geometric ratio certificate kicks in.
double gauss_tail(double t, long K, int d, double c) {
    double q = std::exp(-kPi * t * (2.0 * (K + 1 - c) + 1.0));
    for (int i = 0; i < d; ++i) q *= (K + 3.0) / (K + 2.0);
    if (!(q < 0.5)) return std::numeric_limits<double>::infinity();
    double first = std::exp(-kPi * t * (K + 1 - c) * (K + 1 - c));
    for (int i = 0; i < d; ++i) first *= (K + 2.0);
    return first / (1.0 - q);
}

void enforce(const SeriesBudget& b, long k, const char* who) {
    if (k > b.max_terms) throw BudgetExceeded(std::string(who) + ": max_terms reached before tail bound met");
}

double scale_of(double peak, double partial) { return std::max(peak, std::abs(partial)); }

}  // namespace

// ---------------------------------------------------------------------------
// Raw sums (no functional-equation routing)
// ---------------------------------------------------------------------------

namespace direct {

double theta3(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    KahanSum s;
    s.add(1.0);
    double peak = 1.0;
    for (long k = 1;; ++k) {
        const double term = 2.0 * std::exp(-kPi * t * double(k) * double(k));
        s.add(term);
        peak = std::max(peak, term);
        if (2.0 * gauss_tail(t, k, 0, 0.0) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 1, "theta3");
    }
    return s.value();
}

double theta4(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    KahanSum s;
    s.add(1.0);
    double peak = 1.0;
    double sign = -1.0;
    for (long k = 1;; ++k, sign = -sign) {
        const double mag = 2.0 * std::exp(-kPi * t * double(k) * double(k));
        s.add(sign * mag);
        peak = std::max(peak, mag);
        if (2.0 * gauss_tail(t, k, 0, 0.0) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 1, "theta4");
    }
    return s.value();
}

double theta2(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    KahanSum s;
    double peak = 0.0;
    for (long k = 0;; ++k) {
        const double term = 2.0 * std::exp(-kPi * t * (k + 0.5) * (k + 0.5));
        s.add(term);
        peak = std::max(peak, term);
        if (2.0 * gauss_tail(t, k, 0, -0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 2, "theta2");
    }
    return s.value();
}

double vartheta(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    const double b = wrap_half(beta);
    KahanSum s;
    double peak = std::exp(-kPi * t * b * b);
    s.add(peak);
    for (long k = 1;; ++k) {
        const double tp = std::exp(-kPi * t * (k + b) * (k + b));
        const double tm = std::exp(-kPi * t * (k - b) * (k - b));
        s.add(tp);
        s.add(tm);
        peak = std::max(peak, std::max(tp, tm));
        if (2.0 * gauss_tail(t, k, 0, 0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 1, "vartheta");
    }
    return s.value();
}

double vartheta_hat(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    const double b = wrap_half(beta);
    KahanSum s;
    s.add(1.0);
    double peak = 1.0;
    for (long k = 1;; ++k) {
        const double mag = 2.0 * std::exp(-kPi * t * double(k) * double(k));
        s.add(mag * std::cos(2.0 * kPi * k * b));
        peak = std::max(peak, mag);
        if (2.0 * gauss_tail(t, k, 0, 0.0) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 1, "vartheta_hat");
    }
    return s.value();
}

double vartheta2(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    double b;
    const double outer_sign = wrap_half_signed(beta, b);
    KahanSum s;
    double peak = std::exp(-kPi * t * b * b);
    s.add(peak);
    double sign = -1.0;
    for (long k = 1;; ++k, sign = -sign) {
        const double tp = std::exp(-kPi * t * (k + b) * (k + b));
        const double tm = std::exp(-kPi * t * (k - b) * (k - b));
        s.add(sign * tp);
        s.add(sign * tm);
        peak = std::max(peak, std::max(tp, tm));
        if (2.0 * gauss_tail(t, k, 0, 0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 1, "vartheta2");
    }
    return outer_sign * s.value();
}

double vartheta2_hat(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    double b;
    const double outer_sign = wrap_half_signed(beta, b);
    KahanSum s;
    double peak = 0.0;
    for (long k = 0;; ++k) {
        const double mag = 2.0 * std::exp(-kPi * t * (k + 0.5) * (k + 0.5));
        s.add(mag * std::cos((2.0 * k + 1.0) * kPi * b));
        peak = std::max(peak, mag);
        if (2.0 * gauss_tail(t, k, 0, -0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 2, "vartheta2_hat");
    }
    return outer_sign * s.value();
}

}  // namespace direct

// ---------------------------------------------------------------------------
// Routed entry points: the summed series always has width >= 1
// ---------------------------------------------------------------------------

double theta2(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    if (t < 1.0) return direct::theta4(1.0 / t, budget) / std::sqrt(t);
    return direct::theta2(t, budget);
}

double theta3(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    if (t < 1.0) return direct::theta3(1.0 / t, budget) / std::sqrt(t);
    return direct::theta3(t, budget);
}

double theta4(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    if (t < 1.0) return direct::theta2(1.0 / t, budget) / std::sqrt(t);
    return direct::theta4(t, budget);
}

double theta3_m1(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    if (t < 1.0) return theta3(t, budget) - 1.0;
    check_budget(budget);
    KahanSum s;
    double peak = 0.0;
    for (long k = 1;; ++k) {
        const double term = 2.0 * std::exp(-kPi * t * double(k) * double(k));
        s.add(term);
        peak = std::max(peak, term);
        if (2.0 * gauss_tail(t, k, 0, 0.0) <= budget.rel_tol * peak) break;
        enforce(budget, 2 * k, "theta3_m1");
    }
    return s.value();
}

double theta4_m1(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    if (t < 1.0) return theta4(t, budget) - 1.0;
    check_budget(budget);
    KahanSum s;
    double peak = 0.0;
    double sign = -1.0;
    for (long k = 1;; ++k, sign = -sign) {
        const double mag = 2.0 * std::exp(-kPi * t * double(k) * double(k));
        s.add(sign * mag);
        peak = std::max(peak, mag);
        if (2.0 * gauss_tail(t, k, 0, 0.0) <= budget.rel_tol * peak) break;
        enforce(budget, 2 * k, "theta4_m1");
    }
    return s.value();
}

double vartheta(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    if (t < 1.0) return direct::vartheta_hat(beta, 1.0 / t, budget) / std::sqrt(t);
    return direct::vartheta(beta, t, budget);
}

double vartheta_hat(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    if (t < 1.0) return direct::vartheta(beta, 1.0 / t, budget) / std::sqrt(t);
    return direct::vartheta_hat(beta, t, budget);
}

double vartheta2(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    if (t < 1.0) return direct::vartheta2_hat(beta, 1.0 / t, budget) / std::sqrt(t);
    return direct::vartheta2(beta, t, budget);
}

double vartheta2_hat(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    if (t < 1.0) return direct::vartheta2(beta, 1.0 / t, budget) / std::sqrt(t);
    return direct::vartheta2_hat(beta, t, budget);
}

double theta4_product(double t, int n_factors) {
    require_positive(t, "t");
    if (n_factors < 1) throw NonPositiveParameter("n_factors must be >= 1");
    double p = 1.0;
    for (int k = 1; k <= n_factors; ++k) {
        const double even = -std::expm1(-2.0 * kPi * k * t);
        const double odd = -std::expm1(-(2.0 * k - 1.0) * kPi * t);
        p *= even * odd * odd;
    }
    return p;
}

// ---------------------------------------------------------------------------
// beta-derivatives
// ---------------------------------------------------------------------------

namespace {

// d/dbeta sum_k e^{-pi t k^2} cos(2 pi k b) = -4 pi sum_{k>=1} k e^{-pi t k^2} sin(2 pi k b)
double d_vartheta_hat_direct(double b, double t, const SeriesBudget& budget) {
    KahanSum s;
    double peak = 0.0;
    for (long k = 1;; ++k) {
        const double mag = 4.0 * kPi * k * std::exp(-kPi * t * double(k) * double(k));
        s.add(-mag * std::sin(2.0 * kPi * k * b));
        peak = std::max(peak, mag);
        if (4.0 * kPi * gauss_tail(t, k, 1, 0.0) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k, "d_vartheta_hat");
    }
    return s.value();
}

// d/dbeta sum_k e^{-pi t (k+b)^2} = -2 pi t sum_k (k+b) e^{-pi t (k+b)^2}
double d_vartheta_direct(double b, double t, const SeriesBudget& budget) {
    KahanSum s;
    double peak = std::abs(2.0 * kPi * t * b) * std::exp(-kPi * t * b * b);
    s.add(-2.0 * kPi * t * b * std::exp(-kPi * t * b * b));
    for (long k = 1;; ++k) {
        const double tp = (k + b) * std::exp(-kPi * t * (k + b) * (k + b));
        const double tm = (-k + b) * std::exp(-kPi * t * (k - b) * (k - b));
        s.add(-2.0 * kPi * t * tp);
        s.add(-2.0 * kPi * t * tm);
        peak = std::max(peak, 2.0 * kPi * t * std::max(std::abs(tp), std::abs(tm)));
        if (4.0 * kPi * t * gauss_tail(t, k, 1, 0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 1, "d_vartheta");
    }
    return s.value();
}

// d/dbeta sum_k (-1)^k e^{-pi t (k+b)^2}
double d_vartheta2_direct(double b, double t, const SeriesBudget& budget) {
    KahanSum s;
    double peak = std::abs(2.0 * kPi * t * b) * std::exp(-kPi * t * b * b);
    s.add(-2.0 * kPi * t * b * std::exp(-kPi * t * b * b));
    double sign = -1.0;
    for (long k = 1;; ++k, sign = -sign) {
        const double tp = (k + b) * std::exp(-kPi * t * (k + b) * (k + b));
        const double tm = (-k + b) * std::exp(-kPi * t * (k - b) * (k - b));
        s.add(-2.0 * kPi * t * sign * tp);
        s.add(-2.0 * kPi * t * sign * tm);
        peak = std::max(peak, 2.0 * kPi * t * std::max(std::abs(tp), std::abs(tm)));
        if (4.0 * kPi * t * gauss_tail(t, k, 1, 0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 1, "d_vartheta2");
    }
    return s.value();
}

// d/dbeta sum_k e^{-pi t (k+1/2)^2} cos(2 pi (k+1/2) b)
//   = -4 pi sum_{k>=0} (k+1/2) e^{-pi t (k+1/2)^2} sin((2k+1) pi b)
double d_vartheta2_hat_direct(double b, double t, const SeriesBudget& budget) {
    KahanSum s;
    double peak = 0.0;
    for (long k = 0;; ++k) {
        const double mag = 4.0 * kPi * (k + 0.5) * std::exp(-kPi * t * (k + 0.5) * (k + 0.5));
        s.add(-mag * std::sin((2.0 * k + 1.0) * kPi * b));
        peak = std::max(peak, mag);
        if (4.0 * kPi * gauss_tail(t, k, 1, -0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 2, "d_vartheta2_hat");
    }
    return s.value();
}

}  // namespace

double d_vartheta(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    const double b = wrap_half(beta);
    if (t < 1.0) return d_vartheta_hat_direct(b, 1.0 / t, budget) / std::sqrt(t);
    return d_vartheta_direct(b, t, budget);
}

double d_vartheta2(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    double b;
    const double sign = wrap_half_signed(beta, b);
    if (t < 1.0) return sign * d_vartheta2_hat_direct(b, 1.0 / t, budget) / std::sqrt(t);
    return sign * d_vartheta2_direct(b, t, budget);
}

double d_vartheta2_hat(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    double b;
    const double sign = wrap_half_signed(beta, b);
    if (t < 1.0) return sign * d_vartheta2_direct(b, 1.0 / t, budget) / std::sqrt(t);
    return sign * d_vartheta2_hat_direct(b, t, budget);
}

// ---------------------------------------------------------------------------
// Derivative-to-sine ratios
// ---------------------------------------------------------------------------

namespace {

constexpr double kSineGuard = 1e-8;

// q_ratio limits at the removable singularities, width >= 1 side.
double q_limit_at_zero(double t, const SeriesBudget& budget) {
    KahanSum s;
    double peak = 0.0;
    for (long k = 1;; ++k) {
        const double term = 4.0 * kPi * double(k) * double(k) * std::exp(-kPi * t * double(k) * double(k));
        s.add(term);
        peak = std::max(peak, term);
        if (4.0 * kPi * gauss_tail(t, k, 2, 0.0) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k, "q_ratio");
    }
    return s.value();
}

double q_limit_at_half(double t, const SeriesBudget& budget) {
    KahanSum s;
    double peak = 0.0;
    double sign = 1.0;  // (-1)^{k+1} starting at k = 1
    for (long k = 1;; ++k, sign = -sign) {
        const double mag = 4.0 * kPi * double(k) * double(k) * std::exp(-kPi * t * double(k) * double(k));
        s.add(sign * mag);
        peak = std::max(peak, mag);
        if (4.0 * kPi * gauss_tail(t, k, 2, 0.0) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k, "q_ratio");
    }
    return s.value();
}

// Dual-side (t < 1) limits, summed with width 1/t >= 1.
double q_limit_at_zero_dual(double t, const SeriesBudget& budget) {
    const double u = 1.0 / t;
    KahanSum s;
    s.add(1.0);
    double peak = 1.0;
    for (long k = 1;; ++k) {
        const double g = std::exp(-kPi * u * double(k) * double(k));
        const double term = 2.0 * (1.0 - 2.0 * kPi * u * double(k) * double(k)) * g;
        s.add(term);
        peak = std::max(peak, std::abs(term));
        if (2.0 * (1.0 + 2.0 * kPi * u) * gauss_tail(u, k, 2, 0.0) <=
            budget.rel_tol * scale_of(peak, s.value()))
            break;
        enforce(budget, 2 * k, "q_ratio");
    }
    return std::pow(t, -1.5) * s.value();
}

double q_limit_at_half_dual(double t, const SeriesBudget& budget) {
    const double u = 1.0 / t;
    KahanSum s;
    double peak = 0.0;
    for (long k = 0;; ++k) {
        const double h = (k + 0.5) * (k + 0.5);
        const double term = 2.0 * (2.0 * kPi * u * h - 1.0) * std::exp(-kPi * u * h);
        s.add(term);
        peak = std::max(peak, std::abs(term));
        if (2.0 * (1.0 + 2.0 * kPi * u) * gauss_tail(u, k, 2, -0.5) <=
            budget.rel_tol * scale_of(peak, s.value()))
            break;
        enforce(budget, 2 * k + 2, "q_ratio");
    }
    return std::pow(t, -1.5) * s.value();
}

double q2_limit_at_zero(double t, const SeriesBudget& budget) {
    KahanSum s;
    double peak = 0.0;
    for (long k = 0;; ++k) {
        const double term =
            4.0 * kPi * (k + 0.5) * (2.0 * k + 1.0) * std::exp(-kPi * t * (k + 0.5) * (k + 0.5));
        s.add(term);
        peak = std::max(peak, term);
        if (8.0 * kPi * gauss_tail(t, k, 2, -0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 2, "q2_ratio");
    }
    return s.value();
}

double q2_limit_at_zero_dual(double t, const SeriesBudget& budget) {
    const double u = 1.0 / t;
    KahanSum s;
    s.add(1.0);
    double peak = 1.0;
    double sign = -1.0;
    for (long k = 1;; ++k, sign = -sign) {
        const double g = std::exp(-kPi * u * double(k) * double(k));
        const double term = 2.0 * sign * (1.0 - 2.0 * kPi * u * double(k) * double(k)) * g;
        s.add(term);
        peak = std::max(peak, std::abs(term));
        if (2.0 * (1.0 + 2.0 * kPi * u) * gauss_tail(u, k, 2, 0.0) <=
            budget.rel_tol * scale_of(peak, s.value()))
            break;
        enforce(budget, 2 * k, "q2_ratio");
    }
    return 2.0 * std::pow(t, -1.5) * s.value();
}

}  // namespace

double q_ratio(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    const double b = std::abs(wrap_half(beta));  // even, 1-periodic: reduce to [0, 1/2]
    const double s2 = std::sin(2.0 * kPi * b);
    if (t >= 1.0) {
        if (std::abs(s2) < kSineGuard)
            return b < 0.25 ? q_limit_at_zero(t, budget) : q_limit_at_half(t, budget);
        KahanSum s;
        double peak = 0.0;
        for (long k = 1;; ++k) {
            const double mag = 4.0 * kPi * k * std::exp(-kPi * t * double(k) * double(k));
            s.add(mag * std::sin(2.0 * kPi * k * b) / s2);
            peak = std::max(peak, mag / std::abs(s2));
            if (4.0 * kPi / std::abs(s2) * gauss_tail(t, k, 1, 0.0) <=
                budget.rel_tol * scale_of(peak, s.value()))
                break;
            enforce(budget, 2 * k, "q_ratio");
        }
        return s.value();
    }
    // Dual side: q_ratio(b;t) = 2 pi t^{-3/2} sum_k (k+b) e^{-pi (k+b)^2 / t} / sin(2 pi b)
    if (std::abs(s2) < kSineGuard)
        return b < 0.25 ? q_limit_at_zero_dual(t, budget) : q_limit_at_half_dual(t, budget);
    const double u = 1.0 / t;
    KahanSum s;
    double peak = std::abs(b) * std::exp(-kPi * u * b * b);
    s.add(b * std::exp(-kPi * u * b * b));
    for (long k = 1;; ++k) {
        const double tp = (k + b) * std::exp(-kPi * u * (k + b) * (k + b));
        const double tm = (-k + b) * std::exp(-kPi * u * (k - b) * (k - b));
        s.add(tp);
        s.add(tm);
        peak = std::max(peak, std::max(std::abs(tp), std::abs(tm)));
        if (2.0 * gauss_tail(u, k, 1, 0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 1, "q_ratio");
    }
    return 2.0 * kPi * std::pow(t, -1.5) * s.value() / s2;
}

double q2_ratio(double beta, double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    const double b = std::abs(wrap_half(beta));
    const double sp = std::sin(kPi * b);  // vanishes only at b = 0 within [0, 1/2]
    if (t >= 1.0) {
        if (std::abs(sp) < kSineGuard) return q2_limit_at_zero(t, budget);
        KahanSum s;
        double peak = 0.0;
        for (long k = 0;; ++k) {
            const double mag = 4.0 * kPi * (k + 0.5) * std::exp(-kPi * t * (k + 0.5) * (k + 0.5));
            s.add(mag * std::sin((2.0 * k + 1.0) * kPi * b) / sp);
            peak = std::max(peak, mag / sp);
            if (4.0 * kPi / sp * gauss_tail(t, k, 1, -0.5) <=
                budget.rel_tol * scale_of(peak, s.value()))
                break;
            enforce(budget, 2 * k + 2, "q2_ratio");
        }
        return s.value();
    }
    if (std::abs(sp) < kSineGuard) return q2_limit_at_zero_dual(t, budget);
    const double u = 1.0 / t;
    KahanSum s;
    double peak = std::abs(b) * std::exp(-kPi * u * b * b);
    s.add(b * std::exp(-kPi * u * b * b));
    double sign = -1.0;
    for (long k = 1;; ++k, sign = -sign) {
        const double tp = (k + b) * std::exp(-kPi * u * (k + b) * (k + b));
        const double tm = (-k + b) * std::exp(-kPi * u * (k - b) * (k - b));
        s.add(sign * tp);
        s.add(sign * tm);
        peak = std::max(peak, std::max(std::abs(tp), std::abs(tm)));
        if (2.0 * gauss_tail(u, k, 1, 0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 1, "q2_ratio");
    }
    return 2.0 * kPi * std::pow(t, -1.5) * s.value() / sp;
}

// ---------------------------------------------------------------------------
// Sandwich envelopes
// ---------------------------------------------------------------------------

double bound_a(double t) {
    if (t < 0.0) throw NonPositiveParameter("t must be >= 0");
    if (t < 1.0) return t == 0.0 ? 0.0 : std::pow(t, -1.5) * std::exp(-kPi / (4.0 * t));
    return (1.0 - 1.0 / 3000.0) * 4.0 * kPi * std::exp(-kPi * t);
}

double bound_b(double t) {
    if (t < 0.0) throw NonPositiveParameter("t must be >= 0");
    if (t < 1.0) return std::pow(t, -1.5);  // +inf at t = 0
    return (1.0 + 1.0 / 3000.0) * 4.0 * kPi * std::exp(-kPi * t);
}

double bound_a2(double t) {
    if (t < 0.0) throw NonPositiveParameter("t must be >= 0");
    const double c = 2.0 * kPi * (1.0 - 1.0 / 175.0);
    if (t < 1.0) return t == 0.0 ? 0.0 : c * std::pow(t, -1.5) * std::exp(-kPi / (4.0 * t));
    return c * std::exp(-kPi * t / 4.0);
}

double bound_b2(double t) {
    if (t < 0.0) throw NonPositiveParameter("t must be >= 0");
    if (t < 1.0) return kPi * std::pow(t, -1.5);
    return 2.0 * kPi * (1.0 + 1.0 / 55.0) * std::exp(-kPi * t / 4.0);
}

// ---------------------------------------------------------------------------
// t-derivatives of the nulls
// ---------------------------------------------------------------------------

namespace {

double theta2_dt_direct(double t, const SeriesBudget& budget) {
    KahanSum s;
    double peak = 0.0;
    for (long k = 0;; ++k) {
        const double h = (k + 0.5) * (k + 0.5);
        const double term = -2.0 * kPi * h * std::exp(-kPi * t * h);
        s.add(term);
        peak = std::max(peak, std::abs(term));
        if (2.0 * kPi * gauss_tail(t, k, 2, -0.5) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k + 2, "theta2_dt");
    }
    return s.value();
}

double theta4_dt_direct(double t, const SeriesBudget& budget) {
    KahanSum s;
    double peak = 0.0;
    double sign = 1.0;  // (-1)^{k+1}, k = 1
    for (long k = 1;; ++k, sign = -sign) {
        const double mag = 2.0 * kPi * double(k) * double(k) * std::exp(-kPi * t * double(k) * double(k));
        s.add(sign * mag);
        peak = std::max(peak, mag);
        if (2.0 * kPi * gauss_tail(t, k, 2, 0.0) <= budget.rel_tol * scale_of(peak, s.value())) break;
        enforce(budget, 2 * k, "theta4_dt");
    }
    return s.value();
}

}  // namespace

double theta2_dt(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    if (t >= 1.0) return theta2_dt_direct(t, budget);
    const double v = 1.0 / t;
    return -0.5 * std::pow(t, -1.5) * direct::theta4(v, budget) -
           std::pow(t, -2.5) * theta4_dt_direct(v, budget);
}

double theta4_dt(double t, const SeriesBudget& budget) {
    require_positive(t, "t");
    check_budget(budget);
    if (t >= 1.0) return theta4_dt_direct(t, budget);
    const double v = 1.0 / t;
    return -0.5 * std::pow(t, -1.5) * direct::theta2(v, budget) -
           std::pow(t, -2.5) * theta2_dt_direct(v, budget);
}

}  // namespace maxtheta::theta1d
