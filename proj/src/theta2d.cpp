#include "maxtheta/theta2d.hpp"

#include <cmath>
#include <limits>

#include "maxtheta/theta1d.hpp"

namespace maxtheta {

namespace {

double wrap_half(double b) { return b - std::floor(b + 0.5); }

// Upper bound on sum_{j >= K+1} (j+1)^d exp(-pi t (j - c)^2), c <= 1.
double gauss_tail(double t, long K, int d, double c) {
    double q = std::exp(-kPi * t * (2.0 * (K + 1 - c) + 1.0));
    for (int i = 0; i < d; ++i) q *= (K + 3.0) / (K + 2.0);
    if (!(q < 0.5)) return std::numeric_limits<double>::infinity();
    double first = std::exp(-kPi * t * (K + 1 - c) * (K + 1 - c));
    for (int i = 0; i < d; ++i) first *= (K + 2.0);
    return first / (1.0 - q);
}

void enforce(const SeriesBudget& b, long n, const char* who) {
    if (n > b.max_terms) throw BudgetExceeded(std::string(who) + ": max_terms reached before tail bound met");
}

void validate(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    require_positive(L.y, "y");
    require_positive(alpha, "alpha");
    check_budget(budget);
}

// ---------------------------------------------------------------------------
// Row-factorized double sums.  Completing the square in k,
//   q(k + xi, l + eta) = ((k + xi + x(l + eta))^2 + y^2 (l + eta)^2) / y,
// turns each row into a 1D shifted theta at width alpha/y.
// ---------------------------------------------------------------------------

double plain_sum(double x, double y, double alpha, const SeriesBudget& b, int* radius = nullptr) {
    const double u = alpha / y, w = alpha * y;
    const double vmax = theta1d::theta3(u, b);
    KahanSum s;
    s.add(vmax);  // l = 0 row: vartheta(0; u) = theta3(u)
    double peak = vmax;
    long l = 1;
    for (;; ++l) {
        const double g = std::exp(-kPi * w * double(l) * double(l));
        const double term = 2.0 * g * theta1d::vartheta(x * l, u, b);
        s.add(term);
        peak = std::max(peak, term);
        if (2.0 * vmax * gauss_tail(w, l, 0, 0.0) <= b.rel_tol * std::max(peak, s.value())) break;
        enforce(b, 2 * l + 1, "theta_plain");
    }
    if (radius) *radius = int(l);
    return s.value();
}

double plain_m1_sum(double x, double y, double alpha, const SeriesBudget& b) {
    const double u = alpha / y, w = alpha * y;
    const double vmax = theta1d::theta3(u, b);
    KahanSum s;
    s.add(theta1d::theta3_m1(u, b));
    double peak = std::abs(s.value());
    for (long l = 1;; ++l) {
        const double g = std::exp(-kPi * w * double(l) * double(l));
        const double term = 2.0 * g * theta1d::vartheta(x * l, u, b);
        s.add(term);
        peak = std::max(peak, term);
        if (2.0 * vmax * gauss_tail(w, l, 0, 0.0) <= b.rel_tol * std::max(peak, 1e-300)) break;
        enforce(b, 2 * l + 1, "theta_plain_m1");
    }
    return s.value();
}

double centered_sum(double x, double y, double alpha, const SeriesBudget& b, int* radius = nullptr) {
    const double u = alpha / y, w = alpha * y;
    const double vmax = theta1d::theta3(u, b);
    KahanSum s;
    double peak = 0.0;
    long l = 0;
    for (;; ++l) {
        const double h = l + 0.5;
        const double g = std::exp(-kPi * w * h * h);
        const double term = 2.0 * g * theta1d::vartheta(0.5 + x * h, u, b);
        s.add(term);
        peak = std::max(peak, term);
        if (2.0 * vmax * gauss_tail(w, l, 0, -0.5) <= b.rel_tol * std::max(peak, s.value())) break;
        enforce(b, 2 * l + 2, "theta_centered");
    }
    if (radius) *radius = int(l);
    return s.value();
}

double alternating_sum(double x, double y, double alpha, const SeriesBudget& b, int* radius = nullptr,
                       bool minus_one = false) {
    const double u = alpha / y, w = alpha * y;
    const double vmax = theta1d::theta3(u, b);
    KahanSum s;
    s.add(minus_one ? theta1d::theta4_m1(u, b) : theta1d::theta4(u, b));
    double peak = std::max(std::abs(s.value()), 1e-300);
    double sign = -1.0;
    long l = 1;
    for (;; ++l, sign = -sign) {
        const double g = std::exp(-kPi * w * double(l) * double(l));
        const double term = 2.0 * sign * g * theta1d::vartheta2(x * l, u, b);
        s.add(term);
        peak = std::max(peak, std::abs(term));
        if (2.0 * vmax * gauss_tail(w, l, 0, 0.0) <= b.rel_tol * peak) break;
        enforce(b, 2 * l + 1, "theta_alternating");
    }
    if (radius) *radius = int(l);
    return s.value();
}

double shifted_sum(double x, double y, double xi, double eta, double alpha, const SeriesBudget& b,
                   int* radius = nullptr) {
    const double u = alpha / y, w = alpha * y;
    const double vmax = theta1d::theta3(u, b);
    KahanSum s;
    s.add(std::exp(-kPi * w * eta * eta) * theta1d::vartheta(xi + x * eta, u, b));
    double peak = std::max(s.value(), 1e-300);
    long l = 1;
    for (;; ++l) {
        const double hp = l + eta, hm = -l + eta;
        const double tp = std::exp(-kPi * w * hp * hp) * theta1d::vartheta(xi + x * hp, u, b);
        const double tm = std::exp(-kPi * w * hm * hm) * theta1d::vartheta(xi + x * hm, u, b);
        s.add(tp);
        s.add(tm);
        peak = std::max(peak, std::max(tp, tm));
        if (2.0 * vmax * gauss_tail(w, l, 0, 0.5) <= b.rel_tol * std::max(peak, s.value())) break;
        enforce(b, 2 * l + 1, "theta_shifted");
    }
    if (radius) *radius = int(l);
    return s.value();
}

double character_sum(double x, double y, double xi, double eta, double alpha, const SeriesBudget& b,
                     int* radius = nullptr) {
    const double u = alpha / y, w = alpha * y;
    // Keep every term with exponent below ln(1/rel_tol) + 14; the neglected
    // ring is then a few thousand terms each below rel_tol * e^{-14}.
    const double lbud = -std::log(b.rel_tol) + 14.0;
    const long kout = long(std::ceil(std::sqrt(lbud / (kPi * w)))) + 1;
    const long kin = long(std::ceil(std::sqrt(lbud / (kPi * u)))) + 1;
    if ((2 * kout + 1) * (2 * kin + 1) > b.max_terms)
        throw BudgetExceeded("theta_character: window exceeds max_terms");
    KahanSum s;
    for (long l = -kout; l <= kout; ++l) {
        const double g = std::exp(-kPi * w * double(l) * double(l));
        const long k0 = std::lround(-x * l);
        for (long k = k0 - kin; k <= k0 + kin; ++k) {
            const double r = k + x * l;
            s.add(g * std::exp(-kPi * u * r * r) * std::cos(2.0 * kPi * (k * eta - l * xi)));
        }
    }
    if (radius) *radius = int(kout);
    return s.value();
}

// Bound for |d/dbeta vartheta(beta; u)| and |d/dbeta vartheta2(beta; u)|,
// valid after the internal wrap of beta to [-1/2, 1/2].
double deriv_bound(double u, const SeriesBudget& b) {
    double s = 0.0;
    for (long k = 0; k < 64; ++k) {
        const double lo = k == 0 ? 0.0 : (k - 0.5);
        const double term = (k + 1.0) * std::exp(-kPi * u * lo * lo);
        s += 2.0 * term;
        if (term < 1e-18 * s) break;
    }
    (void)b;
    return 2.0 * kPi * u * s;
}

// d/dx of the centered sum (row form), valid for any y > 0:
//   2 sum_{l>=0} (l+1/2) e^{-pi alpha y (l+1/2)^2} vartheta'(1/2 + x(l+1/2); alpha/y)
double dc_dx_sum(double x, double y, double alpha, const SeriesBudget& b) {
    const double u = alpha / y, w = alpha * y;
    const double dmax = deriv_bound(u, b);
    KahanSum s;
    double peak = 1e-300;
    for (long l = 0;; ++l) {
        const double h = l + 0.5;
        const double term =
            2.0 * h * std::exp(-kPi * w * h * h) * theta1d::d_vartheta(0.5 + x * h, u, b);
        s.add(term);
        peak = std::max(peak, std::abs(term));
        if (2.0 * dmax * gauss_tail(w, l, 1, -0.5) <= b.rel_tol * peak) break;
        enforce(b, 2 * l + 2, "dtheta_c_dx");
    }
    return s.value();
}

// d/dx of the alternating sum:
//   2 sum_{l>=1} (-1)^l l e^{-pi alpha y l^2} vartheta2'(x l; alpha/y)
double dpm_dx_sum(double x, double y, double alpha, const SeriesBudget& b) {
    const double u = alpha / y, w = alpha * y;
    const double dmax = deriv_bound(u, b);
    KahanSum s;
    double peak = 1e-300;
    double sign = -1.0;
    for (long l = 1;; ++l, sign = -sign) {
        const double term =
            2.0 * sign * l * std::exp(-kPi * w * double(l) * double(l)) *
            theta1d::d_vartheta2(x * l, u, b);
        s.add(term);
        peak = std::max(peak, std::abs(term));
        if (2.0 * dmax * gauss_tail(w, l, 1, 0.0) <= b.rel_tol * peak) break;
        enforce(b, 2 * l + 1, "dtheta_pm_dx");
    }
    return s.value();
}

constexpr double kHalfTol = 1e-12;

}  // namespace

// ---------------------------------------------------------------------------
// Public evaluators
// ---------------------------------------------------------------------------

namespace theta2d_direct {

double plain(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    return plain_sum(L.x, L.y, alpha, budget);
}

double centered(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    return centered_sum(L.x, L.y, alpha, budget);
}

double alternating(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    return alternating_sum(L.x, L.y, alpha, budget);
}

}  // namespace theta2d_direct

double theta_plain(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    if (alpha < 1.0) return plain_sum(L.x, L.y, 1.0 / alpha, budget) / alpha;
    return plain_sum(L.x, L.y, alpha, budget);
}

namespace {

double centered_routed(double x, double y, double alpha, const SeriesBudget& budget,
                       int* radius = nullptr) {
    if (alpha < 1.0) return alternating_sum(x, y, 1.0 / alpha, budget, radius) / alpha;
    return centered_sum(x, y, alpha, budget, radius);
}

double alternating_routed(double x, double y, double alpha, const SeriesBudget& budget,
                          int* radius = nullptr) {
    if (alpha < 1.0) return centered_sum(x, y, 1.0 / alpha, budget, radius) / alpha;
    return alternating_sum(x, y, alpha, budget, radius);
}

}  // namespace

double theta_centered(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    if (!L.reduced())
        throw NotReduced("theta_centered requires a reduced parameter; reduce_to_fundamental first");
    return centered_routed(L.x, L.y, alpha, budget);
}

double theta_alternating(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    return alternating_routed(L.x, L.y, alpha, budget);
}

double theta_plain_m1(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    if (alpha < 1.0) return plain_sum(L.x, L.y, 1.0 / alpha, budget) / alpha - 1.0;
    return plain_m1_sum(L.x, L.y, alpha, budget);
}

double theta_alternating_m1(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    if (alpha < 1.0) return centered_sum(L.x, L.y, 1.0 / alpha, budget) / alpha - 1.0;
    return alternating_sum(L.x, L.y, alpha, budget, nullptr, /*minus_one=*/true);
}

double theta_shifted(const LatticeParam& L, double xi, double eta, double alpha,
                     const SeriesBudget& budget) {
    validate(L, alpha, budget);
    const double xw = wrap_half(xi), ew = wrap_half(eta);
    const bool xi_half = std::abs(std::abs(xw) - 0.5) < kHalfTol;
    const bool eta_half = std::abs(std::abs(ew) - 0.5) < kHalfTol;
    if (xw == 0.0 && ew == 0.0) return theta_plain(L, alpha, budget);
    if (xi_half && eta_half) return centered_routed(L.x, L.y, alpha, budget);
    return shifted_sum(L.x, L.y, xw, ew, alpha, budget);
}

double theta_character(const LatticeParam& L, double xi, double eta, double alpha,
                       const SeriesBudget& budget) {
    validate(L, alpha, budget);
    const double xw = wrap_half(xi), ew = wrap_half(eta);
    const bool xi_half = std::abs(std::abs(xw) - 0.5) < kHalfTol;
    const bool eta_half = std::abs(std::abs(ew) - 0.5) < kHalfTol;
    if (xw == 0.0 && ew == 0.0) return theta_plain(L, alpha, budget);
    if (xi_half && eta_half) return alternating_routed(L.x, L.y, alpha, budget);
    return character_sum(L.x, L.y, xw, ew, alpha, budget);
}

double theta_c_factorized(double y, double alpha, const SeriesBudget& budget) {
    require_positive(y, "y");
    require_positive(alpha, "alpha");
    check_budget(budget);
    return 0.5 * theta1d::theta2(alpha * y, budget) * theta1d::theta2(alpha / (4.0 * y), budget);
}

// ---------------------------------------------------------------------------
// Derivatives
// ---------------------------------------------------------------------------

double dtheta_c_dx_unchecked(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    if (alpha < 1.0) return dpm_dx_sum(L.x, L.y, 1.0 / alpha, budget) / alpha;
    return dc_dx_sum(L.x, L.y, alpha, budget);
}

double dtheta_pm_dx_unchecked(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    if (alpha < 1.0) return dc_dx_sum(L.x, L.y, 1.0 / alpha, budget) / alpha;
    return dpm_dx_sum(L.x, L.y, alpha, budget);
}

namespace {

void check_dx_domain(const LatticeParam& L) {
    if (L.x < -kHalfTol || L.x > 0.5 + kHalfTol || L.y < 1.0 / std::sqrt(2.0) - kHalfTol)
        throw DomainViolation(
            "sign-guaranteed x-derivative needs x in [0, 1/2] and y >= 1/sqrt(2); "
            "use the _unchecked variant to evaluate elsewhere");
}

}  // namespace

double dtheta_c_dx(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    check_dx_domain(L);
    return dtheta_c_dx_unchecked(L, alpha, budget);
}

double dtheta_pm_dx(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    check_dx_domain(L);
    return dtheta_pm_dx_unchecked(L, alpha, budget);
}

double dtheta_c_dy(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    validate(L, alpha, budget);
    if (std::abs(L.x - 0.5) > kHalfTol)
        throw DomainViolation("y-derivative differentiates the x = 1/2 factorization; need x = 1/2");
    const double y = L.y;
    const double a = alpha * y, c = alpha / (4.0 * y);
    return 0.5 * (alpha * theta1d::theta2_dt(a, budget) * theta1d::theta2(c, budget) -
                  (alpha / (4.0 * y * y)) * theta1d::theta2(a, budget) * theta1d::theta2_dt(c, budget));
}

double dtheta_pm_dy(const LatticeParam& L, double alpha, const SeriesBudget& budget) {
    require_positive(alpha, "alpha");
    return dtheta_c_dy(L, 1.0 / alpha, budget) / alpha;
}

// ---------------------------------------------------------------------------
// Query front end
// ---------------------------------------------------------------------------

ThetaResult evaluate(const ThetaQuery& q) {
    validate(q.lattice, q.alpha, q.budget);
    ThetaResult r;
    r.used = q.lattice;
    if (q.flavor == ThetaFlavor::centered && !q.lattice.reduced()) {
        r.used = reduce_to_fundamental(q.lattice).tau;
        r.was_reduced = true;
    }
    const double x = r.used.x, y = r.used.y;
    int radius = 0;
    switch (q.flavor) {
        case ThetaFlavor::plain: {
            r.alpha_effective = q.alpha < 1.0 ? 1.0 / q.alpha : q.alpha;
            r.value = q.alpha < 1.0 ? plain_sum(x, y, 1.0 / q.alpha, q.budget, &radius) / q.alpha
                                    : plain_sum(x, y, q.alpha, q.budget, &radius);
            break;
        }
        case ThetaFlavor::centered:
            r.alpha_effective = q.alpha < 1.0 ? 1.0 / q.alpha : q.alpha;
            r.value = centered_routed(x, y, q.alpha, q.budget, &radius);
            break;
        case ThetaFlavor::alternating:
            r.alpha_effective = q.alpha < 1.0 ? 1.0 / q.alpha : q.alpha;
            r.value = alternating_routed(x, y, q.alpha, q.budget, &radius);
            break;
        case ThetaFlavor::shifted:
            r.alpha_effective = q.alpha;
            r.value = shifted_sum(x, y, wrap_half(q.xi), wrap_half(q.eta), q.alpha, q.budget, &radius);
            break;
        case ThetaFlavor::character:
            r.alpha_effective = q.alpha;
            r.value = character_sum(x, y, wrap_half(q.xi), wrap_half(q.eta), q.alpha, q.budget, &radius);
            break;
    }
    r.outer_radius = radius;
    const double u = r.alpha_effective / y;
    r.inner_radius = int(std::ceil(std::sqrt((-std::log(q.budget.rel_tol) + 14.0) /
                                             (kPi * std::max(u, 1.0 / u))))) + 1;
    return r;
}

}  // namespace maxtheta
