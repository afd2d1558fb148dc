#ifndef MAXTHETA_QUADRATURE_HPP
#define MAXTHETA_QUADRATURE_HPP

// Adaptive Gauss-Kronrod quadrature plus a marching scheme for integrands on
// [a, inf) that decay like w^p e^{-c w}.  Panel subdivision order is fixed,
// so results are deterministic and independent of evaluation order.

#include <cmath>
#include <utility>

#include "maxtheta/common.hpp"

namespace maxtheta::quadrature {

// QUADPACK 15-point Kronrod extension of the 7-point Gauss rule.
namespace detail {
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace detail

struct GkPanel {
    double value;
    double error;
    double fmax;  // largest |f| sampled, for the evaluation-noise floor
};

template <class F>
GkPanel gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0, fmax = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * detail::kXgk[i];
        double fv;
        if (i == 7) {
            fv = f(c);
            fmax = std::max(fmax, std::abs(fv));
        } else {
            const double f1 = f(c - dx), f2 = f(c + dx);
            fmax = std::max({fmax, std::abs(f1), std::abs(f2)});
            fv = f1 + f2;
        }
        kron += detail::kWgk[i] * fv;
        if (i % 2 == 1) gauss += detail::kWg[i / 2] * fv;
    }
    return {kron * h, std::abs(kron - gauss) * h, fmax};
}

template <class F>
double adaptive(F&& f, double a, double b, double abs_tol, int depth = 0) {
    const auto p = gk15(f, a, b);
    // Integrands built from certified series carry O(rel_tol)-relative
    // evaluation noise; once the error estimate reaches that floor no amount
    // of subdivision helps.
    const double noise_floor = (b - a) * p.fmax * 1e-12;
    if (p.error <= abs_tol || p.error <= noise_floor) return p.value;
    if (depth >= 30) throw QuadratureFailure("adaptive quadrature failed to converge");
    const double m = 0.5 * (a + b);
    return adaptive(f, a, m, 0.5 * abs_tol, depth + 1) + adaptive(f, m, b, 0.5 * abs_tol, depth + 1);
}

/// Integral of f over [a, inf) for integrands dominated by w^p e^{-c w}:
/// unit panels are summed until the analytic tail bound
///   |int_T^inf f| <= |f(T)| / (c - max(p,0)/T)     (valid once c T >= 2 max(p,0) + 2)
/// drops below abs_tol.  Throws QuadratureFailure if that never happens.
template <class F>
double integrate_decaying(F&& f, double a, double decay_c, double power_p, double abs_tol) {
    if (!(decay_c > 0.0)) throw QuadratureFailure("nonpositive decay rate");
    const double h = std::min(std::max(1.0, 2.0 / decay_c), 4.0);
    double total = 0.0;
    double t = a;
    for (int panel = 0; panel < 200000; ++panel) {
        total += adaptive(f, t, t + h, abs_tol * 0.05);
        t += h;
        const double pp = std::max(power_p, 0.0);
        if (decay_c * t >= 2.0 * pp + 2.0) {
            const double ft = std::max(std::abs(f(t)), std::abs(f(t + 0.37 * h)));
            const double tail = ft / (decay_c - pp / t);
            if (tail <= 0.5 * abs_tol) return total;
        }
    }
    throw QuadratureFailure("tail bound never met");
}

}  // namespace maxtheta::quadrature

#endif
