#ifndef MAXTHETA_THETA1D_HPP
#define MAXTHETA_THETA1D_HPP

// One-dimensional Jacobi theta nulls and their shifted / alternating
// relatives, restricted to a real positive width parameter t:
//
//   theta2(t)            = sum_k exp(-pi t (k+1/2)^2)
//   theta3(t)            = sum_k exp(-pi t k^2)
//   theta4(t)            = sum_k (-1)^k exp(-pi t k^2)
//   vartheta(b; t)       = sum_k exp(-pi t (k+b)^2)
//   vartheta_hat(b; t)   = sum_k exp(-pi t k^2) cos(2 pi k b)
//   vartheta2(b; t)      = sum_k (-1)^k exp(-pi t (k+b)^2)
//   vartheta2_hat(b; t)  = sum_k exp(-pi t (k+1/2)^2) cos(2 pi (k+1/2) b)
//
// All sums run over k in Z.  Poisson summation pairs the two sides:
//
//   vartheta_hat(b; t)  = t^{-1/2} vartheta(b; 1/t)
//   vartheta2(b; t)     = t^{-1/2} vartheta2_hat(b; 1/t)
//   theta2(t) = t^{-1/2} theta4(1/t),   theta3(t) = t^{-1/2} theta3(1/t)
//
// Every public function routes evaluation through these identities so the
// series that actually gets summed always has width >= 1 and converges in a
// handful of terms.  The maxtheta::theta1d::direct namespace exposes the raw
// sums without routing; identity tests compare the two.
//
// q_ratio / q2_ratio are the derivative-to-sine ratios
//
//   q_ratio(b; t)  = - d/db vartheta_hat(b; t) / sin(2 pi b)
//   q2_ratio(b; t) = - d/db vartheta2_hat(b; t) / sin(pi b)
//
// from Montgomery's minimal-theta argument (Glasgow Math. J. 30, 1988) and
// its half-integer-characteristic companion.  Both are even, 1-periodic and
// strictly positive; bound_a/bound_b and bound_a2/bound_b2 are the piecewise
// envelopes that sandwich them.  Removable singularities (b in Z/2 for
// q_ratio, b in Z for q2_ratio) are evaluated by the l'Hopital limit; a
// guard band |sin| < 1e-8 switches to the limit formula since the naive
// quotient is unstable near the zeros of the sine.
//
// All functions are pure; values are freely shareable across threads.

#include "maxtheta/common.hpp"

namespace maxtheta::theta1d {

double theta2(double t, const SeriesBudget& budget = {});
double theta3(double t, const SeriesBudget& budget = {});
double theta4(double t, const SeriesBudget& budget = {});

/// theta3(t) - 1 and theta4(t) - 1 without cancellation for large t.
double theta3_m1(double t, const SeriesBudget& budget = {});
double theta4_m1(double t, const SeriesBudget& budget = {});

/// Truncated infinite product
///   prod_{k=1..n} (1 - e^{-2 pi k t}) (1 - e^{-(2k-1) pi t})^2,
/// an oracle for theta4 that is independent of the series path.  Every
/// factor lies in (0,1), so the value is < 1 for all t > 0.
double theta4_product(double t, int n_factors);

double vartheta(double beta, double t, const SeriesBudget& budget = {});
double vartheta_hat(double beta, double t, const SeriesBudget& budget = {});
double vartheta2(double beta, double t, const SeriesBudget& budget = {});
double vartheta2_hat(double beta, double t, const SeriesBudget& budget = {});

/// d/dbeta of vartheta; odd and 1-periodic in beta.
double d_vartheta(double beta, double t, const SeriesBudget& budget = {});
/// d/dbeta of vartheta2 (period 2, antiperiod 1 in beta).
double d_vartheta2(double beta, double t, const SeriesBudget& budget = {});
/// d/dbeta of vartheta2_hat.
double d_vartheta2_hat(double beta, double t, const SeriesBudget& budget = {});

/// Montgomery's auxiliary ratio and its half-integer companion.
double q_ratio(double beta, double t, const SeriesBudget& budget = {});
double q2_ratio(double beta, double t, const SeriesBudget& budget = {});

/// Piecewise sandwich envelopes: bound_a(t) <= q_ratio(b;t) <= bound_b(t)
/// and bound_a2(t) <= q2_ratio(b;t) <= bound_b2(t) for all real b, t >= 0.
/// Branch point at t = 1; bound_a2 is continuous across it.
double bound_a(double t);
double bound_b(double t);
double bound_a2(double t);
double bound_b2(double t);

/// d/dt of theta2 and theta4 (term-wise; used by the y-derivative of the
/// factorized centered lattice theta).
double theta2_dt(double t, const SeriesBudget& budget = {});
double theta4_dt(double t, const SeriesBudget& budget = {});

/// Raw sums, no functional-equation routing.  They converge for any t > 0
/// but need O(sqrt(1/t)) terms for small t; the routed entry points above
/// are what callers normally want.  Kept public so that the Jacobi-identity
/// test suites can compare genuinely independent evaluation routes.
namespace direct {
double theta2(double t, const SeriesBudget& budget = {});
double theta3(double t, const SeriesBudget& budget = {});
double theta4(double t, const SeriesBudget& budget = {});
double vartheta(double beta, double t, const SeriesBudget& budget = {});
double vartheta_hat(double beta, double t, const SeriesBudget& budget = {});
double vartheta2(double beta, double t, const SeriesBudget& budget = {});
double vartheta2_hat(double beta, double t, const SeriesBudget& budget = {});
}  // namespace direct

}  // namespace maxtheta::theta1d

#endif
