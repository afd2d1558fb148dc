#ifndef MAXTHETA_THETA2D_HPP
#define MAXTHETA_THETA2D_HPP

// Two-dimensional lattice theta functions for a unit-covolume lattice with
// parameter (x, y) and Gram form q(k,l) = (k^2 + 2xkl + (x^2+y^2)l^2)/y:
//
//   theta_plain(alpha)        = sum_{k,l} exp(-pi alpha q(k,l))
//   theta_centered(alpha)     = sum_{k,l} exp(-pi alpha q(k+1/2, l+1/2))
//   theta_alternating(alpha)  = sum_{k,l} (-1)^{k+l} exp(-pi alpha q(k,l))
//   theta_shifted(xi,eta)     = sum_{k,l} exp(-pi alpha q(k+xi, l+eta))
//   theta_character(xi,eta)   = sum_{k,l} exp(-pi alpha q(k,l)) cos(2 pi (k eta - l xi))
//
// Poisson summation gives
//
//   theta_plain(alpha)    = (1/alpha) theta_plain(1/alpha)
//   theta_centered(alpha) = (1/alpha) theta_alternating(1/alpha)
//   theta_shifted(xi,eta;alpha) = (1/alpha) theta_character(xi,eta;1/alpha)
//
// and the plain/centered/alternating entry points route alpha < 1 through
// these identities so the summed series always has effective width >= 1.
// theta_shifted and theta_character always evaluate their own series (with
// certified truncation), so that residuals of the identities above measure
// the identities themselves rather than the dispatch; the raw, unrouted
// centered/alternating/plain sums are exposed in maxtheta::theta2d_direct
// for the same purpose.
//
// The centered sum is the cell-center theta only in a Minkowski basis, i.e.
// for reduced (x, y); theta_centered therefore rejects unreduced parameters
// (the caller can reduce first, and evaluate() does so automatically,
// flagging the reduction).  theta_alternating is basis-dependent for the
// same reason and is compared across bases only after reduction.
//
// All evaluators are pure functions; scans may call them from many threads.

#include "maxtheta/common.hpp"
#include "maxtheta/lattice.hpp"

namespace maxtheta {

enum class ThetaFlavor { plain, centered, alternating, shifted, character };

struct ThetaQuery {
    LatticeParam lattice;
    double alpha = 1.0;
    double xi = 0.0, eta = 0.0;  // used by shifted / character flavors
    ThetaFlavor flavor = ThetaFlavor::plain;
    SeriesBudget budget;
};

struct ThetaResult {
    double value = 0.0;
    LatticeParam used;        // parameter actually evaluated (post-reduction)
    bool was_reduced = false; // true if the input had to be reduced first
    int outer_radius = 0;     // truncation radius of the outer (row) sum
    int inner_radius = 0;     // certified bound for the inner 1D sums
    double alpha_effective = 0.0;  // alpha after functional-equation routing
};

double theta_plain(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double theta_centered(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double theta_alternating(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});

/// theta_plain - 1 and theta_alternating - 1 without cancellation at large
/// alpha (the (0,0) term removed), as the energy integrands need them.
double theta_plain_m1(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double theta_alternating_m1(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});

double theta_shifted(const LatticeParam& L, double xi, double eta, double alpha,
                     const SeriesBudget& budget = {});
double theta_character(const LatticeParam& L, double xi, double eta, double alpha,
                       const SeriesBudget& budget = {});

/// Centered theta of the x = 1/2 lattice (1/2, y) in factorized form,
/// (1/2) theta2(alpha y) theta2(alpha / (4y)).
double theta_c_factorized(double y, double alpha, const SeriesBudget& budget = {});

/// Analytic derivatives.  The _dx pair is sign-guaranteed positive on
/// x in (0,1/2), y >= 1/sqrt(2) and throws DomainViolation outside that
/// rectangle; the *_unchecked variants evaluate the same series anywhere.
/// The _dy pair differentiates the factorized x = 1/2 form and requires
/// x = 1/2 exactly.
double dtheta_c_dx(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double dtheta_pm_dx(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double dtheta_c_dx_unchecked(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double dtheta_pm_dx_unchecked(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double dtheta_c_dy(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double dtheta_pm_dy(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});

/// Query-level evaluation: validates, reduces when required (recording the
/// fact), dispatches on flavor and reports truncation radii.
ThetaResult evaluate(const ThetaQuery& q);

/// Raw sums without functional-equation routing; any y > 0 accepted.
namespace theta2d_direct {
double plain(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double centered(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
double alternating(const LatticeParam& L, double alpha, const SeriesBudget& budget = {});
}  // namespace theta2d_direct

}  // namespace maxtheta

#endif
