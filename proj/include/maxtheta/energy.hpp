#ifndef MAXTHETA_ENERGY_HPP
#define MAXTHETA_ENERGY_HPP

// Madelung-like and cell-center lattice energies for completely monotone
// potentials f of the squared distance r = |v|^2:
//
//   energy_pm[L] = sum_{(k,l) != 0} (-1)^{k+l} f(|k v1 + l v2|^2)
//   energy_c[L]  = sum_{k,l}        f(|k v1 + l v2 + c|^2),  c = (v1+v2)/2
//
// Writing f as a Laplace transform f(r) = int e^{-r t} dmu(t) turns these
// into integrals of the alternating / centered theta functions, which is how
// they are evaluated: the integration variable below pi is folded to the
// dual side through the functional equation, so both integrands decay
// exponentially (the Ewald trick).  For inverse power laws the same value at
// any s > 0 comes out of the analytically continued split; an independent
// per-vector incomplete-gamma Ewald sum (epstein_pm_gamma) cross-checks it.
//
// Exponents follow the distance convention: epstein_*(L, s) sums |v|^{-s},
// i.e. the potential is f(r) = r^{-s/2} in the squared-distance argument.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxtheta/common.hpp"
#include "maxtheta/lattice.hpp"

namespace maxtheta {

/// A completely monotone interaction, as Laplace transform data.
struct Potential {
    enum class Kind { inverse_power, gaussian, laplace_measure };

    Kind kind = Kind::gaussian;
    double s = 4.0;  // inverse_power: f(r) = r^{-s/2}  (s = distance exponent)
    double t = 1.0;  // gaussian:      f(r) = e^{-t r}
    std::vector<std::pair<double, double>> nodes;  // laplace_measure: (t_i > 0, w_i >= 0)

    static Potential inverse_power(double s);
    static Potential gaussian(double t);
    static Potential laplace_measure(std::vector<std::pair<double, double>> nodes);

    /// Whether |f(r)| = O(r^{-1-eps}); needed for the absolutely summable
    /// alternating energy.  Inverse power laws qualify iff s > 2.
    bool absolutely_summable() const;

    double operator()(double r) const;  // f at squared distance r

    /// "pow:s=3", "gauss:t=1.5" or "measure:[(t,w),...]".
    static Potential parse(std::string_view text);
    std::string str() const;
};

/// Ewald split point pi * eta; results are eta-independent within tolerance.
struct EwaldSplit {
    double eta = 1.0;
};

/// Alternating (Madelung-like) energy; origin excluded; < 0 for completely
/// monotone f.  Throws NonSummablePotential for inverse powers with s <= 2
/// (use epstein_pm for the Ewald-regularized value).
double energy_pm(const LatticeParam& L, const Potential& f, const SeriesBudget& budget = {});

/// Cell-center energy; all indices included (the center never hits a site).
double energy_c(const LatticeParam& L, const Potential& f, const SeriesBudget& budget = {});

/// Alternating and centered Epstein zeta functions.  Absolutely convergent
/// sums for s > 2; for 0 < s <= 2 the value is the Ewald-regularized one
/// (epstein_c has a genuine pole at s = 2).
double epstein_pm(const LatticeParam& L, double s, const EwaldSplit& split = {},
                  const SeriesBudget& budget = {});
double epstein_c(const LatticeParam& L, double s, const EwaldSplit& split = {},
                 const SeriesBudget& budget = {});

/// Plain Epstein zeta sum_{v != 0} |v|^{-s}, s > 2 only.
double epstein_plain(const LatticeParam& L, double s, const EwaldSplit& split = {},
                     const SeriesBudget& budget = {});

/// Per-vector incomplete-gamma Ewald evaluation of epstein_pm; an
/// independent route used as a cross-check.
double epstein_pm_gamma(const LatticeParam& L, double s, const EwaldSplit& split = {});

/// Rock-salt energy zeta_L(p) + rho^{-1} zeta^pm_L(q), p > q > 2.
double rocksalt_energy(const LatticeParam& L, double p, double q, double rho,
                       const EwaldSplit& split = {}, const SeriesBudget& budget = {});

/// 3D NaCl Madelung constant sum' (-1)^{m+n+p} (m^2+n^2+p^2)^{-s/2} via the
/// cubic-lattice factorization of the alternating theta into theta4(t)^3.
double madelung_nacl3d(double s = 1.0, const EwaldSplit& split = {},
                       const SeriesBudget& budget = {});

namespace energy_detail {
/// Upper incomplete gamma Gamma(a, x) for x > 0 and any real a.
double upper_gamma(double a, double x);
}  // namespace energy_detail

}  // namespace maxtheta

#endif
