#ifndef MAXTHETA_LATTICE_HPP
#define MAXTHETA_LATTICE_HPP

// Unit-covolume 2D lattices indexed by a point tau = x + iy of the upper
// half-plane: x is the shearing parameter, y > 0 the dilation.  The lattice
// is y^{-1/2} [1 x; 0 y] Z^2, with rotations quotiented out by construction.
// Reduction to the fundamental domain D = {|tau| >= 1, |x| <= 1/2} yields a
// Minkowski basis; ties on the boundary are resolved toward x >= 0.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "maxtheta/common.hpp"

namespace maxtheta {

struct LatticeParam {
    double x = 0.0;
    double y = 1.0;

    /// Membership in the fundamental domain D, with tolerance so that
    /// boundary lattices (the hexagonal one, notably) are not rejected by
    /// rounding.
    bool reduced(double tol = 1e-12) const;

    std::string str() const;                         // "x+yi"
    static LatticeParam parse(std::string_view s);   // accepts "x+yi" / "x-yi"
};

LatticeParam hexagonal();
LatticeParam square();

/// Coefficients of the Gram form q(k,l) = a k^2 + b k l + c l^2,
/// determinant-normalized: b^2/4 - a c = -1.
struct QuadraticForm {
    double a = 1.0, b = 0.0, c = 1.0;
    double discriminant() const { return b * b / 4.0 - a * c; }
    bool positive_definite() const { return a > 0.0 && discriminant() < 0.0; }
    double operator()(double k, double l) const { return a * k * k + b * k * l + c * l * l; }
};

/// (a, b, c) = (1/y, 2x/y, (x^2+y^2)/y).
QuadraticForm gram(const LatticeParam& L);

/// Smallest eigenvalue of the Gram matrix; q(k,l) >= lambda_min (k^2+l^2).
double lambda_min(const QuadraticForm& q);

enum class Generator { S, T, Tinv };

/// A word in the modular generators S: tau -> -1/tau and T: tau -> tau + 1,
/// together with the integer matrix it multiplies out to (det = 1).
/// Letters act left to right: the word [g1, g2] maps tau to g2(g1(tau)).
struct UnimodularWord {
    std::vector<Generator> letters;
    std::array<long long, 4> matrix{1, 0, 0, 1};  // row-major [a b; c d]

    void append(Generator g);
    bool empty() const { return letters.empty(); }
    std::string str() const;  // e.g. "T^-1 S T"
};

struct ReduceResult {
    LatticeParam tau;
    UnimodularWord word;
    bool changed = false;
};

/// Gauss reduction: alternate integer translations and inversions until the
/// parameter lies in D; boundary ties land in the closure with x >= 0.
ReduceResult reduce_to_fundamental(const LatticeParam& tau);

/// Parameter of the dual lattice S^{-T} Z^2 (up to rotation), reduced.
LatticeParam dual(const LatticeParam& L);

/// In dimension 2 every unit lattice is symplectic and coincides with its
/// adjoint J S^{-T} Z^2; this verifies S^{-1} J S^{-T} is integral with
/// determinant one.
bool adjoint_is_self(const LatticeParam& L, double tol = 1e-9);

/// Moebius action of the word matrix on tau.
LatticeParam apply_word(const UnimodularWord& w, const LatticeParam& tau);

}  // namespace maxtheta

#endif
