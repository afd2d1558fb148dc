#ifndef MAXTHETA_POINTSET_HPP
#define MAXTHETA_POINTSET_HPP

// Desk-scale finite-configuration energies: optimal +-1 charge assignments
// on a finite planar point set (exhaustive for small N, simulated annealing
// beyond) and the cell-center energy taken over Delaunay edge midpoints.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "maxtheta/common.hpp"
#include "maxtheta/energy.hpp"

namespace maxtheta::pointset {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct PointConfig {
    std::vector<Vec2> points;
    std::vector<int> charges;  // empty, or one +-1 per point summing to zero
    std::string source;        // patch metadata: "hexagonal", "square", ...
    double radius = 0.0;

    bool has_charges() const { return !charges.empty(); }
    void validate_charges() const;  // size match, values +-1, neutral, even count

    static PointConfig load_csv(std::istream& in);   // header x,y[,charge]
    void save_csv(std::ostream& out) const;
};

struct Triangulation {
    std::vector<std::array<int, 3>> triangles;       // CCW index triples
    std::vector<std::pair<int, int>> edges;          // sorted, deduplicated
    std::vector<Vec2> midpoints;                     // edge midpoints, plus the
                                                     // flip-diagonal midpoints of
                                                     // cocircular quads, dedup'd
};

/// Bowyer-Watson triangulation.  Cocircular degeneracies (lattice patches!)
/// are resolved deterministically by insertion order; for every cocircular
/// adjacent pair the midpoint of the alternative diagonal is appended to the
/// midpoint set, so that the non-uniqueness of the triangulation cannot
/// change the center energy.  Throws DegenerateInput for < 3 points, all
/// points collinear, or duplicate points.
Triangulation delaunay(const std::vector<Vec2>& pts, double cocircular_tol = 1e-9);

struct ChargeAssignment {
    double energy_per_point = 0.0;
    std::vector<int> charges;
};

/// Energy per point (1/N) sum_{i != j} phi_i phi_j f(|x_i - x_j|^2) of a
/// given neutral assignment (ordered pairs, per the double-counting
/// convention of the finite energy).
double pair_energy(const std::vector<Vec2>& pts, const std::vector<int>& charges,
                   const Potential& f);

/// Global minimum over neutral assignments; N <= 16 (even).  The assignment
/// with point 0 positive is returned, making the result deterministic up to
/// the global flip.
ChargeAssignment charge_energy_exhaustive(const PointConfig& config, const Potential& f);

/// Simulated annealing with neutrality-preserving swap moves and geometric
/// cooling; deterministic for a fixed seed.  Never below the exhaustive
/// minimum, and equal to it on small instances.
ChargeAssignment charge_energy_anneal(const PointConfig& config, const Potential& f,
                                      std::uint64_t seed, int sweeps = 300, int restarts = 8);

/// min over Delaunay midpoints m of sum_x f(|x - m|^2).
double center_energy(const PointConfig& config, const Potential& f);

/// The same total interaction at one prescribed center.
double center_energy_at(const PointConfig& config, const Potential& f, Vec2 m);

/// Midpoint of the triangulation closest to the origin (the "central cell"
/// center for a patch centered at 0).
Vec2 central_midpoint(const Triangulation& tri);

enum class PatchKind { hexagonal, square };

/// Unit-density lattice patch intersected with the ball of radius R.
PointConfig make_patch(PatchKind kind, double R);

}  // namespace maxtheta::pointset

#endif
