#ifndef MAXTHETA_VERIFY_HPP
#define MAXTHETA_VERIFY_HPP

// Reproduction harness: fundamental-domain extremality scans, sign checks of
// the two monotonicity lemmas, the sandwich-bound grid and the printed proof
// constants.  Every suite returns a Report that renders as a human table or
// machine-readable JSON; the CLI exits nonzero when any check fails.
//
// Checks are deterministic: random lattice samples use a fixed seed, scans
// use fixed grids with the hexagonal point included as an explicit node
// (the extrema sit at a corner of the domain, which an interior grid would
// miss).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "maxtheta/common.hpp"
#include "maxtheta/lattice.hpp"
#include "maxtheta/theta2d.hpp"

namespace maxtheta::verify {

struct CheckItem {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct Report {
    std::string suite;
    std::vector<CheckItem> items;

    bool pass() const;
    int violations() const;
    std::string to_json() const;
    void print(std::ostream& out) const;
};

// ---------------------------------------------------------------------------
// Fundamental-domain scans
// ---------------------------------------------------------------------------

struct ScanSpec {
    ThetaFlavor flavor = ThetaFlavor::centered;  // plain | centered | alternating
    std::vector<double> alphas{1.0};
    int nx = 200;
    int ny = 200;
    double ymax = 4.0;
    SeriesBudget budget;
    bool keep_table = false;
};

struct ScanPoint {
    double x, y, value;
};

struct ScanOutcome {
    double alpha = 0.0;
    LatticeParam argopt;   // grid argmax (centered/alternating) or argmin (plain)
    double value = 0.0;
    std::vector<ScanPoint> table;  // filled when keep_table is set
};

/// Grid over the right half D+ of the fundamental domain: x in [0,1/2],
/// y from sqrt(1-x^2) up to ymax; row j = 0 at each x sits on the boundary
/// arc, so the hexagonal corner (1/2, sqrt(3)/2) is always a node.
std::vector<ScanOutcome> scan_extremum(const ScanSpec& spec);

/// Wraps scan_extremum into pass/fail items: the argopt of every alpha must
/// be the hexagonal node.
Report scan_suite(const ScanSpec& spec);

// ---------------------------------------------------------------------------
// Lemma sign suites, constants, bounds, negativity
// ---------------------------------------------------------------------------

/// d/dx of centered and alternating thetas > 0 on an (x, y) grid interior to
/// (0,1/2) x [1/sqrt(2), ymax] for each alpha.
Report check_first_main_lemma(const std::vector<double>& alphas = {0.42, 1.0, 3.0}, int nx = 30,
                              int ny = 30, double ymax = 4.0);

/// d/dy of both flavors < 0 at x = 1/2 for y in [sqrt(3)/2, ymax]; also the
/// critical point at y = 1/2 and an informational probe of the decrease at
/// interior x (reported, never asserted).
Report check_second_main_lemma(const std::vector<double>& alphas = {1.0, 2.0}, int ny = 30,
                               double ymax = 4.0);

/// The printed proof constants, reproduced to half-ulp of the print
/// (one-sided for the upper bounds).
Report reproduce_constants();

/// bound_a <= q_ratio <= bound_b and bound_a2 <= q2_ratio <= bound_b2 on the
/// (beta, t) grid [0, 1/2] x [0.05, 10].
Report check_bounds_suite(int nbeta = 50, int nt = 60);

/// Alternating energies strictly negative for a family of completely
/// monotone potentials over sampled reduced lattices; theta4 < 1 sub-check.
Report check_negativity(std::uint64_t seed = 20240601, int nlattices = 50);

/// Everything above at default resolutions (scan_n for the scan grids).
std::vector<Report> run_all(int scan_n = 200);

/// x uniform in [0, 1/2], y log-uniform in [sqrt(1-x^2), ymax], reduced.
std::vector<LatticeParam> sample_reduced(int n, std::uint64_t seed, double ymax = 4.0);

}  // namespace maxtheta::verify

#endif
