#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "maxtheta/theta1d.hpp"
#include "maxtheta/theta2d.hpp"
#include "maxtheta/verify.hpp"
#include "oracle128.hpp"

using namespace maxtheta;
namespace t1 = maxtheta::theta1d;

namespace {
constexpr double pi = maxtheta::kPi;
double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("square lattice separates into 1D nulls") {
    const LatticeParam sq = square();
    for (const double alpha : {0.3, 0.7, 1.0, 2.0, 5.0}) {
        CAPTURE(alpha);
        const double t3 = t1::theta3(alpha);
        CHECK(rel_err(theta_plain(sq, alpha), t3 * t3) < 1e-12);
        const double t4 = t1::theta4(alpha);
        CHECK(rel_err(theta_alternating(sq, alpha), t4 * t4) < 1e-12);
        const double t2 = t1::theta2(alpha);
        CHECK(rel_err(theta_centered(sq, alpha), t2 * t2) < 1e-12);
    }
}

TEST_CASE("2D sums match the quad oracle") {
    const std::vector<LatticeParam> ls = {square(), hexagonal(), {0.3, 1.2}, {0.1, 2.0}};
    for (const LatticeParam& L : ls) {
        for (const double alpha : {0.6, 1.0, 2.3}) {
            CAPTURE(L.x);
            CAPTURE(L.y);
            CAPTURE(alpha);
            CHECK(rel_err(theta2d_direct::plain(L, alpha),
                          oracle::theta_plain_sum(L.x, L.y, alpha, 24)) < 1e-12);
            CHECK(rel_err(theta2d_direct::centered(L, alpha),
                          oracle::theta_centered_sum(L.x, L.y, alpha, 24)) < 1e-12);
            CHECK(std::abs(theta2d_direct::alternating(L, alpha) -
                           oracle::theta_alternating_sum(L.x, L.y, alpha, 24)) < 1e-12);
        }
    }
}

TEST_CASE("hexagonal centered value at alpha 1") {
    // (1/2) theta2(sqrt(3)/2) theta2(1/(2 sqrt(3))), frozen from the oracle.
    const double v = theta_centered(hexagonal(), 1.0);
    CHECK(rel_err(v, 0.5 * t1::theta2(std::sqrt(3.0) / 2.0) * t1::theta2(1.0 / (2.0 * std::sqrt(3.0)))) <
          1e-13);
    CHECK(rel_err(v, 0.94680557073602121) < 1e-14);
    CHECK(rel_err(theta_alternating(hexagonal(), 1.0), v) < 1e-13);
}

TEST_CASE("centered and alternating coincide at alpha 1") {
    for (const LatticeParam& L : verify::sample_reduced(20, 99)) {
        CAPTURE(L.x);
        CAPTURE(L.y);
        CHECK(rel_err(theta_centered(L, 1.0), theta_alternating(L, 1.0)) < 1e-12);
    }
}

TEST_CASE("functional equations of the routed evaluators") {
    const auto ls = verify::sample_reduced(20, 4242);
    std::vector<double> alphas;
    for (int i = 0; i <= 20; ++i) alphas.push_back(0.1 * std::pow(100.0, i / 20.0));
    for (const LatticeParam& L : ls) {
        for (const double a : alphas) {
            CAPTURE(L.x);
            CAPTURE(L.y);
            CAPTURE(a);
            CHECK(rel_err(theta_centered(L, a), theta_alternating(L, 1.0 / a) / a) < 1e-12);
            CHECK(rel_err(theta_plain(L, a), theta_plain(L, 1.0 / a) / a) < 1e-12);
        }
    }
}

TEST_CASE("functional equations between unrouted series") {
    // Genuine two-route residuals, on the window where both alternating-side
    // sums are well conditioned in binary64.
    const auto ls = verify::sample_reduced(12, 777);
    for (const LatticeParam& L : ls) {
        for (const double a : {0.5, 0.8, 1.0, 1.4, 2.0}) {
            CAPTURE(L.x);
            CAPTURE(L.y);
            CAPTURE(a);
            CHECK(rel_err(theta2d_direct::centered(L, a),
                          theta2d_direct::alternating(L, 1.0 / a) / a) < 1e-12);
        }
        for (const double a : {0.1, 0.3, 1.0, 3.0, 10.0}) {
            CAPTURE(a);
            CHECK(rel_err(theta2d_direct::plain(L, a), theta2d_direct::plain(L, 1.0 / a) / a) <
                  1e-12);
        }
    }
}

TEST_CASE("shifted and character specializations dispatch bit-for-bit") {
    const LatticeParam L{0.2, 1.3};
    for (const double a : {0.4, 1.0, 3.0}) {
        CHECK(theta_shifted(L, 0.0, 0.0, a) == theta_plain(L, a));
        CHECK(theta_character(L, 0.0, 0.0, a) == theta_plain(L, a));
        CHECK(theta_character(L, 0.5, 0.5, a) == theta_alternating(L, a));
        CHECK(theta_character(L, -0.5, 0.5, a) == theta_alternating(L, a));
        CHECK(theta_shifted(L, 0.5, 0.5, a) == theta_shifted(L, 1.5, -0.5, a));
    }
    const LatticeParam R = hexagonal();
    CHECK(theta_shifted(R, 0.5, 0.5, 1.7) == theta_centered(R, 1.7));
}

TEST_CASE("shift periodicity and the general functional equation") {
    const LatticeParam L{0.3, 1.1};
    for (const double a : {0.5, 1.0, 2.0}) {
        CHECK(rel_err(theta_shifted(L, 0.2, 0.7, a), theta_shifted(L, 1.2, 1.7, a)) < 1e-13);
        CHECK(rel_err(theta_character(L, 0.2, 0.7, a), theta_character(L, 1.2, 1.7, a)) < 1e-13);
        // Theta(xi, eta; a) = (1/a) Theta_hat(xi, eta; 1/a); both sides are
        // independent direct sums.
        for (const auto& [xi, eta] : std::vector<std::pair<double, double>>{
                 {0.2, 0.7}, {0.45, 0.1}, {0.33, 0.33}}) {
            CAPTURE(a);
            CAPTURE(xi);
            CAPTURE(eta);
            CHECK(rel_err(theta_shifted(L, xi, eta, a), theta_character(L, xi, eta, 1.0 / a) / a) <
                  1e-12);
        }
    }
}

TEST_CASE("factorized centered theta on the x = 1/2 line") {
    for (int i = 0; i < 10; ++i) {
        const double y = 0.87 + 0.25 * i;
        for (int j = 0; j < 10; ++j) {
            const double alpha = 0.3 + 0.45 * j;
            CAPTURE(y);
            CAPTURE(alpha);
            const double fact = theta_c_factorized(y, alpha);
            CHECK(rel_err(fact, 0.5 * t1::theta2(alpha * y) * t1::theta2(alpha / (4.0 * y))) <
                  1e-13);
            CHECK(rel_err(fact, theta2d_direct::centered({0.5, y}, alpha)) < 1e-12);
        }
    }
    // Against the plain double sum at the hexagonal point.
    CHECK(rel_err(theta_c_factorized(std::sqrt(3.0) / 2.0, 1.0),
                  oracle::theta_centered_sum(0.5, std::sqrt(3.0) / 2.0, 1.0, 24)) < 1e-12);
    // Functional equation as composed through the factorization.
    const double y = std::sqrt(3.0) / 2.0;
    for (const double a : {0.4, 1.0, 2.2})
        CHECK(rel_err(a * theta_c_factorized(y, a), theta_alternating({0.5, y}, 1.0 / a)) < 1e-12);
}

TEST_CASE("factorized product is maximal at y = 1/2") {
    for (const double alpha : {0.5, 1.0, 2.0}) {
        const double at_half = theta_c_factorized(0.5, alpha);
        for (const double y : {0.26, 0.35, 0.45, 0.55, 0.7, 1.0, 2.0, 4.0}) {
            CAPTURE(alpha);
            CAPTURE(y);
            CHECK(theta_c_factorized(y, alpha) < at_half);
        }
    }
}

TEST_CASE("theta2 product inequality with equality only at y = 1") {
    for (const double t : {0.5, 1.0, 2.0}) {
        const double sq = t1::theta2(t) * t1::theta2(t);
        for (double y = 0.25; y <= 4.0; y += 0.25) {
            CAPTURE(t);
            CAPTURE(y);
            const double prod = t1::theta2(t * y) * t1::theta2(t / y);
            if (std::abs(y - 1.0) < 1e-12)
                CHECK(rel_err(prod, sq) < 1e-13);
            else
                CHECK(prod < sq);
        }
    }
}

TEST_CASE("global bounds on the alternating and centered values") {
    const auto ls = verify::sample_reduced(15, 31337);
    for (const LatticeParam& L : ls) {
        for (const double a : {0.2, 0.5, 1.0, 2.0, 7.0}) {
            CAPTURE(L.x);
            CAPTURE(L.y);
            CAPTURE(a);
            const double pm = theta_alternating(L, a);
            CHECK(pm > 0.0);
            CHECK(pm < 1.0);
            CHECK(theta_centered(L, a) < 1.0 / a);
        }
    }
}

TEST_CASE("plain theta is basis invariant; alternating after reduction") {
    const std::vector<LatticeParam> raw = {{1.3, 0.4}, {-0.8, 0.3}, {2.1, 1.7}};
    for (const LatticeParam& tau : raw) {
        const LatticeParam red = reduce_to_fundamental(tau).tau;
        for (const double a : {0.7, 1.0, 1.9}) {
            CAPTURE(tau.x);
            CAPTURE(tau.y);
            CHECK(rel_err(theta2d_direct::plain(tau, a), theta2d_direct::plain(red, a)) < 1e-12);
        }
        // The alternating sign pattern is basis dependent; the invariant is
        // stated only after reduction (routed == direct at the reduced point).
        CHECK(rel_err(theta_alternating(red, 1.3), theta2d_direct::alternating(red, 1.3)) < 1e-12);
    }
}

TEST_CASE("hexagonal is extremal on a coarse grid") {
    // 60x60 sweep of D+ (the full 200x200 sweep lives in the acceptance run).
    verify::ScanSpec spec;
    spec.nx = spec.ny = 60;
    spec.alphas = {2.0};
    spec.flavor = ThetaFlavor::plain;
    auto mins = verify::scan_extremum(spec);
    CHECK(mins[0].argopt.x == doctest::Approx(0.5));
    CHECK(mins[0].argopt.y == doctest::Approx(std::sqrt(3.0) / 2.0));
    spec.flavor = ThetaFlavor::centered;
    spec.alphas = {1.0};
    auto maxs = verify::scan_extremum(spec);
    CHECK(maxs[0].argopt.x == doctest::Approx(0.5));
    CHECK(maxs[0].argopt.y == doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("x-derivatives: signs, series vs finite differences") {
    CHECK(std::abs(dtheta_c_dx_unchecked({0.0, 1.0}, 1.0)) < 1e-14);
    CHECK(dtheta_c_dx({0.25, 1.0}, 1.0) > 0.0);
    CHECK(dtheta_pm_dx({0.25, 1.0}, 1.0) > 0.0);

    const double h = 1e-6;
    const LatticeParam L{0.3, 1.1};
    const double alpha = 2.0;
    const double fd_c =
        (theta2d_direct::centered({L.x + h, L.y}, alpha) -
         theta2d_direct::centered({L.x - h, L.y}, alpha)) /
        (2.0 * h);
    CHECK(rel_err(dtheta_c_dx(L, alpha), fd_c) < 1e-6);
    const double fd_pm =
        (theta2d_direct::alternating({L.x + h, L.y}, alpha) -
         theta2d_direct::alternating({L.x - h, L.y}, alpha)) /
        (2.0 * h);
    CHECK(rel_err(dtheta_pm_dx(L, alpha), fd_pm) < 1e-6);
    const double fd_y = (theta_c_factorized(L.y + h, alpha) - theta_c_factorized(L.y - h, alpha)) /
                        (2.0 * h);
    CHECK(rel_err(dtheta_c_dy({0.5, L.y}, alpha), fd_y) < 1e-6);

    // Routed derivatives agree with finite differences below alpha = 1 too.
    const double fd_small =
        (theta_centered({0.3, 1.2}, 0.42) - theta_centered({0.3 - 2 * h, 1.2}, 0.42)) / (2.0 * h);
    CHECK(std::abs(dtheta_c_dx({0.3 - h, 1.2}, 0.42) - fd_small) < 1e-6);
}

TEST_CASE("derivative domain guards") {
    CHECK_THROWS_AS(dtheta_c_dx({0.7, 1.0}, 1.0), DomainViolation);
    CHECK_THROWS_AS(dtheta_pm_dx({0.25, 0.5}, 1.0), DomainViolation);
    CHECK_NOTHROW(dtheta_c_dx_unchecked({0.7, 0.5}, 1.0));
    CHECK_THROWS_AS(dtheta_c_dy({0.3, 1.0}, 1.0), DomainViolation);
    CHECK_NOTHROW(dtheta_c_dy({0.5, 0.5}, 1.0));  // below sqrt(3)/2 is fine for the value
}

TEST_CASE("monotonicity along the two boundary directions") {
    for (const double alpha : {0.5, 1.0, 2.0, 4.0}) {
        for (const double y : {0.9, 1.0, 1.5}) {
            double prev = -1.0;
            for (const double x : {0.05, 0.15, 0.25, 0.35, 0.45}) {
                const double v = theta2d_direct::centered({x, y}, alpha);
                CAPTURE(alpha);
                CAPTURE(y);
                CAPTURE(x);
                CHECK(v > prev);
                prev = v;
            }
        }
        double prev = std::numeric_limits<double>::infinity();
        for (double y = std::sqrt(3.0) / 2.0; y <= 4.0; y += 0.35) {
            const double v = theta_centered(reduce_to_fundamental({0.5, y}).tau, alpha);
            CAPTURE(alpha);
            CAPTURE(y);
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("centered flavor rejects unreduced parameters; evaluate() reduces") {
    CHECK_THROWS_AS(theta_centered({0.7, 0.5}, 1.0), NotReduced);
    ThetaQuery q;
    q.lattice = {0.7, 0.5};
    q.alpha = 1.0;
    q.flavor = ThetaFlavor::centered;
    const ThetaResult r = evaluate(q);
    CHECK(r.was_reduced);
    CHECK(r.used.reduced());
    CHECK(rel_err(r.value, theta_centered(r.used, 1.0)) < 1e-13);
    CHECK(r.outer_radius >= 1);

    ThetaQuery p = q;
    p.lattice = hexagonal();
    const ThetaResult rp = evaluate(p);
    CHECK_FALSE(rp.was_reduced);
    CHECK(rp.value == theta_centered(hexagonal(), 1.0));
}

TEST_CASE("theta evaluators reject invalid arguments") {
    CHECK_THROWS_AS(theta_plain({0.0, 1.0}, 0.0), NonPositiveParameter);
    CHECK_THROWS_AS(theta_plain({0.0, -1.0}, 1.0), NonPositiveParameter);
    CHECK_THROWS_AS(theta_c_factorized(0.0, 1.0), NonPositiveParameter);
}
