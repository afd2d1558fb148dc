#include "maxtheta/energy.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "maxtheta/quadrature.hpp"
#include "maxtheta/theta1d.hpp"
#include "maxtheta/theta2d.hpp"

namespace maxtheta {

// ---------------------------------------------------------------------------
// Potential
// ---------------------------------------------------------------------------

Potential Potential::inverse_power(double s) {
    require_positive(s, "s");
    Potential f;
    f.kind = Kind::inverse_power;
    f.s = s;
    return f;
}

Potential Potential::gaussian(double t) {
    require_positive(t, "t");
    Potential f;
    f.kind = Kind::gaussian;
    f.t = t;
    return f;
}

Potential Potential::laplace_measure(std::vector<std::pair<double, double>> nodes) {
    if (nodes.empty()) throw NonPositiveParameter("laplace measure needs at least one node");
    for (const auto& [t, w] : nodes) {
        require_positive(t, "measure node");
        if (w < 0.0) throw NonPositiveParameter("measure weights must be >= 0");
    }
    Potential f;
    f.kind = Kind::laplace_measure;
    f.nodes = std::move(nodes);
    return f;
}

bool Potential::absolutely_summable() const {
    return kind != Kind::inverse_power || s > 2.0;
}

double Potential::operator()(double r) const {
    switch (kind) {
        case Kind::inverse_power: return std::pow(r, -0.5 * s);
        case Kind::gaussian: return std::exp(-t * r);
        case Kind::laplace_measure: {
            double v = 0.0;
            for (const auto& [ti, wi] : nodes) v += wi * std::exp(-ti * r);
            return v;
        }
    }
    return 0.0;
}

Potential Potential::parse(std::string_view text) {
    auto num = [](std::string_view v, const char* what) {
        char* end = nullptr;
        const std::string s(v);
        const double x = std::strtod(s.c_str(), &end);
        if (end == s.c_str() || *end != '\0')
            throw ParseError(std::string("bad number in potential: ") + what);
        return x;
    };
    if (text.rfind("pow:s=", 0) == 0) return inverse_power(num(text.substr(6), "s"));
    if (text.rfind("gauss:t=", 0) == 0) return gaussian(num(text.substr(8), "t"));
    if (text.rfind("measure:[", 0) == 0 && text.back() == ']') {
        std::vector<std::pair<double, double>> nodes;
        std::string_view body = text.substr(9, text.size() - 10);
        while (!body.empty()) {
            if (body.front() == ',') body.remove_prefix(1);
            if (body.empty()) break;
            if (body.front() != '(') throw ParseError("measure entries look like (t,w)");
            const auto close = body.find(')');
            if (close == std::string_view::npos) throw ParseError("unterminated (t,w) pair");
            std::string_view pair = body.substr(1, close - 1);
            const auto comma = pair.find(',');
            if (comma == std::string_view::npos) throw ParseError("measure entries look like (t,w)");
            nodes.emplace_back(num(pair.substr(0, comma), "t"), num(pair.substr(comma + 1), "w"));
            body.remove_prefix(close + 1);
        }
        return laplace_measure(std::move(nodes));
    }
    throw ParseError("unknown potential \"" + std::string(text) +
                     "\"; expected pow:s=..., gauss:t=... or measure:[(t,w),...]");
}

std::string Potential::str() const {
    char buf[64];
    switch (kind) {
        case Kind::inverse_power:
            std::snprintf(buf, sizeof(buf), "pow:s=%.17g", s);
            return buf;
        case Kind::gaussian:
            std::snprintf(buf, sizeof(buf), "gauss:t=%.17g", t);
            return buf;
        case Kind::laplace_measure: {
            std::string out = "measure:[";
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "(%.17g,%.17g)", nodes[i].first, nodes[i].second);
                if (i) out += ',';
                out += buf;
            }
            return out + "]";
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Theta-integral Epstein zetas
// ---------------------------------------------------------------------------

namespace {

constexpr double kIntTol = 1e-13;

void check_split(const EwaldSplit& split) { require_positive(split.eta, "eta"); }

// Exponential decay rates of the integrands, from q >= lambda_min (k^2+l^2):
// the smallest nonzero exponent is >= lambda_min for integer vectors and
// >= lambda_min / 2 for half-shifted ones.
struct DecayRates {
    double alt;     // theta_pm - 1 and theta - 1
    double center;  // theta_c
};

DecayRates decay_rates(const LatticeParam& L) {
    const double lam = lambda_min(gram(L));
    return {kPi * lam, kPi * lam / 2.0};
}

double prefactor(double s) { return std::pow(kPi, 0.5 * s) / std::tgamma(0.5 * s); }

}  // namespace

double epstein_pm(const LatticeParam& L, double s, const EwaldSplit& split,
                  const SeriesBudget& budget) {
    require_positive(s, "s");
    check_split(split);
    const auto rates = decay_rates(L);
    const double eta = split.eta;
    const double i1 = quadrature::integrate_decaying(
        [&](double w) { return theta_centered(L, w, budget) * std::pow(w, -0.5 * s); },
        1.0 / eta, rates.center, -0.5 * s, kIntTol);
    const double i2 = quadrature::integrate_decaying(
        [&](double w) { return theta_alternating_m1(L, w, budget) * std::pow(w, 0.5 * s - 1.0); },
        eta, rates.alt, 0.5 * s - 1.0, kIntTol);
    return prefactor(s) * (i1 + i2 - (2.0 / s) * std::pow(eta, 0.5 * s));
}

double epstein_c(const LatticeParam& L, double s, const EwaldSplit& split,
                 const SeriesBudget& budget) {
    require_positive(s, "s");
    check_split(split);
    if (std::abs(s - 2.0) < 1e-9)
        throw PoleOrDivergent("centered Epstein zeta has a pole at s = 2");
    const auto rates = decay_rates(L);
    const double eta = split.eta;
    const double j1 = quadrature::integrate_decaying(
        [&](double w) { return theta_alternating_m1(L, w, budget) * std::pow(w, -0.5 * s); },
        1.0 / eta, rates.alt, -0.5 * s, kIntTol);
    const double j2 = quadrature::integrate_decaying(
        [&](double w) { return theta_centered(L, w, budget) * std::pow(w, 0.5 * s - 1.0); },
        eta, rates.center, 0.5 * s - 1.0, kIntTol);
    return prefactor(s) * (j1 + 2.0 * std::pow(eta, 0.5 * s - 1.0) / (s - 2.0) + j2);
}

double epstein_plain(const LatticeParam& L, double s, const EwaldSplit& split,
                     const SeriesBudget& budget) {
    check_split(split);
    if (!(s > 2.0)) throw PoleOrDivergent("plain Epstein zeta needs s > 2");
    const auto rates = decay_rates(L);
    const double eta = split.eta;
    const double k1 = quadrature::integrate_decaying(
        [&](double w) { return theta_plain_m1(L, w, budget) * std::pow(w, -0.5 * s); },
        1.0 / eta, rates.alt, -0.5 * s, kIntTol);
    const double k2 = quadrature::integrate_decaying(
        [&](double w) { return theta_plain_m1(L, w, budget) * std::pow(w, 0.5 * s - 1.0); },
        eta, rates.alt, 0.5 * s - 1.0, kIntTol);
    return prefactor(s) * (k1 + 2.0 * std::pow(eta, 0.5 * s - 1.0) / (s - 2.0) -
                           (2.0 / s) * std::pow(eta, 0.5 * s) + k2);
}

// ---------------------------------------------------------------------------
// Per-vector incomplete-gamma Ewald route
// ---------------------------------------------------------------------------

namespace energy_detail {

namespace {

// Continued fraction for Gamma(a, x); reliable for x >= a + 1, x > 0.
double upper_gamma_cf(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 400; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

// Lower series for gamma(a, x), a > 0, x < a + 1.
double lower_gamma_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 500; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x));
}

}  // namespace

double upper_gamma(double a, double x) {
    require_positive(x, "x");
    if (x >= std::max(1.0, a + 1.0)) return upper_gamma_cf(a, x);
    if (a > 0.0) return std::tgamma(a) - lower_gamma_series(a, x);
    if (std::abs(a) < 1e-14) {
        // Gamma(0, x) = E1(x); series for the small-x region this branch sees.
        constexpr double euler = 0.57721566490153286060651209;
        double sum = -euler - std::log(x);
        double term = 1.0;
        for (int n = 1; n < 60; ++n) {
            term *= -x / n;
            sum -= term / n;
            if (std::abs(term) < 1e-18) break;
        }
        return sum;
    }
    // Raise a into the positive range: Gamma(a,x) = (Gamma(a+1,x) - x^a e^{-x}) / a.
    return (upper_gamma(a + 1.0, x) - std::pow(x, a) * std::exp(-x)) / a;
}

}  // namespace energy_detail

double epstein_pm_gamma(const LatticeParam& L, double s, const EwaldSplit& split) {
    require_positive(s, "s");
    check_split(split);
    const QuadraticForm q = gram(L);
    const double lam = lambda_min(q);
    const double eta = split.eta;
    const double cutoff = 45.0;  // e^{-45} ~ 3e-20 per term
    const double gs = std::tgamma(0.5 * s);

    const long kr = long(std::ceil(std::sqrt(cutoff / (kPi * eta * lam)))) + 1;
    KahanSum real_space;
    for (long k = -kr; k <= kr; ++k)
        for (long l = -kr; l <= kr; ++l) {
            if (k == 0 && l == 0) continue;
            const double r2 = q(double(k), double(l));
            const double sign = ((k + l) % 2 == 0) ? 1.0 : -1.0;
            real_space.add(sign * std::pow(r2, -0.5 * s) *
                           energy_detail::upper_gamma(0.5 * s, kPi * eta * r2) / gs);
        }

    const long kf = long(std::ceil(std::sqrt(cutoff * eta / (kPi * lam * 0.5)))) + 1;
    KahanSum fourier;
    for (long k = -kf; k <= kf; ++k)
        for (long l = -kf; l <= kf; ++l) {
            const double qc = q(k + 0.5, l + 0.5);
            fourier.add(std::pow(kPi * qc, 0.5 * s - 1.0) *
                        energy_detail::upper_gamma(1.0 - 0.5 * s, kPi * qc / eta));
        }
    return real_space.value() +
           prefactor(s) * (fourier.value() - (2.0 / s) * std::pow(eta, 0.5 * s));
}

// ---------------------------------------------------------------------------
// Energies for general completely monotone potentials
// ---------------------------------------------------------------------------

double energy_pm(const LatticeParam& L, const Potential& f, const SeriesBudget& budget) {
    if (!f.absolutely_summable())
        throw NonSummablePotential(
            "alternating energy needs |f(r)| = O(r^{-1-eps}); use epstein_pm for the "
            "Ewald-regularized inverse-power value");
    switch (f.kind) {
        case Potential::Kind::gaussian:
            return theta_alternating_m1(L, f.t / kPi, budget);
        case Potential::Kind::laplace_measure: {
            KahanSum s;
            for (const auto& [t, w] : f.nodes) s.add(w * theta_alternating_m1(L, t / kPi, budget));
            return s.value();
        }
        case Potential::Kind::inverse_power:
            return epstein_pm(L, f.s, {}, budget);
    }
    return 0.0;
}

double energy_c(const LatticeParam& L, const Potential& f, const SeriesBudget& budget) {
    if (!f.absolutely_summable())
        throw NonSummablePotential(
            "centered energy needs |f(r)| = O(r^{-1-eps}); use epstein_c for the "
            "Ewald-regularized inverse-power value");
    switch (f.kind) {
        case Potential::Kind::gaussian:
            return theta_centered(L, f.t / kPi, budget);
        case Potential::Kind::laplace_measure: {
            KahanSum s;
            for (const auto& [t, w] : f.nodes) s.add(w * theta_centered(L, t / kPi, budget));
            return s.value();
        }
        case Potential::Kind::inverse_power:
            return epstein_c(L, f.s, {}, budget);
    }
    return 0.0;
}

double rocksalt_energy(const LatticeParam& L, double p, double q, double rho,
                       const EwaldSplit& split, const SeriesBudget& budget) {
    require_positive(rho, "rho");
    if (!(p > q && q > 2.0))
        throw NonPositiveParameter("rock-salt energy needs p > q > 2 (absolutely summable regime)");
    return epstein_plain(L, p, split, budget) + epstein_pm(L, q, split, budget) / rho;
}

double madelung_nacl3d(double s, const EwaldSplit& split, const SeriesBudget& budget) {
    require_positive(s, "s");
    check_split(split);
    const double eta = split.eta;
    const double i1 = quadrature::integrate_decaying(
        [&](double w) {
            const double t2 = theta1d::theta2(w, budget);
            return t2 * t2 * t2 * std::pow(w, 0.5 * (1.0 - s));
        },
        1.0 / eta, 0.75 * kPi, 0.5 * (1.0 - s), kIntTol);
    const double i2 = quadrature::integrate_decaying(
        [&](double w) {
            const double m = theta1d::theta4_m1(w, budget);
            return m * (3.0 + m * (3.0 + m)) * std::pow(w, 0.5 * s - 1.0);
        },
        eta, kPi, 0.5 * s - 1.0, kIntTol);
    return prefactor(s) * (i1 + i2 - (2.0 / s) * std::pow(eta, 0.5 * s));
}

}  // namespace maxtheta
