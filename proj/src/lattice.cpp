#include "maxtheta/lattice.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace maxtheta {

namespace {
constexpr double kTol = 1e-12;
}

bool LatticeParam::reduced(double tol) const {
    return y > 0.0 && std::abs(x) <= 0.5 + tol && x * x + y * y >= 1.0 - tol;
}

std::string LatticeParam::str() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", x, y);
    return buf;
}

LatticeParam LatticeParam::parse(std::string_view s) {
    // "x+yi" with the separator being the last '+' or '-' before the 'i'.
    if (s.empty() || s.back() != 'i') throw ParseError("lattice parameter must end in 'i'");
    const std::string body(s.substr(0, s.size() - 1));
    std::size_t sep = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            sep = i;
            break;
        }
    }
    if (sep == std::string::npos) throw ParseError("expected \"x+yi\"");
    char* endx = nullptr;
    char* endy = nullptr;
    const std::string xs = body.substr(0, sep);
    const std::string ys = body.substr(sep);  // keeps the sign
    const double x = std::strtod(xs.c_str(), &endx);
    const double y = std::strtod(ys.c_str(), &endy);
    if (endx == xs.c_str() || *endx != '\0' || endy == ys.c_str() || *endy != '\0')
        throw ParseError("malformed lattice parameter \"" + std::string(s) + "\"");
    if (!(y > 0.0)) throw NonPositiveParameter("dilation y must be > 0");
    return {x, y};
}

LatticeParam hexagonal() { return {0.5, std::sqrt(3.0) / 2.0}; }
LatticeParam square() { return {0.0, 1.0}; }

QuadraticForm gram(const LatticeParam& L) {
    require_positive(L.y, "y");
    return {1.0 / L.y, 2.0 * L.x / L.y, (L.x * L.x + L.y * L.y) / L.y};
}

double lambda_min(const QuadraticForm& q) {
    if (!q.positive_definite()) throw NotPositiveDefinite("form is not positive definite");
    const double mean = 0.5 * (q.a + q.c);
    const double rad = std::sqrt(0.25 * (q.a - q.c) * (q.a - q.c) + 0.25 * q.b * q.b);
    return mean - rad;
}

void UnimodularWord::append(Generator g) {
    letters.push_back(g);
    // matrix <- M(g) * matrix   (letters act left to right)
    const long long a = matrix[0], b = matrix[1], c = matrix[2], d = matrix[3];
    switch (g) {
        case Generator::S:  // tau -> -1/tau, matrix [0 -1; 1 0]
            matrix = {-c, -d, a, b};
            break;
        case Generator::T:  // [1 1; 0 1]
            matrix = {a + c, b + d, c, d};
            break;
        case Generator::Tinv:  // [1 -1; 0 1]
            matrix = {a - c, b - d, c, d};
            break;
    }
}

std::string UnimodularWord::str() const {
    if (letters.empty()) return "(empty)";
    std::string out;
    for (const Generator g : letters) {
        if (!out.empty()) out += ' ';
        out += g == Generator::S ? "S" : (g == Generator::T ? "T" : "T^-1");
    }
    return out;
}

LatticeParam apply_word(const UnimodularWord& w, const LatticeParam& tau) {
    // (a tau + b) / (c tau + d) on tau = x + iy.
    const double a = double(w.matrix[0]), b = double(w.matrix[1]);
    const double c = double(w.matrix[2]), d = double(w.matrix[3]);
    const double nx = a * tau.x + b, ny = a * tau.y;
    const double dx = c * tau.x + d, dy = c * tau.y;
    const double den = dx * dx + dy * dy;
    return {(nx * dx + ny * dy) / den, (ny * dx - nx * dy) / den};
}

ReduceResult reduce_to_fundamental(const LatticeParam& tau) {
    require_positive(tau.y, "y");
    ReduceResult r{tau, {}, false};
    double x = tau.x, y = tau.y;

    for (int iter = 0; iter < 100000; ++iter) {
        // Integer translation; |x| <= 1/2 (with tolerance) stays put so that
        // boundary inputs are not shuffled across the strip.
        if (std::abs(x) > 0.5 + kTol) {
            double n = std::round(x);
            if (std::abs(x - n) > 0.5) n += (x > n) ? 1.0 : -1.0;
            const long long ni = std::llround(n);
            if (std::llabs(ni) > 1000000)
                throw DomainViolation("shearing parameter too large to reduce");
            const Generator g = ni > 0 ? Generator::Tinv : Generator::T;
            for (long long i = 0; i < std::llabs(ni); ++i) r.word.append(g);
            x -= double(ni);
            r.changed = true;
        }
        const double norm = x * x + y * y;
        if (norm < 1.0 - kTol) {
            // tau <- -1/tau
            r.word.append(Generator::S);
            x = -x / norm;
            y = y / norm;
            r.changed = true;
            continue;
        }
        break;
    }

    // Boundary ties resolve into the right half-closure (x >= 0).
    if (std::abs(x + 0.5) <= kTol) {
        r.word.append(Generator::T);
        x += 1.0;
        r.changed = true;
    }
    const double norm = x * x + y * y;
    if (std::abs(norm - 1.0) <= kTol && x < -kTol) {
        r.word.append(Generator::S);
        x = -x / norm;
        y = y / norm;
        r.changed = true;
    }
    r.tau = {x, y};
    if (!r.tau.reduced()) throw Error("reduction failed to land in the fundamental domain");
    return r;
}

LatticeParam dual(const LatticeParam& L) {
    require_positive(L.y, "y");
    const double n = L.x * L.x + L.y * L.y;
    return reduce_to_fundamental({-L.x / n, L.y / n}).tau;
}

bool adjoint_is_self(const LatticeParam& L, double tol) {
    require_positive(L.y, "y");
    // S = y^{-1/2} [1 x; 0 y];  B = S^{-1} J S^{-T} must be integral, det 1.
    const double s = 1.0 / std::sqrt(L.y);
    const double S[4] = {s, s * L.x, 0.0, s * L.y};
    const double Sinv[4] = {S[3], -S[1], -S[2], S[0]};  // det S = 1
    // J = [0 1; -1 0]
    const double SinvJ[4] = {-Sinv[1], Sinv[0], -Sinv[3], Sinv[2]};
    const double SinvT[4] = {Sinv[0], Sinv[2], Sinv[1], Sinv[3]};
    double B[4];
    B[0] = SinvJ[0] * SinvT[0] + SinvJ[1] * SinvT[2];
    B[1] = SinvJ[0] * SinvT[1] + SinvJ[1] * SinvT[3];
    B[2] = SinvJ[2] * SinvT[0] + SinvJ[3] * SinvT[2];
    B[3] = SinvJ[2] * SinvT[1] + SinvJ[3] * SinvT[3];
    for (double v : B)
        if (std::abs(v - std::round(v)) > tol) return false;
    const double det = B[0] * B[3] - B[1] * B[2];
    return std::abs(det - 1.0) <= tol;
}

}  // namespace maxtheta
