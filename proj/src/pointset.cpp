#include "maxtheta/pointset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace maxtheta::pointset {

// ---------------------------------------------------------------------------
// PointConfig
// ---------------------------------------------------------------------------

void PointConfig::validate_charges() const {
    if (charges.empty()) return;
    if (charges.size() != points.size())
        throw DegenerateInput("charge list length does not match point count");
    if (points.size() % 2 != 0) throw OddCount("charged configurations need an even point count");
    long sum = 0;
    for (int c : charges) {
        if (c != 1 && c != -1) throw DegenerateInput("charges must be +-1");
        sum += c;
    }
    if (sum != 0) throw DegenerateInput("charges must be neutral (sum to zero)");
}

PointConfig PointConfig::load_csv(std::istream& in) {
    PointConfig cfg;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV");
    auto strip = [](std::string s) {
        s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\r'; }),
                s.end());
        return s;
    };
    const std::string header = strip(line);
    bool with_charge = false;
    if (header == "x,y,charge")
        with_charge = true;
    else if (header != "x,y")
        throw ParseError("CSV header must be \"x,y\" or \"x,y,charge\"");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = strip(line);
        if (row.empty() || row[0] == '#') continue;
        std::istringstream ss(row);
        std::string fx, fy, fc;
        if (!std::getline(ss, fx, ',') || !std::getline(ss, fy, ','))
            throw ParseError("short CSV row at line " + std::to_string(lineno));
        Vec2 p{std::strtod(fx.c_str(), nullptr), std::strtod(fy.c_str(), nullptr)};
        cfg.points.push_back(p);
        if (with_charge) {
            if (!std::getline(ss, fc, ','))
                throw ParseError("missing charge at line " + std::to_string(lineno));
            cfg.charges.push_back(int(std::strtol(fc.c_str(), nullptr, 10)));
        }
    }
    cfg.validate_charges();
    return cfg;
}

void PointConfig::save_csv(std::ostream& out) const {
    char buf[80];
    out << (has_charges() ? "x,y,charge\n" : "x,y\n");
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", points[i].x, points[i].y);
        out << buf;
        if (has_charges()) out << ',' << charges[i];
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Delaunay (Bowyer-Watson)
// ---------------------------------------------------------------------------

namespace {

long double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (long double)(b.x - a.x) * (c.y - a.y) - (long double)(b.y - a.y) * (c.x - a.x);
}

// > 0 iff p lies strictly inside the circumcircle of CCW triangle (a,b,c).
long double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    const long double ax = a.x - p.x, ay = a.y - p.y;
    const long double bx = b.x - p.x, by = b.y - p.y;
    const long double cx = c.x - p.x, cy = c.y - p.y;
    const long double a2 = ax * ax + ay * ay;
    const long double b2 = bx * bx + by * by;
    const long double c2 = cx * cx + cy * cy;
    return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
}

struct Tri {
    int a, b, c;
};

}  // namespace

Triangulation delaunay(const std::vector<Vec2>& pts, double cocircular_tol) {
    const int n = int(pts.size());
    if (n < 3) throw DegenerateInput("need at least 3 points");

    double lox = pts[0].x, hix = pts[0].x, loy = pts[0].y, hiy = pts[0].y;
    for (const Vec2& p : pts) {
        lox = std::min(lox, p.x);
        hix = std::max(hix, p.x);
        loy = std::min(loy, p.y);
        hiy = std::max(hiy, p.y);
    }
    const double span = std::max({hix - lox, hiy - loy, 1.0});
    const double scale4 = span * span * span * span;
    const long double inc_tol = (long double)(cocircular_tol)*scale4;

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
            if (dx * dx + dy * dy < 1e-24 * span * span)
                throw DegenerateInput("duplicate points");
        }
    bool collinear = true;
    for (int i = 2; i < n && collinear; ++i)
        if (std::abs((double)orient(pts[0], pts[1], pts[i])) > 1e-12 * span * span)
            collinear = false;
    if (collinear) throw DegenerateInput("all points are collinear");

    // Working copy with three far-away corners appended.
    std::vector<Vec2> v = pts;
    const double cx = 0.5 * (lox + hix), cy = 0.5 * (loy + hiy);
    v.push_back({cx - 30.0 * span, cy - 20.0 * span});
    v.push_back({cx + 30.0 * span, cy - 20.0 * span});
    v.push_back({cx, cy + 30.0 * span});

    std::vector<Tri> tris{{n, n + 1, n + 2}};
    if (orient(v[n], v[n + 1], v[n + 2]) < 0) std::swap(tris[0].b, tris[0].c);

    std::vector<char> bad;
    for (int ip = 0; ip < n; ++ip) {
        const Vec2& p = v[ip];
        bad.assign(tris.size(), 0);
        for (std::size_t t = 0; t < tris.size(); ++t) {
            const long double det = incircle(v[tris[t].a], v[tris[t].b], v[tris[t].c], p);
            if (det > inc_tol) {
                bad[t] = 1;
            } else if (det > -inc_tol) {
                // Cocircular tie: remove only if the triangle contains p, so
                // insertion order decides the diagonal deterministically.
                const long double o1 = orient(v[tris[t].a], v[tris[t].b], p);
                const long double o2 = orient(v[tris[t].b], v[tris[t].c], p);
                const long double o3 = orient(v[tris[t].c], v[tris[t].a], p);
                const long double otol = -1e-12L * span * span;
                if (o1 >= otol && o2 >= otol && o3 >= otol) bad[t] = 1;
            }
        }
        // Cavity boundary: edges of bad triangles appearing exactly once.
        std::map<std::pair<int, int>, std::pair<int, int>> edge_count;  // sorted -> (count, from)
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (!bad[t]) continue;
            const int e[3][2] = {{tris[t].a, tris[t].b}, {tris[t].b, tris[t].c}, {tris[t].c, tris[t].a}};
            for (auto& ed : e) {
                auto key = std::minmax(ed[0], ed[1]);
                auto& slot = edge_count[{key.first, key.second}];
                slot.first += 1;
                slot.second = ed[0];  // remember orientation as seen from the cavity
            }
        }
        std::vector<Tri> next;
        next.reserve(tris.size() + 8);
        for (std::size_t t = 0; t < tris.size(); ++t)
            if (!bad[t]) next.push_back(tris[t]);
        for (const auto& [key, slot] : edge_count) {
            if (slot.first != 1) continue;
            int u = key.first, w = key.second;
            if (slot.second != u) std::swap(u, w);  // keep cavity orientation
            Tri t{u, w, ip};
            if (orient(v[t.a], v[t.b], v[t.c]) < 0) std::swap(t.b, t.c);
            next.push_back(t);
        }
        tris = std::move(next);
    }

    Triangulation out;
    for (const Tri& t : tris) {
        if (t.a >= n || t.b >= n || t.c >= n) continue;
        out.triangles.push_back({t.a, t.b, t.c});
    }
    if (out.triangles.empty()) throw DegenerateInput("triangulation is empty");

    std::map<std::pair<int, int>, std::vector<int>> edge_tris;  // edge -> adjacent triangles
    for (std::size_t t = 0; t < out.triangles.size(); ++t) {
        const auto& tr = out.triangles[t];
        const int e[3][2] = {{tr[0], tr[1]}, {tr[1], tr[2]}, {tr[2], tr[0]}};
        for (auto& ed : e) {
            auto key = std::minmax(ed[0], ed[1]);
            edge_tris[{key.first, key.second}].push_back(int(t));
        }
    }
    std::vector<Vec2> mids;
    for (const auto& [e, owners] : edge_tris) {
        out.edges.push_back(e);
        mids.push_back({0.5 * (pts[e.first].x + pts[e.second].x),
                        0.5 * (pts[e.first].y + pts[e.second].y)});
        // Cocircular adjacent pair: the flipped diagonal is an equally valid
        // Delaunay edge; add its midpoint too.
        if (owners.size() == 2) {
            const auto& t1 = out.triangles[owners[0]];
            const auto& t2 = out.triangles[owners[1]];
            int o1 = -1, o2 = -1;
            for (int k : t1)
                if (k != e.first && k != e.second) o1 = k;
            for (int k : t2)
                if (k != e.first && k != e.second) o2 = k;
            const long double det = incircle(pts[t1[0]], pts[t1[1]], pts[t1[2]], pts[o2]);
            if (std::abs((double)det) <= (double)inc_tol)
                mids.push_back({0.5 * (pts[o1].x + pts[o2].x), 0.5 * (pts[o1].y + pts[o2].y)});
        }
    }
    // Deduplicate midpoints.
    const double mtol = 1e-12 * span;
    for (const Vec2& m : mids) {
        bool dup = false;
        for (const Vec2& q : out.midpoints)
            if (std::abs(q.x - m.x) <= mtol && std::abs(q.y - m.y) <= mtol) {
                dup = true;
                break;
            }
        if (!dup) out.midpoints.push_back(m);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Charge energies
// ---------------------------------------------------------------------------

namespace {

std::vector<double> pair_matrix(const std::vector<Vec2>& pts, const Potential& f) {
    const int n = int(pts.size());
    std::vector<double> F(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
            const double val = f(dx * dx + dy * dy);
            F[std::size_t(i) * n + j] = val;
            F[std::size_t(j) * n + i] = val;
        }
    return F;
}

double assignment_energy(const std::vector<double>& F, const std::vector<int>& phi) {
    const int n = int(phi.size());
    KahanSum s;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s.add(phi[i] * phi[j] * F[std::size_t(i) * n + j]);
    return s.value() / n;
}

}  // namespace

double pair_energy(const std::vector<Vec2>& pts, const std::vector<int>& charges,
                   const Potential& f) {
    if (pts.size() != charges.size()) throw DegenerateInput("charge list length mismatch");
    return assignment_energy(pair_matrix(pts, f), charges);
}

ChargeAssignment charge_energy_exhaustive(const PointConfig& config, const Potential& f) {
    const int n = int(config.points.size());
    if (n % 2 != 0) throw OddCount("need an even number of points");
    if (n > 16) throw TooLargeForExhaustive("exhaustive search is limited to N <= 16");
    if (n == 0) throw DegenerateInput("empty configuration");
    const auto F = pair_matrix(config.points, f);

    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) total += F[std::size_t(i) * n + j];

    // Minimizing the energy maximizes the ordered cross-pair sum X:
    // E = (T - 4X)/N with X = sum_{i in S, j not in S} F_ij, S the + set.
    double best_cross = -1.0;
    unsigned best_mask = 0;
    const unsigned full = (1u << n) - 1u;
    for (unsigned mask = 1u; mask <= full; ++mask) {
        if (!(mask & 1u)) continue;  // fix point 0 positive (global flip symmetry)
        if (__builtin_popcount(mask) != n / 2) continue;
        double cross = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!(mask >> i & 1u)) continue;
            for (int j = 0; j < n; ++j)
                if (!(mask >> j & 1u)) cross += F[std::size_t(i) * n + j];
        }
        if (cross > best_cross) {
            best_cross = cross;
            best_mask = mask;
        }
    }
    ChargeAssignment out;
    out.charges.resize(n);
    for (int i = 0; i < n; ++i) out.charges[i] = (best_mask >> i & 1u) ? 1 : -1;
    out.energy_per_point = (total - 4.0 * best_cross) / n;
    return out;
}

ChargeAssignment charge_energy_anneal(const PointConfig& config, const Potential& f,
                                      std::uint64_t seed, int sweeps, int restarts) {
    const int n = int(config.points.size());
    if (n % 2 != 0) throw OddCount("need an even number of points");
    if (n == 0) throw DegenerateInput("empty configuration");
    const auto F = pair_matrix(config.points, f);
    std::mt19937_64 rng(seed);

    double t0 = 0.0;
    for (double v : F) t0 = std::max(t0, std::abs(v));
    if (t0 == 0.0) t0 = 1.0;

    ChargeAssignment best;
    best.energy_per_point = std::numeric_limits<double>::infinity();
    std::vector<int> phi(n);
    for (int restart = 0; restart < restarts; ++restart) {
        for (int i = 0; i < n; ++i) phi[i] = i < n / 2 ? 1 : -1;
        std::shuffle(phi.begin(), phi.end(), rng);
        double temp = 2.0 * t0;
        for (int sweep = 0; sweep < sweeps; ++sweep, temp *= 0.97) {
            for (int move = 0; move < n; ++move) {
                int i = int(rng() % n), j = int(rng() % n);
                if (phi[i] == phi[j]) continue;
                // Swap the opposite charges at i and j; the (i,j) pair term
                // keeps its sign, everything else couples to the new values.
                double field = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    field += phi[k] * (F[std::size_t(i) * n + k] - F[std::size_t(j) * n + k]);
                }
                const double delta = -4.0 * phi[i] * field / n;
                if (delta <= 0.0 ||
                    std::generate_canonical<double, 53>(rng) < std::exp(-delta * n / temp)) {
                    std::swap(phi[i], phi[j]);
                }
            }
        }
        const double e = assignment_energy(F, phi);
        if (e < best.energy_per_point) {
            best.energy_per_point = e;
            best.charges = phi;
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// Center energy
// ---------------------------------------------------------------------------

double center_energy_at(const PointConfig& config, const Potential& f, Vec2 m) {
    KahanSum s;
    for (const Vec2& p : config.points) {
        const double dx = p.x - m.x, dy = p.y - m.y;
        s.add(f(dx * dx + dy * dy));
    }
    return s.value();
}

double center_energy(const PointConfig& config, const Potential& f) {
    const Triangulation tri = delaunay(config.points);
    double best = std::numeric_limits<double>::infinity();
    for (const Vec2& m : tri.midpoints) best = std::min(best, center_energy_at(config, f, m));
    return best;
}

Vec2 central_midpoint(const Triangulation& tri) {
    if (tri.midpoints.empty()) throw DegenerateInput("no midpoints");
    Vec2 best = tri.midpoints.front();
    double bd = best.x * best.x + best.y * best.y;
    for (const Vec2& m : tri.midpoints) {
        const double d = m.x * m.x + m.y * m.y;
        if (d < bd) {
            bd = d;
            best = m;
        }
    }
    return best;
}

PointConfig make_patch(PatchKind kind, double R) {
    require_positive(R, "R");
    Vec2 v1, v2;
    PointConfig cfg;
    if (kind == PatchKind::hexagonal) {
        const double s = std::sqrt(2.0 / std::sqrt(3.0));  // unit density
        v1 = {s, 0.0};
        v2 = {0.5 * s, 0.5 * std::sqrt(3.0) * s};
        cfg.source = "hexagonal";
    } else {
        v1 = {1.0, 0.0};
        v2 = {0.0, 1.0};
        cfg.source = "square";
    }
    cfg.radius = R;
    const long kmax = long(std::ceil(2.5 * R)) + 2;
    for (long k = -kmax; k <= kmax; ++k)
        for (long l = -kmax; l <= kmax; ++l) {
            const Vec2 p{k * v1.x + l * v2.x, k * v1.y + l * v2.y};
            if (p.x * p.x + p.y * p.y <= R * R + 1e-9) cfg.points.push_back(p);
        }
    return cfg;
}

}  // namespace maxtheta::pointset
