// Command-line front end: theta evaluations, fundamental-domain scans,
// lattice energies, the verification suites and point-set tools.
//
// Exit codes: 0 success, 1 verification failure, 2 usage / parameter error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxtheta/energy.hpp"
#include "maxtheta/lattice.hpp"
#include "maxtheta/pointset.hpp"
#include "maxtheta/theta2d.hpp"
#include "maxtheta/verify.hpp"

using namespace maxtheta;
using nlohmann::json;

namespace {

struct OutputSpec {
    std::string format = "text";  // text | json | csv
    std::string path;             // empty = stdout
    int precision = 12;
};

// Numbers render in shortest round-trip decimal at the requested precision,
// so identical invocations produce byte-identical output.
std::string fmt_num(double v, int precision) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

double json_num(double v, int precision) {
    return std::strtod(fmt_num(v, precision).c_str(), nullptr);
}

std::ostream& open_sink(const OutputSpec& out, std::ofstream& file) {
    if (out.path.empty()) return std::cout;
    file.open(out.path);
    if (!file) throw ParseError("cannot open output file " + out.path);
    return file;
}

void add_output_flags(CLI::App* cmd, OutputSpec& out) {
    cmd->add_option("--format", out.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("-o,--output", out.path, "destination file (default stdout)");
    cmd->add_option("--precision", out.precision, "printed decimal digits (4..17)")
        ->check(CLI::Range(4, 17));
}

void apply_env_precision(OutputSpec& out) {
    if (const char* env = std::getenv("MAXTHETA_PRECISION")) {
        const int p = std::atoi(env);
        if (p >= 4 && p <= 17) out.precision = p;
    }
}

ThetaFlavor parse_flavor(const std::string& name) {
    if (name == "plain") return ThetaFlavor::plain;
    if (name == "centered") return ThetaFlavor::centered;
    if (name == "alternating") return ThetaFlavor::alternating;
    if (name == "shifted") return ThetaFlavor::shifted;
    if (name == "character") return ThetaFlavor::character;
    throw ParseError("unknown flavor " + name);
}

void emit_scalar(const OutputSpec& out, const std::string& name,
                 const std::vector<std::pair<std::string, double>>& fields,
                 const std::vector<std::pair<std::string, std::string>>& notes = {}) {
    std::ofstream file;
    std::ostream& os = open_sink(out, file);
    if (out.format == "json") {
        json j;
        j["command"] = name;
        for (const auto& [k, v] : fields) j[k] = json_num(v, out.precision);
        for (const auto& [k, v] : notes) j[k] = v;
        os << j.dump(2) << "\n";
    } else if (out.format == "csv") {
        std::string head, row;
        for (const auto& [k, v] : fields) {
            if (!head.empty()) {
                head += ',';
                row += ',';
            }
            head += k;
            row += fmt_num(v, out.precision);
        }
        os << head << "\n" << row << "\n";
    } else {
        for (const auto& [k, v] : notes) os << "# " << k << ": " << v << "\n";
        for (const auto& [k, v] : fields)
            os << k << " = " << fmt_num(v, out.precision) << "\n";
    }
}

// ---------------------------------------------------------------------------

int cmd_theta(const std::string& flavor_name, double x, double y, double alpha, double xi,
              double eta, bool no_reduce, double rel_tol, const OutputSpec& out) {
    ThetaQuery q;
    q.lattice = {x, y};
    q.alpha = alpha;
    q.xi = xi;
    q.eta = eta;
    q.flavor = parse_flavor(flavor_name);
    q.budget.rel_tol = rel_tol;

    std::vector<std::pair<std::string, std::string>> notes;
    if (no_reduce) {
        if (q.flavor == ThetaFlavor::centered)
            throw ParseError("--no-reduce is not available for the centered flavor "
                             "(the centered sum is basis dependent)");
    } else if (!q.lattice.reduced()) {
        const LatticeParam red = reduce_to_fundamental(q.lattice).tau;
        notes.emplace_back("notice", "parameter reduced to " + red.str());
        q.lattice = red;
    }
    const ThetaResult r = evaluate(q);
    emit_scalar(out, "theta",
                {{"value", r.value},
                 {"x", r.used.x},
                 {"y", r.used.y},
                 {"alpha", q.alpha},
                 {"outer_radius", double(r.outer_radius)},
                 {"inner_radius", double(r.inner_radius)}},
                notes);
    return 0;
}

int cmd_scan(const std::string& flavor_name, double alpha, int nx, int ny, double ymax,
             const OutputSpec& out) {
    verify::ScanSpec spec;
    spec.flavor = parse_flavor(flavor_name);
    if (spec.flavor != ThetaFlavor::plain && spec.flavor != ThetaFlavor::centered &&
        spec.flavor != ThetaFlavor::alternating)
        throw ParseError("scan flavors: plain, centered, alternating");
    spec.alphas = {alpha};
    spec.nx = nx;
    spec.ny = ny;
    spec.ymax = ymax;
    spec.keep_table = true;
    const auto res = verify::scan_extremum(spec).front();

    std::ofstream file;
    std::ostream& os = open_sink(out, file);
    os << "x,y,value\n";
    for (const auto& p : res.table)
        os << fmt_num(p.x, out.precision) << ',' << fmt_num(p.y, out.precision) << ','
           << fmt_num(p.value, out.precision) << "\n";
    os << "# argopt," << fmt_num(res.argopt.x, out.precision) << ','
       << fmt_num(res.argopt.y, out.precision) << ',' << fmt_num(res.value, out.precision) << "\n";
    return 0;
}

int cmd_energy(const std::string& kind, double x, double y, double s, double p, double q,
               double rho, const std::string& pot, double eta, const OutputSpec& out) {
    const LatticeParam L{x, y};
    const EwaldSplit split{eta};
    double value = 0.0;
    if (kind == "pm")
        value = energy_pm(L, Potential::parse(pot));
    else if (kind == "c")
        value = energy_c(L, Potential::parse(pot));
    else if (kind == "epstein-pm")
        value = epstein_pm(L, s, split);
    else if (kind == "epstein-c")
        value = epstein_c(L, s, split);
    else if (kind == "epstein")
        value = epstein_plain(L, s, split);
    else if (kind == "rocksalt")
        value = rocksalt_energy(L, p, q, rho, split);
    else if (kind == "madelung3d")
        value = madelung_nacl3d(s, split);
    else
        throw ParseError("unknown energy kind " + kind);
    emit_scalar(out, "energy " + kind, {{"value", value}});
    return 0;
}

int cmd_verify(const std::string& suite, int scan_n, const OutputSpec& out) {
    std::vector<verify::Report> reports;
    if (suite == "all") {
        reports = verify::run_all(scan_n);
    } else if (suite == "constants") {
        reports.push_back(verify::reproduce_constants());
    } else if (suite == "bounds") {
        reports.push_back(verify::check_bounds_suite());
    } else if (suite == "lemma1") {
        reports.push_back(verify::check_first_main_lemma());
    } else if (suite == "lemma2") {
        reports.push_back(verify::check_second_main_lemma());
    } else if (suite == "scan") {
        for (const ThetaFlavor f :
             {ThetaFlavor::centered, ThetaFlavor::alternating, ThetaFlavor::plain}) {
            verify::ScanSpec spec;
            spec.flavor = f;
            spec.alphas = {0.5, 1.0, 2.0, 4.0};
            spec.nx = spec.ny = scan_n;
            reports.push_back(verify::scan_suite(spec));
        }
    } else if (suite == "negativity") {
        reports.push_back(verify::check_negativity());
    } else {
        throw ParseError("unknown suite " + suite);
    }

    std::ofstream file;
    std::ostream& os = open_sink(out, file);
    bool ok = true;
    if (out.format == "json") {
        json all = json::array();
        for (const auto& r : reports) {
            all.push_back(json::parse(r.to_json()));
            ok = ok && r.pass();
        }
        os << all.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            r.print(os);
            ok = ok && r.pass();
        }
        os << (ok ? "ALL CHECKS PASSED\n" : "CHECKS FAILED\n");
    }
    return ok ? 0 : 1;
}

int cmd_reduce(double x, double y, const OutputSpec& out) {
    const ReduceResult r = reduce_to_fundamental({x, y});
    emit_scalar(out, "reduce",
                {{"x", r.tau.x}, {"y", r.tau.y}},
                {{"word", r.word.str()}, {"input", LatticeParam{x, y}.str()}});
    return 0;
}

pointset::PointConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return pointset::PointConfig::load_csv(in);
}

int cmd_pointset(const std::string& sub, const std::string& file, const std::string& pot,
                 const std::string& method, std::uint64_t seed, const std::string& kind, double R,
                 const OutputSpec& out) {
    std::ofstream sink_file;
    if (sub == "patch") {
        const auto patch = pointset::make_patch(
            kind == "hexagonal" ? pointset::PatchKind::hexagonal : pointset::PatchKind::square, R);
        std::ostream& os = open_sink(out, sink_file);
        if (out.format == "json") {
            json j;
            j["kind"] = kind;
            j["radius"] = R;
            j["count"] = patch.points.size();
            json pts = json::array();
            for (const auto& p : patch.points)
                pts.push_back({json_num(p.x, out.precision), json_num(p.y, out.precision)});
            j["points"] = pts;
            os << j.dump(2) << "\n";
        } else {
            patch.save_csv(os);
        }
        return 0;
    }

    const pointset::PointConfig cfg = load_config(file);
    if (sub == "delaunay") {
        const auto tri = pointset::delaunay(cfg.points);
        std::ostream& os = open_sink(out, sink_file);
        if (out.format == "csv") {
            os << "i,j,k\n";
            for (const auto& t : tri.triangles) os << t[0] << ',' << t[1] << ',' << t[2] << "\n";
        } else {
            json j;
            j["triangles"] = tri.triangles;
            json mids = json::array();
            for (const auto& m : tri.midpoints)
                mids.push_back({json_num(m.x, out.precision), json_num(m.y, out.precision)});
            j["midpoints"] = mids;
            os << j.dump(2) << "\n";
        }
        return 0;
    }
    if (sub == "charges") {
        const Potential f = Potential::parse(pot);
        pointset::ChargeAssignment res;
        if (method == "exhaustive")
            res = pointset::charge_energy_exhaustive(cfg, f);
        else if (method == "anneal")
            res = pointset::charge_energy_anneal(cfg, f, seed);
        else
            throw ParseError("method is exhaustive or anneal");
        std::ostream& os = open_sink(out, sink_file);
        if (out.format == "json") {
            json j;
            j["energy_per_point"] = json_num(res.energy_per_point, out.precision);
            j["charges"] = res.charges;
            os << j.dump(2) << "\n";
        } else {
            os << "x,y,charge\n";
            char buf[80];
            for (std::size_t i = 0; i < cfg.points.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.*g,%.*g,%d", out.precision, cfg.points[i].x,
                              out.precision, cfg.points[i].y, res.charges[i]);
                os << buf << "\n";
            }
            os << "# energy_per_point," << fmt_num(res.energy_per_point, out.precision) << "\n";
        }
        return 0;
    }
    if (sub == "center") {
        const Potential f = Potential::parse(pot);
        emit_scalar(out, "pointset center", {{"value", pointset::center_energy(cfg, f)}});
        return 0;
    }
    throw ParseError("unknown pointset subcommand " + sub);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice theta functions and Madelung-like lattice energies"};
    app.require_subcommand(1);

    OutputSpec out;
    apply_env_precision(out);

    // theta
    std::string flavor = "plain";
    double x = 0.0, y = 1.0, alpha = 1.0, xi = 0.0, eta_shift = 0.0, rel_tol = 1e-13;
    bool no_reduce = false;
    auto* theta = app.add_subcommand("theta", "evaluate a lattice theta function");
    theta->add_option("--flavor", flavor, "plain|centered|alternating|shifted|character");
    theta->add_option("--x", x, "shearing parameter");
    theta->add_option("--y", y, "dilation parameter (> 0)");
    theta->add_option("--alpha", alpha, "evaluation parameter (> 0)");
    theta->add_option("--xi", xi, "first shift (shifted/character)");
    theta->add_option("--eta", eta_shift, "second shift (shifted/character)");
    theta->add_flag("--no-reduce", no_reduce, "evaluate the raw series without basis reduction");
    theta->add_option("--rel-tol", rel_tol, "series tolerance");
    add_output_flags(theta, out);

    // scan
    std::string scan_flavor = "centered";
    int nx = 200, ny = 200;
    double ymax = 4.0;
    auto* scan = app.add_subcommand("scan", "grid scan over the fundamental domain");
    scan->add_option("--flavor", scan_flavor, "plain|centered|alternating");
    scan->add_option("--alpha", alpha, "evaluation parameter");
    scan->add_option("--nx", nx, "grid columns")->check(CLI::Range(2, 2000));
    scan->add_option("--ny", ny, "grid rows")->check(CLI::Range(2, 2000));
    scan->add_option("--ymax", ymax, "dilation cap");
    add_output_flags(scan, out);

    // energy
    std::string ekind = "pm", pot = "pow:s=4";
    double s = 4.0, p = 6.0, q = 4.0, rho = 1.0, eta = 1.0;
    auto* energy = app.add_subcommand("energy", "lattice energies and Epstein zetas");
    energy->add_option("kind", ekind, "pm|c|epstein-pm|epstein-c|epstein|rocksalt|madelung3d")
        ->required();
    energy->add_option("--x", x, "shearing parameter");
    energy->add_option("--y", y, "dilation parameter");
    energy->add_option("--s", s, "distance exponent");
    energy->add_option("--p", p, "rock-salt plain exponent");
    energy->add_option("--q", q, "rock-salt alternating exponent");
    energy->add_option("--rho", rho, "rock-salt density factor");
    energy->add_option("--pot", pot, "potential: pow:s=..., gauss:t=..., measure:[(t,w),...]");
    energy->add_option("--eta", eta, "Ewald split parameter");
    add_output_flags(energy, out);

    // verify
    std::string suite = "all";
    int scan_n = 200;
    auto* ver = app.add_subcommand("verify", "run the verification suites");
    ver->add_option("suite", suite, "all|constants|bounds|lemma1|lemma2|scan|negativity");
    ver->add_option("--scan-n", scan_n, "scan grid resolution")->check(CLI::Range(2, 2000));
    add_output_flags(ver, out);

    // reduce
    auto* red = app.add_subcommand("reduce", "reduce a parameter to the fundamental domain");
    red->add_option("--x", x, "shearing parameter")->required();
    red->add_option("--y", y, "dilation parameter")->required();
    add_output_flags(red, out);

    // pointset
    std::string psub, file, method = "exhaustive", kind = "hexagonal";
    std::uint64_t seed = 1;
    double R = 6.0;
    auto* ps = app.add_subcommand("pointset", "finite-configuration tools");
    ps->add_option("sub", psub, "delaunay|charges|center|patch")->required();
    ps->add_option("--file", file, "CSV input (x,y[,charge])");
    ps->add_option("--pot", pot, "potential string");
    ps->add_option("--method", method, "exhaustive|anneal");
    ps->add_option("--seed", seed, "annealing seed");
    ps->add_option("--kind", kind, "hexagonal|square")
        ->check(CLI::IsMember({"hexagonal", "square"}));
    ps->add_option("--R", R, "patch radius");
    add_output_flags(ps, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (theta->parsed())
            return cmd_theta(flavor, x, y, alpha, xi, eta_shift, no_reduce, rel_tol, out);
        if (scan->parsed()) return cmd_scan(scan_flavor, alpha, nx, ny, ymax, out);
        if (energy->parsed()) return cmd_energy(ekind, x, y, s, p, q, rho, pot, eta, out);
        if (ver->parsed()) return cmd_verify(suite, scan_n, out);
        if (red->parsed()) return cmd_reduce(x, y, out);
        if (ps->parsed()) return cmd_pointset(psub, file, pot, method, seed, kind, R, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
