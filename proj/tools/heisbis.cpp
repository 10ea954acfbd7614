#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "heis/bisector.hpp"
#include "heis/boundary.hpp"
#include "heis/curvature.hpp"
#include "heis/errors.hpp"
#include "heis/io.hpp"
#include "heis/mesh.hpp"
#include "heis/point.hpp"
#include "heis/similarity.hpp"
#include "heis/verify.hpp"

namespace {

heis::HeisPoint parse_point(const std::string& s) {
    heis::HeisPoint p;
    char extra;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf%c", &p.x, &p.y, &p.t, &extra) != 3 ||
        !p.is_finite())
        throw CLI::ValidationError("expected a finite point as x,y,t: " + s);
    return p;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct GridSpec {
    double xmin, xmax, ymin, ymax;
    int n;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    char extra;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf,%d%c", &g.xmin, &g.xmax, &g.ymin, &g.ymax,
                    &g.n, &extra) != 5 ||
        g.n < 2 || !(g.xmax > g.xmin) || !(g.ymax > g.ymin))
        throw CLI::ValidationError("expected grid as xmin,xmax,ymin,ymax,n: " + s);
    return g;
}

int run_dist(const std::string& p1s, const std::string& p2s) {
    std::cout << fmt(heis::dist(parse_point(p1s), parse_point(p2s))) << "\n";
    return 0;
}

int run_normalize(const std::string& p1s, const std::string& p2s) {
    const heis::NormalizedPair np = heis::normalize_pair(parse_point(p1s), parse_point(p2s));
    nlohmann::json cls;
    switch (np.cls.kind) {
        case heis::PairKind::Vertical: cls = {{"kind", "vertical"}}; break;
        case heis::PairKind::Planar: cls = {{"kind", "planar"}}; break;
        case heis::PairKind::Generic:
            cls = {{"kind", "generic"}, {"iota", np.cls.iota}};
            break;
    }
    nlohmann::json j{{"similarity", heis::to_json(np.g)},
                     {"canonical", {{np.first.x, np.first.y, np.first.t},
                                    {np.second.x, np.second.y, np.second.t}}},
                     {"class", cls}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_bisector(const std::string& p1s, const std::string& p2s, const std::string& emit,
                 const std::string& boxs, int n, std::uint64_t seed, int res,
                 const std::string& format) {
    const heis::HeisPoint p1 = parse_point(p1s), p2 = parse_point(p2s);
    double bx, by, bt;
    char extra;
    if (std::sscanf(boxs.c_str(), "%lf,%lf,%lf%c", &bx, &by, &bt, &extra) != 3 ||
        !(bx > 0.0) || !(by > 0.0) || !(bt > 0.0))
        throw CLI::ValidationError("expected box half-widths as a,b,c: " + boxs);
    const heis::Box box = heis::Box::centered(bx, by, bt);

    if (emit == "poly") {
        std::cout << heis::poly_to_json(heis::bisector_field(p1, p2).f).dump(2) << "\n";
    } else if (emit == "samples") {
        heis::write_points_csv(std::cout, heis::sample_bisector(p1, p2, box, n, seed));
    } else {  // mesh
        std::ostringstream provenance;
        provenance << "koranyi bisector, foci (" << fmt(p1.x) << "," << fmt(p1.y) << ","
                   << fmt(p1.t) << ") and (" << fmt(p2.x) << "," << fmt(p2.y) << ","
                   << fmt(p2.t) << ")";
        const heis::ScalarField f = heis::ScalarField::from_cubic(heis::bisector_field(p1, p2));
        const heis::TriangleMesh mesh = heis::marching_cubes(f, box, res, provenance.str());
        if (format == "ply")
            heis::write_ply(mesh, std::cout);
        else
            heis::write_obj(mesh, std::cout);
    }
    return 0;
}

int run_curvature(const std::string& surface, const std::string& p1s, const std::string& p2s,
                  const std::string& grids) {
    const GridSpec g = parse_grid(grids);
    auto xi = [&](int i) { return g.xmin + (g.xmax - g.xmin) * i / (g.n - 1); };
    auto yj = [&](int j) { return g.ymin + (g.ymax - g.ymin) * j / (g.n - 1); };

    if (surface == "s1") {
        // Closed-form curvature grid; rows at the two characteristic points are skipped.
        std::cout << "x,y,H\n";
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i) {
                const double x = xi(i), y = yj(j);
                try {
                    const double h = heis::s1_curvature(x, y);
                    std::cout << fmt(x) << ',' << fmt(y) << ',' << fmt(h) << "\n";
                } catch (const heis::CharacteristicPoint&) {
                }
            }
        return 0;
    }

    heis::CubicField field =
        surface == "plane"
            ? heis::bisector_field({0.0, 0.0, -1.0}, {0.0, 0.0, 1.0})
            : heis::bisector_field(parse_point(p1s), parse_point(p2s));
    const heis::ScalarField f = heis::ScalarField::from_cubic(field);

    // The field is affine in t for fixed (x, y); solve for the surface point on
    // each grid line and report the curvature there.
    const heis::Poly ft = field.f.dt();
    std::cout << "x,y,t,H\n";
    for (int j = 0; j < g.n; ++j)
        for (int i = 0; i < g.n; ++i) {
            const double x = xi(i), y = yj(j);
            const double c1 = ft.eval(x, y, 0.0);
            if (std::abs(c1) < 1e-12) continue;  // no (or ill-posed) surface point here
            const double t = -field.f.eval(x, y, 0.0) / c1;
            try {
                const double h = heis::mean_curvature(f, {x, y, t});
                std::cout << fmt(x) << ',' << fmt(y) << ',' << fmt(t) << ',' << fmt(h) << "\n";
            } catch (const heis::CharacteristicPoint&) {
            }
        }
    return 0;
}

int run_fit(const std::string& input, const std::string& v1s, const std::string& v2s) {
    std::ifstream in(input);
    if (!in) throw CLI::ValidationError("cannot open " + input);
    const std::vector<heis::HeisPoint> points = heis::read_points_csv(in);

    std::optional<std::pair<heis::BoundaryPoint, heis::BoundaryPoint>> initial;
    if (!v1s.empty() || !v2s.empty()) {
        if (v1s.empty() || v2s.empty())
            throw CLI::ValidationError("provide both --v1-init and --v2-init or neither");
        auto parse_vertex = [](const std::string& s) {
            if (s == "inf" || s == "infinity") return heis::BoundaryPoint::infinity();
            return heis::BoundaryPoint::finite(parse_point(s));
        };
        initial = {parse_vertex(v1s), parse_vertex(v2s)};
    }

    try {
        const heis::FitReport report = heis::fit_spinal(points, initial);
        std::cout << heis::to_json(report).dump(2) << "\n";
        return 0;
    } catch (const heis::NoConvergence& e) {
        nlohmann::json j{{"converged", false}, {"error", e.what()}};
        std::cout << j.dump(2) << "\n";
        return 1;
    }
}

int run_verify_cmd(const std::string& suite, std::uint64_t seed, long samples) {
    const heis::VerifyReport report =
        heis::run_verify(heis::suite_from_name(suite), seed, samples);
    std::cout << heis::to_json(report).dump(2) << "\n";
    return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Koranyi-metric geometry of the Heisenberg group: bisectors, spinal "
                 "spheres, horizontal curvature"};
    app.require_subcommand(1);

    std::string p1, p2, emit = "poly", box = "3,3,6", format = "obj";
    std::string surface = "s1", grid = "-3,3,-3,3,301", input, v1init, v2init;
    std::string suite = "metric";
    int n = 100, res = 96;
    std::uint64_t seed = 1;
    long samples = 10000;

    auto* dist_cmd = app.add_subcommand("dist", "Koranyi distance between two points");
    dist_cmd->add_option("--p1", p1, "first point x,y,t")->required();
    dist_cmd->add_option("--p2", p2, "second point x,y,t")->required();

    auto* norm_cmd = app.add_subcommand("normalize", "canonical form of a point pair");
    norm_cmd->add_option("--p1", p1)->required();
    norm_cmd->add_option("--p2", p2)->required();

    auto* bis_cmd = app.add_subcommand("bisector", "bisector of two foci");
    bis_cmd->add_option("--p1", p1)->required();
    bis_cmd->add_option("--p2", p2)->required();
    bis_cmd->add_option("--emit", emit)->check(CLI::IsMember({"poly", "samples", "mesh"}));
    bis_cmd->add_option("--box", box, "half-widths a,b,c of the sampling/meshing box");
    bis_cmd->add_option("--n", n, "sample count");
    bis_cmd->add_option("--seed", seed);
    bis_cmd->add_option("--res", res, "marching cubes cells per axis");
    bis_cmd->add_option("--format", format)->check(CLI::IsMember({"obj", "ply"}));

    auto* cur_cmd = app.add_subcommand("curvature", "horizontal mean curvature grid (CSV)");
    cur_cmd->add_option("--surface", surface)
        ->check(CLI::IsMember({"plane", "s1", "bisector"}));
    cur_cmd->add_option("--p1", p1, "focus 1 (surface=bisector)");
    cur_cmd->add_option("--p2", p2, "focus 2 (surface=bisector)");
    cur_cmd->add_option("--grid", grid, "xmin,xmax,ymin,ymax,n");

    auto* fit_cmd = app.add_subcommand("fit", "fit a spinal sphere to a point CSV");
    fit_cmd->add_option("--input", input)->required();
    fit_cmd->add_option("--v1-init", v1init, "initial vertex x,y,t or 'inf'");
    fit_cmd->add_option("--v2-init", v2init, "initial vertex x,y,t or 'inf'");

    auto* ver_cmd = app.add_subcommand("verify", "run an invariant suite");
    ver_cmd->add_option("--suite", suite)
        ->check(CLI::IsMember(
            {"metric", "similarity", "theorem", "curvature", "generic-experiment"}))
        ->required();
    ver_cmd->add_option("--seed", seed);
    ver_cmd->add_option("--samples", samples);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dist_cmd->parsed()) return run_dist(p1, p2);
        if (norm_cmd->parsed()) return run_normalize(p1, p2);
        if (bis_cmd->parsed()) return run_bisector(p1, p2, emit, box, n, seed, res, format);
        if (cur_cmd->parsed()) {
            if (surface == "bisector" && (p1.empty() || p2.empty()))
                throw CLI::ValidationError("--surface bisector needs --p1 and --p2");
            return run_curvature(surface, p1, p2, grid);
        }
        if (fit_cmd->parsed()) return run_fit(input, v1init, v2init);
        if (ver_cmd->parsed()) return run_verify_cmd(suite, seed, samples);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const heis::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
