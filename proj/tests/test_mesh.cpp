#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "heis/bisector.hpp"
#include "heis/curvature.hpp"
#include "heis/errors.hpp"
#include "heis/mesh.hpp"

using namespace heis;

namespace {

ScalarField plane_field() {
    return ScalarField::from_cubic(bisector_field({0.0, 0.0, -1.0}, {0.0, 0.0, 1.0}));
}

ScalarField s1_field() {
    return ScalarField::from_cubic(bisector_field({-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}));
}

double max_vertex_residual(const ScalarField& f, const TriangleMesh& m) {
    double worst = 0.0;
    for (const auto& v : m.vertices)
        worst = std::max(worst, std::abs(f.value({v[0], v[1], v[2]})));
    return worst;
}

double grad_norm(const ScalarField& f, const HeisPoint& p) {
    return std::sqrt(f.dx(p) * f.dx(p) + f.dy(p) * f.dy(p) + f.dt(p) * f.dt(p));
}

}  // namespace

TEST_CASE("plane meshes exactly") {
    const TriangleMesh m =
        marching_cubes(plane_field(), {-1.0, 1.0, -1.0, 1.0, -1.0, 1.0}, 8, "plane");
    REQUIRE(!m.triangles.empty());
    for (const auto& v : m.vertices) CHECK(std::abs(v[2]) <= 1e-12);
    for (const auto& t : m.triangles) {
        CHECK(t[0] < m.vertices.size());
        CHECK(t[1] < m.vertices.size());
        CHECK(t[2] < m.vertices.size());
    }
}

TEST_CASE("curved bisector mesh respects the interpolation bound") {
    const ScalarField f = s1_field();
    const Box box{-3.0, 3.0, -3.0, 3.0, -6.0, 6.0};
    const int res = 64;
    const TriangleMesh m = marching_cubes(f, box, res);
    REQUIRE(m.triangles.size() > 1000);

    const double diag = std::sqrt(std::pow(box.diam_x() / res, 2) +
                                  std::pow(box.diam_y() / res, 2) +
                                  std::pow(box.diam_t() / res, 2));
    for (const auto& v : m.vertices) {
        const HeisPoint p{v[0], v[1], v[2]};
        CHECK(std::abs(f.value(p)) <= 2.0 * diag * grad_norm(f, p));
    }
}

TEST_CASE("no degenerate triangles are emitted") {
    const TriangleMesh m =
        marching_cubes(s1_field(), {-2.0, 2.0, -2.0, 2.0, -4.0, 4.0}, 24);
    for (const auto& t : m.triangles) {
        const auto &a = m.vertices[t[0]], &b = m.vertices[t[1]], &c = m.vertices[t[2]];
        const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
        const double w[3] = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                             u[0] * v[1] - u[1] * v[0]};
        CHECK(0.5 * std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]) > 1e-14);
    }
}

TEST_CASE("doubling the resolution reduces the worst vertex residual") {
    const ScalarField f = s1_field();
    const Box box{-3.0, 3.0, -3.0, 3.0, -6.0, 6.0};
    const double coarse = max_vertex_residual(f, marching_cubes(f, box, 16));
    const double fine = max_vertex_residual(f, marching_cubes(f, box, 32));
    CHECK(fine < coarse);
}

TEST_CASE("empty surface raises") {
    CHECK_THROWS_AS(
        marching_cubes(plane_field(), {-1.0, 1.0, -1.0, 1.0, 1.0, 2.0}, 8),
        EmptySurface);
    CHECK_THROWS_AS(marching_cubes(plane_field(), {-1.0, 1.0, -1.0, 1.0, -1.0, 1.0}, 1),
                    std::invalid_argument);
}

TEST_CASE("OBJ export format and round trip") {
    TriangleMesh tri;
    tri.vertices = {{0.1234567890123456, 0.0, 0.0}, {1.0, 0.5, 0.0}, {0.0, 1.0, 1.0 / 3.0}};
    tri.triangles = {{0, 1, 2}};

    std::stringstream ss;
    write_obj(tri, ss);
    int v_lines = 0, f_lines = 0;
    std::string line;
    std::vector<std::array<double, 3>> parsed;
    while (std::getline(ss, line)) {
        if (line.rfind("v ", 0) == 0) {
            ++v_lines;
            std::array<double, 3> v{};
            REQUIRE(std::sscanf(line.c_str(), "v %lf %lf %lf", &v[0], &v[1], &v[2]) == 3);
            parsed.push_back(v);
        } else if (line.rfind("f ", 0) == 0) {
            ++f_lines;
            CHECK(line == "f 1 2 3");
        }
    }
    CHECK(v_lines == 3);
    CHECK(f_lines == 1);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) CHECK(parsed[i][k] == tri.vertices[i][k]);
}

TEST_CASE("PLY header declares the element counts") {
    const TriangleMesh m =
        marching_cubes(plane_field(), {-1.0, 1.0, -1.0, 1.0, -1.0, 1.0}, 4, "plane");
    std::stringstream ss;
    write_ply(m, ss);
    const std::string text = ss.str();
    CHECK(text.rfind("ply\nformat ascii 1.0\n", 0) == 0);
    CHECK(text.find("element vertex " + std::to_string(m.vertices.size())) !=
          std::string::npos);
    CHECK(text.find("element face " + std::to_string(m.triangles.size())) !=
          std::string::npos);
    CHECK(text.find("end_header") != std::string::npos);
}

TEST_CASE("mesh output is byte identical across runs") {
    const ScalarField f = s1_field();
    const Box box{-2.0, 2.0, -2.0, 2.0, -4.0, 4.0};
    std::stringstream a, b;
    write_obj(marching_cubes(f, box, 20, "run"), a);
    write_obj(marching_cubes(f, box, 20, "run"), b);
    CHECK(a.str() == b.str());
    CHECK(a.str().size() > 1000);
}
