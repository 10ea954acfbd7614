#include "heis/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "heis/errors.hpp"
#include "heis/parallel.hpp"

namespace heis {

namespace detail {
extern const int kMcEdgeTable[256];
extern const int kMcTriTable[256][16];
}  // namespace detail

namespace {

using Vec3 = std::array<double, 3>;

constexpr int kEdgeCorner[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                                    {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};

// Corner offsets in (i, j, k), Bourke layout.
constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

Vec3 lerp_edge(const Vec3& a, const Vec3& b, double fa, double fb) {
    double s;
    if (fa == 0.0)
        s = 0.0;
    else if (fb == 0.0)
        s = 1.0;
    else if (fa == fb)
        s = 0.5;
    else
        s = fa / (fa - fb);
    return {a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]), a[2] + s * (b[2] - a[2])};
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    const double w[3] = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                         u[0] * v[1] - u[1] * v[0]};
    return 0.5 * std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
}

}  // namespace

TriangleMesh marching_cubes(const ScalarField& f, const Box& box, int resolution,
                            std::string provenance) {
    if (resolution < 2) throw std::invalid_argument("marching cubes needs resolution >= 2");
    const int n = resolution;
    const std::size_t np = static_cast<std::size_t>(n) + 1;

    const double sx = box.diam_x() / n, sy = box.diam_y() / n, st = box.diam_t() / n;
    auto coord = [&](int i, int j, int k) -> Vec3 {
        return {box.xmin + i * sx, box.ymin + j * sy, box.tmin + k * st};
    };

    // Sample the grid once, parallel over t-planes.
    std::vector<double> values(np * np * np);
    auto vat = [&](int i, int j, int k) -> double& {
        return values[(static_cast<std::size_t>(k) * np + j) * np + i];
    };
    parallel_for_chunks(static_cast<int>(np), [&](int k) {
        for (int j = 0; j < static_cast<int>(np); ++j)
            for (int i = 0; i < static_cast<int>(np); ++i) {
                const Vec3 p = coord(i, j, k);
                vat(i, j, k) = f.value({p[0], p[1], p[2]});
            }
    });

    // March the cells, parallel over t-slabs; triangles collected per slab and
    // concatenated in slab order so the output does not depend on scheduling.
    std::vector<std::vector<Vec3>> slab_tris(n);
    parallel_for_chunks(n, [&](int k) {
        auto& tris = slab_tris[k];
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double val[8];
                Vec3 pos[8];
                int index = 0;
                for (int c = 0; c < 8; ++c) {
                    const int ci = i + kCorner[c][0], cj = j + kCorner[c][1],
                              ck = k + kCorner[c][2];
                    val[c] = vat(ci, cj, ck);
                    pos[c] = coord(ci, cj, ck);
                    if (val[c] < 0.0) index |= 1 << c;
                }
                const int edges = detail::kMcEdgeTable[index];
                if (edges == 0) continue;

                Vec3 on_edge[12];
                for (int e = 0; e < 12; ++e)
                    if (edges & (1 << e))
                        on_edge[e] = lerp_edge(pos[kEdgeCorner[e][0]], pos[kEdgeCorner[e][1]],
                                               val[kEdgeCorner[e][0]], val[kEdgeCorner[e][1]]);

                const int* tri = detail::kMcTriTable[index];
                for (int t = 0; tri[t] != -1; t += 3) {
                    const Vec3 &a = on_edge[tri[t]], &b = on_edge[tri[t + 1]],
                               &c = on_edge[tri[t + 2]];
                    if (triangle_area(a, b, c) <= 1e-14) continue;
                    tris.push_back(a);
                    tris.push_back(b);
                    tris.push_back(c);
                }
            }
    });

    TriangleMesh mesh;
    mesh.provenance = std::move(provenance);
    for (const auto& tris : slab_tris)
        for (std::size_t v = 0; v + 2 < tris.size(); v += 3) {
            const std::size_t base = mesh.vertices.size();
            mesh.vertices.push_back(tris[v]);
            mesh.vertices.push_back(tris[v + 1]);
            mesh.vertices.push_back(tris[v + 2]);
            mesh.triangles.push_back({base, base + 1, base + 2});
        }
    if (mesh.triangles.empty())
        throw EmptySurface("no sign change inside the meshing box");
    return mesh;
}

namespace {
void print_float(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}
}  // namespace

void write_obj(const TriangleMesh& mesh, std::ostream& out) {
    if (!mesh.provenance.empty()) out << "# " << mesh.provenance << "\n";
    for (const auto& v : mesh.vertices) {
        out << "v ";
        print_float(out, v[0]);
        out << ' ';
        print_float(out, v[1]);
        out << ' ';
        print_float(out, v[2]);
        out << '\n';
    }
    for (const auto& t : mesh.triangles)
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_ply(const TriangleMesh& mesh, std::ostream& out) {
    out << "ply\nformat ascii 1.0\n";
    if (!mesh.provenance.empty()) out << "comment " << mesh.provenance << "\n";
    out << "element vertex " << mesh.vertices.size() << "\n"
        << "property double x\nproperty double y\nproperty double z\n"
        << "element face " << mesh.triangles.size() << "\n"
        << "property list uchar int vertex_indices\nend_header\n";
    for (const auto& v : mesh.vertices) {
        print_float(out, v[0]);
        out << ' ';
        print_float(out, v[1]);
        out << ' ';
        print_float(out, v[2]);
        out << '\n';
    }
    for (const auto& t : mesh.triangles)
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace heis
