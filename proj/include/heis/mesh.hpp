#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "heis/curvature.hpp"
#include "heis/point.hpp"

namespace heis {

struct TriangleMesh {
    std::vector<std::array<double, 3>> vertices;    // (x, y, t)
    std::vector<std::array<std::size_t, 3>> triangles;
    std::string provenance;
};

/// Standard 256-case marching cubes on a resolution^3 cell grid over the box
/// (resolution >= 2), linear interpolation along cell edges, zero-area
/// triangles dropped.  Deterministic for fixed inputs, independent of the
/// worker count.  Throws EmptySurface when no cell changes sign.
TriangleMesh marching_cubes(const ScalarField& f, const Box& box, int resolution,
                            std::string provenance = {});

void write_obj(const TriangleMesh& mesh, std::ostream& out);
void write_ply(const TriangleMesh& mesh, std::ostream& out);

}  // namespace heis
