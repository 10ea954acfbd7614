#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "heis/point.hpp"
#include "heis/poly.hpp"

namespace heis {

/// A Koranyi bisector as an implicit cubic surface.  The polynomial is the
/// expanded difference dist(focus1,.)^4 - dist(focus2,.)^4, rescaled so the
/// largest coefficient magnitude is 1; it is negative near focus1 and positive
/// near focus2, and the quartic terms of the two sides cancel identically.
struct CubicField {
    Poly f;
    HeisPoint focus1;
    HeisPoint focus2;
};

CubicField bisector_field(const HeisPoint& p1, const HeisPoint& p2);

/// Signed value of the field polynomial at p.
double residual(const CubicField& field, const HeisPoint& p);

/// At least n points of the bisector inside the box, found by sign-bracketing
/// the cubic along random chords and refining the root by bisection plus a
/// Newton polish.  Every returned point has equidistance defect <= 1e-9.
/// Deterministic for a fixed seed regardless of the worker count.
std::vector<HeisPoint> sample_bisector(const HeisPoint& p1, const HeisPoint& p2,
                                       const Box& box, int n, std::uint64_t seed);

/// {"x2y1t0": coefficient, ...} with zero coefficients omitted.
nlohmann::json poly_to_json(const Poly& f);
Poly poly_from_json(const nlohmann::json& j);

}  // namespace heis
