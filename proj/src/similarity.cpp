#include "heis/similarity.hpp"

#include <cmath>
#include <stdexcept>

#include "heis/errors.hpp"

namespace heis {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

// Offset (w,s) = p1^{-1} * p2, with the degeneracy check shared by the pair operations.
HeisPoint pair_offset(const HeisPoint& p1, const HeisPoint& p2) {
    HeisPoint d = mul(inverse(p1), p2);
    double tol = 1e-9 * std::max({1.0, gauge(p1), gauge(p2)});
    if (gauge(d) <= tol) throw DegeneratePair("pair of points is degenerate (p1 = p2)");
    return d;
}

}  // namespace

Similarity Similarity::rotate(double theta) {
    return {{}, wrap_angle(theta), 1.0, false};
}

Similarity Similarity::dilate(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("dilation factor must be positive and finite");
    return {{}, 0.0, delta, false};
}

HeisPoint apply(const Similarity& g, const HeisPoint& p) {
    HeisPoint q = p;
    if (g.conjugate) q = {q.x, -q.y, -q.t};
    q = {g.delta * q.x, g.delta * q.y, g.delta * g.delta * q.t};
    const double c = std::cos(g.theta), s = std::sin(g.theta);
    q = {c * q.x - s * q.y, s * q.x + c * q.y, q.t};
    return mul(g.translation, q);
}

Similarity compose(const Similarity& g1, const Similarity& g2) {
    // The linear part A = R_theta D_delta conj^c is a group automorphism, so
    // (c1, A1)(c2, A2) = (c1 * A1(c2), A1 A2).  Pushing conj through a rotation
    // flips the angle sign; dilations commute with everything.
    Similarity r;
    r.conjugate = g1.conjugate != g2.conjugate;
    r.delta = g1.delta * g2.delta;
    r.theta = wrap_angle(g1.theta + (g1.conjugate ? -g2.theta : g2.theta));
    Similarity lin1 = g1;
    lin1.translation = {};
    r.translation = mul(g1.translation, apply(lin1, g2.translation));
    return r;
}

Similarity invert(const Similarity& g) {
    Similarity r;
    r.conjugate = g.conjugate;
    r.delta = 1.0 / g.delta;
    r.theta = wrap_angle(g.conjugate ? g.theta : -g.theta);
    Similarity lin = r;
    lin.translation = {};
    r.translation = apply(lin, inverse(g.translation));
    return r;
}

double scale_factor(const Similarity& g) {
    return g.delta;
}

PairClass classify_pair(const HeisPoint& p1, const HeisPoint& p2) {
    HeisPoint d = pair_offset(p1, p2);
    const double w = std::hypot(d.x, d.y);
    const double s = std::abs(d.t);
    const double tol = 1e-9 * std::max(1.0, gauge(d));
    if (w <= tol) return {PairKind::Vertical, 0.0};
    if (s <= tol) return {PairKind::Planar, 0.0};
    return {PairKind::Generic, s / (w * w)};
}

NormalizedPair normalize_pair(const HeisPoint& p1, const HeisPoint& p2) {
    const PairClass cls = classify_pair(p1, p2);
    const HeisPoint d = pair_offset(p1, p2);

    // Reduce p1 to the origin, rotate the offset onto the positive real axis,
    // dilate to make the gap 2, flip the sign of the central part if needed,
    // and shift so the pair straddles the origin.
    Similarity g = Similarity::translate(inverse(p1));
    if (cls.kind != PairKind::Vertical)
        g = compose(Similarity::rotate(-std::atan2(d.y, d.x)), g);

    const double w = std::hypot(d.x, d.y);
    const double delta =
        cls.kind == PairKind::Vertical ? std::sqrt(2.0 / std::abs(d.t)) : 2.0 / w;
    g = compose(Similarity::dilate(delta), g);

    if (d.t < 0.0) g = compose(Similarity::conjugation(), g);

    HeisPoint offset = cls.kind == PairKind::Vertical ? HeisPoint{0.0, 0.0, -1.0}
                                                      : HeisPoint{-1.0, 0.0, 0.0};
    g = compose(Similarity::translate(offset), g);

    NormalizedPair result;
    result.g = g;
    result.cls = cls;
    switch (cls.kind) {
        case PairKind::Vertical:
            result.first = {0.0, 0.0, -1.0};
            result.second = {0.0, 0.0, 1.0};
            break;
        case PairKind::Planar:
            result.first = {-1.0, 0.0, 0.0};
            result.second = {1.0, 0.0, 0.0};
            break;
        case PairKind::Generic:
            result.first = {-1.0, 0.0, 0.0};
            result.second = {1.0, 0.0, 4.0 * cls.iota};
            break;
    }
    return result;
}

nlohmann::json to_json(const Similarity& g) {
    return {{"translation", {g.translation.x, g.translation.y, g.translation.t}},
            {"theta", g.theta},
            {"delta", g.delta},
            {"conjugate", g.conjugate}};
}

Similarity similarity_from_json(const nlohmann::json& j) {
    Similarity g;
    const auto& c = j.at("translation");
    g.translation = {c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>()};
    g.theta = wrap_angle(j.at("theta").get<double>());
    g.delta = j.at("delta").get<double>();
    g.conjugate = j.at("conjugate").get<bool>();
    if (!(g.delta > 0.0) || !std::isfinite(g.delta) || !g.translation.is_finite() ||
        !std::isfinite(g.theta))
        throw std::invalid_argument("invalid similarity in JSON");
    return g;
}

}  // namespace heis
