#include <doctest.h>

#include <cmath>

#include "heis/bisector.hpp"
#include "heis/boundary.hpp"
#include "heis/errors.hpp"
#include "heis/rng.hpp"

using namespace heis;

namespace {

std::vector<HeisPoint> sphere_samples(const SpinalSphere& s, int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<HeisPoint> pts;
    while (static_cast<int>(pts.size()) < n) {
        const BoundaryPoint b = sphere_point(s, rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0));
        if (!b.infinite && gauge(b.p) < 20.0) pts.push_back(b.p);
    }
    return pts;
}

bool near(const BoundaryPoint& v, const HeisPoint& q, double tol) {
    return !v.infinite && std::abs(v.p.x - q.x) <= tol && std::abs(v.p.y - q.y) <= tol &&
           std::abs(v.p.t - q.t) <= tol;
}

bool near_infinity(const BoundaryPoint& v) {
    return v.infinite || gauge(v.p) >= 1e6;
}

}  // namespace

TEST_CASE("fit recovers the vertices of the curved model sphere") {
    const SpinalSphere truth = spinal_from_vertices(BoundaryPoint::finite({0.0, -1.0, 0.0}),
                                                    BoundaryPoint::finite({0.0, 1.0, 0.0}));
    const auto pts = sphere_samples(truth, 500, 311);

    const FitReport r = fit_spinal(pts);
    CHECK(r.converged);
    CHECK(r.rms <= 1e-8);
    CHECK(r.max <= 1e-6);
    const HeisPoint a{0.0, -1.0, 0.0}, b{0.0, 1.0, 0.0};
    const bool direct = near(r.sphere.v1, a, 1e-6) && near(r.sphere.v2, b, 1e-6);
    const bool swapped = near(r.sphere.v1, b, 1e-6) && near(r.sphere.v2, a, 1e-6);
    CHECK((direct || swapped));
    CHECK(r.iterations > 0);
}

TEST_CASE("fit recovers a pair equivalent to (o, infinity) from plane samples") {
    Rng rng(412);
    std::vector<HeisPoint> pts;
    for (int i = 0; i < 500; ++i)
        pts.push_back({rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), 0.0});

    const FitReport r = fit_spinal(pts);
    CHECK(r.converged);
    CHECK(r.rms <= 1e-8);
    const bool v1_origin = near(r.sphere.v1, {0.0, 0.0, 0.0}, 1e-6);
    const bool v2_origin = near(r.sphere.v2, {0.0, 0.0, 0.0}, 1e-6);
    CHECK(((v1_origin && near_infinity(r.sphere.v2)) ||
           (v2_origin && near_infinity(r.sphere.v1))));
}

TEST_CASE("fit accepts an initial vertex pair and uses a single start") {
    const SpinalSphere truth = spinal_from_vertices(BoundaryPoint::finite({0.0, -1.0, 0.0}),
                                                    BoundaryPoint::finite({0.0, 1.0, 0.0}));
    const auto pts = sphere_samples(truth, 300, 99);
    const FitReport r = fit_spinal(
        pts, std::make_pair(BoundaryPoint::finite({0.1, -0.8, 0.1}),
                            BoundaryPoint::finite({-0.1, 1.2, -0.1})));
    CHECK(r.converged);
    CHECK(r.rms <= 1e-8);
    CHECK(r.iterations <= 10001);
}

TEST_CASE("fit report serializes") {
    Rng rng(5);
    std::vector<HeisPoint> pts;
    for (int i = 0; i < 60; ++i)
        pts.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), 0.0});
    const FitReport r = fit_spinal(pts);
    const nlohmann::json j = to_json(r);
    CHECK(j.contains("vertices"));
    CHECK(j.contains("rms"));
    CHECK(j.contains("max"));
    CHECK(j.contains("iterations"));
    CHECK(j.at("converged").is_boolean());
}

TEST_CASE("fit requires at least 12 points") {
    std::vector<HeisPoint> pts(11, HeisPoint{0.0, 0.0, 0.0});
    CHECK_THROWS_AS(fit_spinal(pts), std::invalid_argument);
}
