#include <doctest.h>

#include <cmath>
#include <sstream>

#include "heis/io.hpp"
#include "heis/point.hpp"
#include "heis/rng.hpp"

using namespace heis;

namespace {
HeisPoint random_point(Rng& rng, double r) {
    return {rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r * r, r * r)};
}
}  // namespace

TEST_CASE("group law examples") {
    // (1,0)*(i,0) = (1+i, -2)
    const HeisPoint p = mul({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
    CHECK(p.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.t == doctest::Approx(-2.0).epsilon(1e-15));

    const HeisPoint q{0.3, -0.7, 2.0};
    const HeisPoint qe = mul(q, HeisPoint{});
    CHECK(qe.x == q.x);
    CHECK(qe.y == q.y);
    CHECK(qe.t == q.t);

    const HeisPoint c = mul({0.0, 0.0, 1.5}, {0.0, 0.0, -0.25});
    CHECK(c.x == 0.0);
    CHECK(c.t == doctest::Approx(1.25));
}

TEST_CASE("inverse examples") {
    CHECK(inverse({0.0, 0.0, 5.0}).t == -5.0);
    const HeisPoint p = inverse({2.0, 0.0, 3.0});
    CHECK(p.x == -2.0);
    CHECK(p.t == -3.0);

    const HeisPoint w{1.0, 1.0, -2.0};
    const HeisPoint e = mul(w, inverse(w));
    CHECK(e.x == 0.0);
    CHECK(e.y == 0.0);
    CHECK(e.t == 0.0);
}

TEST_CASE("gauge examples") {
    CHECK(gauge({0.0, 0.0, 4.0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(gauge({3.0, 0.0, 0.0}) == doctest::Approx(3.0).epsilon(1e-15));
    // |(1+i, 2)|: ||z|^2 - it| = |2 - 2i| = 2 sqrt(2)
    CHECK(gauge({1.0, 1.0, 2.0}) ==
          doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-15));
    CHECK(gauge(HeisPoint{}) == 0.0);
}

TEST_CASE("distance examples") {
    CHECK(dist({0.0, 0.0, -1.0}, {0.0, 0.0, 1.0}) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    const HeisPoint p{0.4, -1.2, 0.9};
    CHECK(dist(p, p) == 0.0);
    CHECK(dist({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}) ==
          doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-15));
}

TEST_CASE("group axioms on random triples") {
    Rng rng(2024);
    for (int i = 0; i < 10000; ++i) {
        const HeisPoint p = random_point(rng, 10.0);
        const HeisPoint q = random_point(rng, 10.0);
        const HeisPoint r = random_point(rng, 10.0);

        const HeisPoint ab = mul(mul(p, q), r);
        const HeisPoint ba = mul(p, mul(q, r));
        const double scale = 1.0 + std::abs(ab.t);
        CHECK(std::abs(ab.x - ba.x) <= 1e-12 * scale);
        CHECK(std::abs(ab.y - ba.y) <= 1e-12 * scale);
        CHECK(std::abs(ab.t - ba.t) <= 1e-12 * scale);

        CHECK(gauge(mul(p, inverse(p))) == 0.0);
    }
}

TEST_CASE("metric axioms on random triples") {
    Rng rng(55);
    for (int i = 0; i < 10000; ++i) {
        const HeisPoint p = random_point(rng, 10.0);
        const HeisPoint q = random_point(rng, 10.0);
        const HeisPoint r = random_point(rng, 10.0);

        const double dpq = dist(p, q);
        CHECK(dist(q, p) == dpq);  // exact symmetry
        CHECK(dpq >= 0.0);
        CHECK(dist(p, r) <= dpq + dist(q, r) + 1e-12);

        const double moved = dist(mul(r, p), mul(r, q));
        if (dpq > 1e-9) CHECK(std::abs(moved - dpq) <= 1e-10 * dpq);
    }
}

TEST_CASE("gauge homogeneity under dilation") {
    Rng rng(77);
    for (int i = 0; i < 10000; ++i) {
        const HeisPoint p = random_point(rng, 5.0);
        const double d = std::exp(rng.uniform(-2.0, 2.0));
        const double g = gauge(p);
        if (g < 1e-9) continue;
        const double gd = gauge({d * p.x, d * p.y, d * d * p.t});
        CHECK(std::abs(gd - d * g) <= 1e-12 * d * g);
    }
}

TEST_CASE("point CSV round trip") {
    Rng rng(9);
    std::vector<HeisPoint> points;
    for (int i = 0; i < 64; ++i) points.push_back(random_point(rng, 100.0));

    std::stringstream ss;
    write_points_csv(ss, points);
    const std::vector<HeisPoint> back = read_points_csv(ss);
    REQUIRE(back.size() == points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(back[i].x == points[i].x);  // 17 significant digits round-trip exactly
        CHECK(back[i].y == points[i].y);
        CHECK(back[i].t == points[i].t);
    }

    std::stringstream bad("x,y,t\n1,2\n");
    CHECK_THROWS_AS(read_points_csv(bad), std::invalid_argument);
    std::stringstream nan_row("x,y,t\nnan,0,0\n");
    CHECK_THROWS_AS(read_points_csv(nan_row), std::invalid_argument);
}
