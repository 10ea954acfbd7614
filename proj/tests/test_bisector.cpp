#include <doctest.h>

#include <cmath>

#include "heis/bisector.hpp"
#include "heis/errors.hpp"
#include "heis/rng.hpp"
#include "heis/similarity.hpp"

using namespace heis;

namespace {
HeisPoint random_point(Rng& rng, double r) {
    return {rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r * r, r * r)};
}
}  // namespace

TEST_CASE("vertical canonical pair gives the plane t = 0") {
    const CubicField f = bisector_field({0.0, 0.0, -1.0}, {0.0, 0.0, 1.0});
    CHECK(f.f.coeff(0, 0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c)
                if (!(a == 0 && b == 0 && c == 1))
                    CHECK(std::abs(f.f.coeff(a, b, c)) <= 1e-12);
}

TEST_CASE("planar canonical pair matches x(x^2+y^2+1) - yt") {
    const CubicField f = bisector_field({-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    CHECK(f.f.coeff(3, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.f.coeff(1, 2, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.f.coeff(1, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.f.coeff(0, 1, 1) == doctest::Approx(-1.0).epsilon(1e-14));
    double off = 0.0;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c) {
                if ((a == 3 && b == 0 && c == 0) || (a == 1 && b == 2 && c == 0) ||
                    (a == 1 && b == 0 && c == 0) || (a == 0 && b == 1 && c == 1))
                    continue;
                off = std::max(off, std::abs(f.f.coeff(a, b, c)));
            }
    CHECK(off <= 1e-12);
}

TEST_CASE("residual examples and focus orientation") {
    const CubicField f = bisector_field({-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    CHECK(residual(f, {0.0, 0.0, 0.0}) == 0.0);
    CHECK(residual(f, f.focus1) < 0.0);
    CHECK(residual(f, f.focus2) > 0.0);

    Rng rng(17);
    const CubicField swapped = bisector_field({1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0});
    for (int i = 0; i < 200; ++i) {
        const HeisPoint p = random_point(rng, 3.0);
        CHECK(residual(swapped, p) ==
              doctest::Approx(-residual(f, p)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("sign of the field orders the two distances") {
    Rng rng(23);
    for (int i = 0; i < 100; ++i) {
        const HeisPoint p1 = random_point(rng, 3.0);
        HeisPoint p2 = random_point(rng, 3.0);
        if (gauge(mul(inverse(p1), p2)) < 1e-3) p2 = mul(p1, {1.0, 0.0, 0.0});
        const CubicField f = bisector_field(p1, p2);
        for (int k = 0; k < 50; ++k) {
            const HeisPoint p = random_point(rng, 4.0);
            const double v = residual(f, p);
            const double gap = dist(p1, p) - dist(p2, p);
            if (std::abs(gap) < 1e-9) continue;
            CHECK((v < 0.0) == (gap < 0.0));
        }
    }
}

TEST_CASE("no quartic monomial survives on random pairs") {
    Rng rng(29);
    for (int i = 0; i < 1000; ++i) {
        const HeisPoint p1 = random_point(rng, 5.0);
        HeisPoint p2 = random_point(rng, 5.0);
        if (gauge(mul(inverse(p1), p2)) < 1e-3) p2 = mul(p1, {0.0, 1.0, 0.0});
        const CubicField f = bisector_field(p1, p2);
        CHECK(f.f.degree() <= 3);
        double deg4 = 0.0;
        for (int a = 0; a <= 4; ++a)
            for (int b = 0; a + b <= 4; ++b)
                for (int c = 0; a + b + c <= 4; ++c)
                    if (a + b + c == 4) deg4 = std::max(deg4, std::abs(f.f.coeff(a, b, c)));
        CHECK(deg4 <= 1e-9);  // identically zero in exact arithmetic
    }
}

TEST_CASE("field equivariance under a similarity, spot check") {
    Rng rng(37);
    const Similarity g = compose(
        Similarity::translate({0.4, -0.3, 1.1}),
        compose(Similarity::rotate(0.7), Similarity::dilate(1.6)));
    const HeisPoint p1{-1.0, 0.0, 0.0}, p2{1.0, 0.0, 0.0};
    const CubicField f = bisector_field(p1, p2);
    const CubicField fg = bisector_field(apply(g, p1), apply(g, p2));
    const Box box{-3.0, 3.0, -3.0, 3.0, -6.0, 6.0};
    for (const HeisPoint& p : sample_bisector(p1, p2, box, 1000, 5)) {
        // points of the zero set map to the transformed zero set
        const HeisPoint q = apply(g, p);
        const double d = std::abs(dist(apply(g, p1), q) - dist(apply(g, p2), q));
        CHECK(d <= 1e-8);
        CHECK(std::abs(residual(fg, q)) <= 1e-7);
    }
}

TEST_CASE("degenerate pair is rejected") {
    const HeisPoint p{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(bisector_field(p, p), DegeneratePair);
    // group-offset of gauge 1e-10 sits below the scale-aware tolerance
    CHECK_THROWS_AS(bisector_field(p, mul(p, {1e-10, 0.0, 0.0})), DegeneratePair);
}

TEST_CASE("sampler hits the plane for the vertical pair") {
    const Box box{-1.0, 1.0, -1.0, 1.0, -1.0, 1.0};
    const auto pts = sample_bisector({0.0, 0.0, -1.0}, {0.0, 0.0, 1.0}, box, 100, 7);
    REQUIRE(pts.size() >= 100);
    for (const HeisPoint& p : pts) CHECK(std::abs(p.t) <= 1e-9);
}

TEST_CASE("sampler satisfies the metric equidistance, not just the polynomial") {
    const Box box{-3.0, 3.0, -3.0, 3.0, -3.0, 3.0};
    const HeisPoint p1{-1.0, 0.0, 0.0}, p2{1.0, 0.0, 0.0};
    const CubicField f = bisector_field(p1, p2);
    const auto pts = sample_bisector(p1, p2, box, 10000, 11);
    REQUIRE(pts.size() >= 10000);
    for (const HeisPoint& p : pts) {
        CHECK(std::abs(residual(f, p)) <= 1e-9);
        CHECK(std::abs(dist(p1, p) - dist(p2, p)) <= 1e-9);
    }
}

TEST_CASE("sampler is deterministic for a fixed seed") {
    const Box box{-2.0, 2.0, -2.0, 2.0, -4.0, 4.0};
    const HeisPoint p1{0.0, 0.0, 0.0}, p2{1.0, 0.0, 1.0};
    const auto a = sample_bisector(p1, p2, box, 500, 12345);
    const auto b = sample_bisector(p1, p2, box, 500, 12345);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
        CHECK(a[i].t == b[i].t);
    }
    const auto c = sample_bisector(p1, p2, box, 500, 54321);
    CHECK(c[0].x != a[0].x);
}

TEST_CASE("sampler reports an empty intersection") {
    // the plane t = 0 misses a box with t in [1, 2]
    const Box box{-1.0, 1.0, -1.0, 1.0, 1.0, 2.0};
    CHECK_THROWS_AS(sample_bisector({0.0, 0.0, -1.0}, {0.0, 0.0, 1.0}, box, 10, 3),
                    EmptyIntersection);
}

TEST_CASE("cubic JSON round trip") {
    const CubicField f = bisector_field({0.3, -0.4, 0.2}, {-0.9, 0.1, 1.4});
    const Poly back = poly_from_json(poly_to_json(f.f));
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c)
                CHECK(back.coeff(a, b, c) == f.f.coeff(a, b, c));
    CHECK_THROWS(poly_from_json(nlohmann::json{{"bogus", 1.0}}));
}
