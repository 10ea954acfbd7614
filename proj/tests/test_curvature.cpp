#include <doctest.h>

#include <cmath>

#include "heis/bisector.hpp"
#include "heis/curvature.hpp"
#include "heis/errors.hpp"
#include "heis/rng.hpp"

using namespace heis;

namespace {

ScalarField plane_field() {
    return ScalarField::from_cubic(bisector_field({0.0, 0.0, -1.0}, {0.0, 0.0, 1.0}));
}

ScalarField s1_field() {
    return ScalarField::from_cubic(bisector_field({-1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}));
}

Poly random_cubic(Rng& rng) {
    Poly f;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c) f.set(a, b, c, rng.uniform(-1.0, 1.0));
    return f.scaled(1.0 / f.max_abs_coeff());
}

}  // namespace

TEST_CASE("horizontal gradient") {
    const ScalarField t = plane_field();
    const auto [xt, yt] = horizontal_gradient(t, {2.0, -1.5, 0.3});
    CHECK(xt == doctest::Approx(2.0 * -1.5).epsilon(1e-14));
    CHECK(yt == doctest::Approx(-2.0 * 2.0).epsilon(1e-14));

    // Xf = 3x^2 - y^2 + 1, Yf = 4xy - t for the planar-case cubic
    const ScalarField f = s1_field();
    Rng rng(71);
    for (int i = 0; i < 200; ++i) {
        const HeisPoint p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                          rng.uniform(-4.0, 4.0)};
        const auto [xf, yf] = horizontal_gradient(f, p);
        CHECK(xf == doctest::Approx(3.0 * p.x * p.x - p.y * p.y + 1.0).epsilon(1e-12));
        CHECK(yf == doctest::Approx(4.0 * p.x * p.y - p.t).epsilon(1e-12));
    }

    const ScalarField c = ScalarField::from_poly(Poly::constant(4.2));
    const auto [xc, yc] = horizontal_gradient(c, {1.0, 2.0, 3.0});
    CHECK(xc == 0.0);
    CHECK(yc == 0.0);
}

TEST_CASE("second horizontal derivatives do not commute") {
    const ScalarField f = s1_field();
    const HeisPoint p{0.7, -1.2, 2.0};
    CHECK(f.hxy(p) == doctest::Approx(2.0 * p.y).epsilon(1e-12));
    CHECK(f.hyx(p) == doctest::Approx(-2.0 * p.y).epsilon(1e-12));
    CHECK(f.hxx(p) == doctest::Approx(6.0 * p.x).epsilon(1e-12));
    CHECK(f.hyy(p) == doctest::Approx(6.0 * p.x).epsilon(1e-12));

    // [X,Y] = -4 T on any field
    Rng rng(40);
    for (int i = 0; i < 100; ++i) {
        const ScalarField g = ScalarField::from_poly(random_cubic(rng));
        const HeisPoint q{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                          rng.uniform(-2.0, 2.0)};
        CHECK(g.hxy(q) - g.hyx(q) == doctest::Approx(-4.0 * g.dt(q)).epsilon(1e-10));
    }
}

TEST_CASE("characteristic point test") {
    const ScalarField t = plane_field();
    CHECK(is_characteristic(t, {0.0, 0.0, 0.0}, 1e-8));
    CHECK(!is_characteristic(t, {0.01, 0.0, 0.0}, 1e-8));

    const ScalarField f = s1_field();
    CHECK(is_characteristic(f, {0.0, 1.0, 0.0}, 1e-8));
    CHECK(is_characteristic(f, {0.0, -1.0, 0.0}, 1e-8));
    // gradient (3, 1) at (1,1,3)
    CHECK(!is_characteristic(f, {1.0, 1.0, 3.0}, 1e-8));
}

TEST_CASE("mean curvature values") {
    const ScalarField t = plane_field();
    CHECK(mean_curvature(t, {1.0, 2.0, 0.0}) == doctest::Approx(0.0).scale(1.0));

    const ScalarField f = s1_field();
    CHECK(mean_curvature(f, {1.0, 1.0, 3.0}) ==
          doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-12));

    // the vertical axis lies on the surface and is flat there
    for (double tt : {-2.0, 0.5, 3.0})
        CHECK(std::abs(mean_curvature(f, {0.0, 0.0, tt})) <= 1e-12);

    CHECK_THROWS_AS(mean_curvature(f, {0.0, 1.0, 0.0}), CharacteristicPoint);
    CHECK_THROWS_AS(mean_curvature(t, {0.0, 0.0, 0.0}), CharacteristicPoint);
}

TEST_CASE("divergence-of-normal route agrees with the quotient formula") {
    const ScalarField t = plane_field();
    CHECK(std::abs(definitional_curvature(t, {1.0, 2.0, 0.0})) <= 1e-8);

    const ScalarField f = s1_field();
    CHECK(definitional_curvature(f, {1.0, 1.0, 3.0}) ==
          doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-5));

    Rng rng(123);
    for (int trial = 0; trial < 10; ++trial) {
        const ScalarField g = ScalarField::from_poly(random_cubic(rng));
        int done = 0;
        while (done < 100) {
            const HeisPoint p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                              rng.uniform(-2.0, 2.0)};
            const auto [a, b] = horizontal_gradient(g, p);
            if (std::hypot(a, b) < 1e-3) continue;
            ++done;
            CHECK(std::abs(definitional_curvature(g, p) - mean_curvature(g, p)) <= 1e-5);
        }
    }
}

TEST_CASE("function-backed fields match polynomial fields") {
    Rng rng(321);
    const Poly f = random_cubic(rng);
    const ScalarField analytic = ScalarField::from_poly(f);
    const ScalarField numeric = ScalarField::from_function(
        [f](double x, double y, double t) { return f.eval(x, y, t); });
    CHECK(!numeric.polynomial());

    for (int i = 0; i < 300; ++i) {
        const HeisPoint p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                          rng.uniform(-2.0, 2.0)};
        CHECK(std::abs(analytic.dx(p) - numeric.dx(p)) <= 1e-5);
        CHECK(std::abs(analytic.dy(p) - numeric.dy(p)) <= 1e-5);
        CHECK(std::abs(analytic.dt(p) - numeric.dt(p)) <= 1e-5);
        CHECK(std::abs(analytic.hx(p) - numeric.hx(p)) <= 1e-4);
        CHECK(std::abs(analytic.hxy(p) - numeric.hxy(p)) <= 1e-4);
        CHECK(std::abs(analytic.hyx(p) - numeric.hyx(p)) <= 1e-4);
    }
}

TEST_CASE("closed form for the model surface") {
    CHECK(s1_curvature(1.0, 1.0) == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-15));
    CHECK(s1_curvature(10.0, 10.0) == doctest::Approx(0.106066).epsilon(1e-4));
    CHECK(s1_curvature(0.3, 0.0) == 0.0);
    CHECK(s1_curvature(0.0, 0.5) == 0.0);
    CHECK_THROWS_AS(s1_curvature(0.0, 1.0), CharacteristicPoint);
    CHECK_THROWS_AS(s1_curvature(0.0, -1.0), CharacteristicPoint);

    // matches the quotient formula on surface points, including y < 0
    const ScalarField f = s1_field();
    Rng rng(64);
    int done = 0;
    while (done < 2000) {
        const double x = rng.uniform(-3.0, 3.0), y = rng.uniform(-3.0, 3.0);
        if (std::abs(y) < 1e-12) continue;
        const HeisPoint p{x, y, (x / y) * (x * x + y * y + 1.0)};
        const auto [a, b] = horizontal_gradient(f, p);
        if (std::hypot(a, b) < 1e-6) continue;
        ++done;
        const double closed = s1_curvature(x, y);
        const double quotient = mean_curvature(f, p);
        CHECK(std::abs(quotient - closed) <=
              1e-8 * std::max(std::abs(closed), 1e-300));
    }

    // directional limit 3/2 along y = 1; identically 0 along the y-axis
    double prev = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const double v = s1_curvature(std::pow(2.0, -k), 1.0);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(std::abs(prev - 1.5) <= 1e-4);
    CHECK(s1_curvature(0.0, 1.0 + 1e-9) == 0.0);
}

TEST_CASE("characteristic locus of the model surface") {
    const auto locus = characteristic_locus_s1();
    REQUIRE(locus.size() == 2);
    CHECK(locus[0].x == 0.0);
    CHECK(locus[0].y == 1.0);
    CHECK(locus[0].t == 0.0);
    CHECK(locus[1].y == -1.0);

    const ScalarField f = s1_field();
    for (const HeisPoint& p : locus) {
        CHECK(std::abs(f.value(p)) <= 1e-12);
        CHECK(is_characteristic(f, p, characteristic_tolerance(f, p)));
    }
}

TEST_CASE("vertical-case bisectors are horizontally minimal") {
    const ScalarField t = plane_field();
    Rng rng(31);
    for (int i = 0; i < 2000; ++i) {
        HeisPoint p{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0), 0.0};
        if (std::hypot(p.x, p.y) <= 1e-3) continue;
        CHECK(std::abs(mean_curvature(t, p)) <= 1e-9);
    }
}
