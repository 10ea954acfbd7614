#include "heis/curvature.hpp"

#include <cmath>

#include "heis/errors.hpp"

namespace heis {

ScalarField ScalarField::from_poly(const Poly& f) {
    ScalarField s;
    Polys p;
    p.f = f;
    p.fx = f.dx();
    p.fy = f.dy();
    p.ft = f.dt();
    p.xf = f.horizontal_x();
    p.yf = f.horizontal_y();
    p.xxf = p.xf.horizontal_x();
    p.xyf = p.yf.horizontal_x();
    p.yxf = p.xf.horizontal_y();
    p.yyf = p.yf.horizontal_y();
    s.poly_ = p;
    return s;
}

ScalarField ScalarField::from_function(std::function<double(double, double, double)> f,
                                       double step) {
    ScalarField s;
    s.fn_ = std::move(f);
    s.h_ = step;
    return s;
}

double ScalarField::value(const HeisPoint& p) const {
    return poly_ ? poly_->f.eval(p) : fn_(p.x, p.y, p.t);
}

double ScalarField::dx(const HeisPoint& p) const {
    if (poly_) return poly_->fx.eval(p);
    const double h = h_ * (1.0 + std::abs(p.x));
    return (fn_(p.x + h, p.y, p.t) - fn_(p.x - h, p.y, p.t)) / (2.0 * h);
}

double ScalarField::dy(const HeisPoint& p) const {
    if (poly_) return poly_->fy.eval(p);
    const double h = h_ * (1.0 + std::abs(p.y));
    return (fn_(p.x, p.y + h, p.t) - fn_(p.x, p.y - h, p.t)) / (2.0 * h);
}

double ScalarField::dt(const HeisPoint& p) const {
    if (poly_) return poly_->ft.eval(p);
    const double h = h_ * (1.0 + std::abs(p.t));
    return (fn_(p.x, p.y, p.t + h) - fn_(p.x, p.y, p.t - h)) / (2.0 * h);
}

double ScalarField::hx(const HeisPoint& p) const {
    if (poly_) return poly_->xf.eval(p);
    return dx(p) + 2.0 * p.y * dt(p);
}

double ScalarField::hy(const HeisPoint& p) const {
    if (poly_) return poly_->yf.eval(p);
    return dy(p) - 2.0 * p.x * dt(p);
}

namespace {

// Central difference of g along the horizontal field X (resp. Y) at p.  Used
// for the nested second derivatives of function-backed fields; the step is
// widened to balance truncation against the noise of the inner differences.
double along_x(const std::function<double(const HeisPoint&)>& g, const HeisPoint& p,
               double h) {
    const double hx = h * (1.0 + std::abs(p.x));
    const double ht = h * (1.0 + std::abs(p.t));
    const double gx =
        (g({p.x + hx, p.y, p.t}) - g({p.x - hx, p.y, p.t})) / (2.0 * hx);
    const double gt =
        (g({p.x, p.y, p.t + ht}) - g({p.x, p.y, p.t - ht})) / (2.0 * ht);
    return gx + 2.0 * p.y * gt;
}

double along_y(const std::function<double(const HeisPoint&)>& g, const HeisPoint& p,
               double h) {
    const double hy = h * (1.0 + std::abs(p.y));
    const double ht = h * (1.0 + std::abs(p.t));
    const double gy =
        (g({p.x, p.y + hy, p.t}) - g({p.x, p.y - hy, p.t})) / (2.0 * hy);
    const double gt =
        (g({p.x, p.y, p.t + ht}) - g({p.x, p.y, p.t - ht})) / (2.0 * ht);
    return gy - 2.0 * p.x * gt;
}

}  // namespace

double ScalarField::hxx(const HeisPoint& p) const {
    if (poly_) return poly_->xxf.eval(p);
    const double h = std::max(h_, 1e-4);
    return along_x([this](const HeisPoint& q) { return hx(q); }, p, h);
}

double ScalarField::hxy(const HeisPoint& p) const {
    if (poly_) return poly_->xyf.eval(p);
    const double h = std::max(h_, 1e-4);
    return along_x([this](const HeisPoint& q) { return hy(q); }, p, h);
}

double ScalarField::hyx(const HeisPoint& p) const {
    if (poly_) return poly_->yxf.eval(p);
    const double h = std::max(h_, 1e-4);
    return along_y([this](const HeisPoint& q) { return hx(q); }, p, h);
}

double ScalarField::hyy(const HeisPoint& p) const {
    if (poly_) return poly_->yyf.eval(p);
    const double h = std::max(h_, 1e-4);
    return along_y([this](const HeisPoint& q) { return hy(q); }, p, h);
}

std::pair<double, double> horizontal_gradient(const ScalarField& f, const HeisPoint& p) {
    return {f.hx(p), f.hy(p)};
}

bool is_characteristic(const ScalarField& f, const HeisPoint& p, double tol) {
    const auto [a, b] = horizontal_gradient(f, p);
    return std::hypot(a, b) <= tol;
}

double characteristic_tolerance(const ScalarField& f, const HeisPoint& p) {
    const double scale = std::sqrt(f.dx(p) * f.dx(p) + f.dy(p) * f.dy(p) + f.dt(p) * f.dt(p));
    return 1e-8 * (1.0 + scale);
}

double mean_curvature(const ScalarField& f, const HeisPoint& p) {
    const auto [xf, yf] = horizontal_gradient(f, p);
    const double m = std::hypot(xf, yf);
    if (m <= characteristic_tolerance(f, p))
        throw CharacteristicPoint("horizontal gradient vanishes; curvature undefined");
    const double num = yf * yf * f.hxx(p) + xf * xf * f.hyy(p) -
                       xf * yf * (f.hxy(p) + f.hyx(p));
    return 0.5 * num / (m * m * m);
}

double definitional_curvature(const ScalarField& f, const HeisPoint& p) {
    const auto [xf, yf] = horizontal_gradient(f, p);
    if (std::hypot(xf, yf) <= characteristic_tolerance(f, p))
        throw CharacteristicPoint("horizontal gradient vanishes; curvature undefined");

    auto n1 = [&f](const HeisPoint& q) {
        const auto [a, b] = horizontal_gradient(f, q);
        return a / std::hypot(a, b);
    };
    auto n2 = [&f](const HeisPoint& q) {
        const auto [a, b] = horizontal_gradient(f, q);
        return b / std::hypot(a, b);
    };
    // Truncation dominates far above the roundoff floor here, so the step can
    // sit well below the usual central-difference sweet spot.
    const double h = 1e-6;
    return 0.5 * (along_x(n1, p, h) + along_y(n2, p, h));
}

double s1_curvature(double x, double y) {
    if (y == 0.0) return 0.0;  // surface points with y = 0 sit on the vertical axis
    const double a = 3.0 * x * x - y * y + 1.0;
    const double b = 3.0 * y * y - x * x - 1.0;
    const double den2 = y * y * a * a + x * x * b * b;
    if (den2 == 0.0)
        throw CharacteristicPoint("curvature of the model surface diverges at (0,+-1,0)");
    return 3.0 * x * std::abs(y) / std::sqrt(den2);
}

std::vector<HeisPoint> characteristic_locus_s1() {
    // Locus equations y^2 - 3x^2 = 1, t = 4xy meet f = 0 in
    // x (4x^2 + 1 - 4y^2) = 0.  The second factor needs 4x^2 - 4y^2 = -1,
    // which against y^2 = 3x^2 + 1 forces 8x^2 = -3: no real solutions.
    // The x = 0 branch gives y^2 = 1 and t = 0.
    std::vector<HeisPoint> locus;
    const double x = 0.0;
    for (double y : {std::sqrt(1.0 + 3.0 * x * x), -std::sqrt(1.0 + 3.0 * x * x)})
        locus.push_back({x, y, 4.0 * x * y});
    return locus;
}

}  // namespace heis
