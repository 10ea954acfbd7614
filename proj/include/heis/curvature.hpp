#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "heis/bisector.hpp"
#include "heis/point.hpp"
#include "heis/poly.hpp"

namespace heis {

/// Scalar function on the Heisenberg group together with its first and second
/// horizontal derivatives.  Polynomial-backed fields differentiate symbolically
/// (the horizontal derivative polynomials are composed once, so XY != YX comes
/// out of the algebra); function-backed fields use nested central differences.
class ScalarField {
public:
    static ScalarField from_poly(const Poly& f);
    static ScalarField from_cubic(const CubicField& f) { return from_poly(f.f); }
    static ScalarField from_function(std::function<double(double, double, double)> f,
                                     double step = 1e-5);

    bool polynomial() const { return poly_.has_value(); }
    double step() const { return h_; }

    double value(const HeisPoint& p) const;
    double dx(const HeisPoint& p) const;
    double dy(const HeisPoint& p) const;
    double dt(const HeisPoint& p) const;

    /// First horizontal derivatives XF, YF.
    double hx(const HeisPoint& p) const;
    double hy(const HeisPoint& p) const;

    /// Composed second horizontal derivatives XXF, XYF, YXF, YYF.
    double hxx(const HeisPoint& p) const;
    double hxy(const HeisPoint& p) const;
    double hyx(const HeisPoint& p) const;
    double hyy(const HeisPoint& p) const;

private:
    ScalarField() = default;

    struct Polys {
        Poly f, fx, fy, ft, xf, yf, xxf, xyf, yxf, yyf;
    };
    std::optional<Polys> poly_;
    std::function<double(double, double, double)> fn_;
    double h_ = 1e-5;
};

/// (XF, YF) = (F_x + 2y F_t, F_y - 2x F_t) at p.
std::pair<double, double> horizontal_gradient(const ScalarField& f, const HeisPoint& p);

/// True iff the horizontal gradient norm is <= tol.  Meaningful for points on
/// the surface F = 0.
bool is_characteristic(const ScalarField& f, const HeisPoint& p, double tol);

/// Default characteristic tolerance 1e-8 * (1 + |coordinate gradient|).
double characteristic_tolerance(const ScalarField& f, const HeisPoint& p);

/// Horizontal mean curvature of the level surface through p, in quotient form:
/// 2H = [(YF)^2 XXF + (XF)^2 YYF - XF YF (XYF + YXF)] / |grad_h F|^3.
/// Throws CharacteristicPoint when the horizontal gradient is below tolerance.
double mean_curvature(const ScalarField& f, const HeisPoint& p);

/// Same quantity from the definition 2H = X(n1) + Y(n2), differentiating the
/// unit horizontal normal components by central differences along X and Y.
double definitional_curvature(const ScalarField& f, const HeisPoint& p);

/// Closed-form curvature of the surface x(x^2+y^2+1) - yt = 0 as a function of
/// (x, y): 3x|y| / sqrt(y^2 (3x^2-y^2+1)^2 + x^2 (3y^2-x^2-1)^2), with the
/// convention that points with y = 0 (the vertical axis of the surface) give 0.
/// Throws CharacteristicPoint at (0, +-1).
double s1_curvature(double x, double y);

/// The characteristic locus of that surface: exactly {(0,1,0), (0,-1,0)},
/// obtained by eliminating the locus equations against the surface equation.
std::vector<HeisPoint> characteristic_locus_s1();

}  // namespace heis
