#pragma once

#include <array>

#include "heis/point.hpp"

namespace heis {

/// Dense real polynomial in (x, y, t), total degree <= 4.  Degree 4 only shows
/// up transiently when assembling quartic gauge expressions; bisector fields
/// themselves are cubic.
class Poly {
public:
    static constexpr int kMaxDegree = 4;

    Poly() : c_{} {}

    static Poly constant(double v);
    static Poly monomial(int a, int b, int c, double coeff = 1.0);

    double coeff(int a, int b, int c) const { return c_[a][b][c]; }
    void set(int a, int b, int c, double v);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;  // throws std::logic_error if degree would exceed 4
    Poly scaled(double k) const;

    Poly dx() const;
    Poly dy() const;
    Poly dt() const;

    /// Left-invariant horizontal derivatives X = d/dx + 2y d/dt, Y = d/dy - 2x d/dt.
    Poly horizontal_x() const;
    Poly horizontal_y() const;

    double eval(double x, double y, double t) const;
    double eval(const HeisPoint& p) const { return eval(p.x, p.y, p.t); }

    int degree() const;
    double max_abs_coeff() const;

private:
    std::array<std::array<std::array<double, kMaxDegree + 1>, kMaxDegree + 1>,
               kMaxDegree + 1>
        c_;
};

}  // namespace heis
