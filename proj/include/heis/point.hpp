#pragma once

#include <cmath>
#include <complex>

namespace heis {

using Complex = std::complex<double>;

/// A point (z, t) of the Heisenberg group, stored flat as (x, y, t) with z = x + iy.
struct HeisPoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    Complex z() const { return {x, y}; }
    bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(t); }
};

inline HeisPoint point(Complex z, double t) { return {z.real(), z.imag(), t}; }

/// Group law (z,t)*(w,s) = (z+w, t+s+2 Im(z conj(w))).
HeisPoint mul(const HeisPoint& p, const HeisPoint& q);

/// Group inverse (-z, -t).
HeisPoint inverse(const HeisPoint& p);

/// Koranyi gauge (|z|^4 + t^2)^(1/4); zero only at the identity.
double gauge(const HeisPoint& p);

/// Koranyi-Cygan distance gauge(p^{-1} * q).  Left invariant, symmetric.
double dist(const HeisPoint& p, const HeisPoint& q);

/// Axis-aligned box [xmin,xmax] x [ymin,ymax] x [tmin,tmax].
struct Box {
    double xmin, xmax, ymin, ymax, tmin, tmax;

    static Box centered(double hx, double hy, double ht) {
        return {-hx, hx, -hy, hy, -ht, ht};
    }
    double diam_x() const { return xmax - xmin; }
    double diam_y() const { return ymax - ymin; }
    double diam_t() const { return tmax - tmin; }
};

}  // namespace heis
