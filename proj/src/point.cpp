#include "heis/point.hpp"

namespace heis {

HeisPoint mul(const HeisPoint& p, const HeisPoint& q) {
    // 2 Im(z_p conj(z_q)) = 2 (y_p x_q - x_p y_q)
    return {p.x + q.x, p.y + q.y, p.t + q.t + 2.0 * (p.y * q.x - p.x * q.y)};
}

HeisPoint inverse(const HeisPoint& p) {
    return {-p.x, -p.y, -p.t};
}

double gauge(const HeisPoint& p) {
    const double r2 = p.x * p.x + p.y * p.y;
    return std::pow(r2 * r2 + p.t * p.t, 0.25);
}

double dist(const HeisPoint& p, const HeisPoint& q) {
    return gauge(mul(inverse(p), q));
}

}  // namespace heis
