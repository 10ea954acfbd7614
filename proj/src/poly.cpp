#include "heis/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace heis {

namespace {
void check_exponents(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0 || a + b + c > Poly::kMaxDegree)
        throw std::logic_error("polynomial exponent out of range");
}
}  // namespace

Poly Poly::constant(double v) {
    Poly p;
    p.c_[0][0][0] = v;
    return p;
}

Poly Poly::monomial(int a, int b, int c, double coeff) {
    check_exponents(a, b, c);
    Poly p;
    p.c_[a][b][c] = coeff;
    return p;
}

void Poly::set(int a, int b, int c, double v) {
    check_exponents(a, b, c);
    c_[a][b][c] = v;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    for (int a = 0; a <= kMaxDegree; ++a)
        for (int b = 0; a + b <= kMaxDegree; ++b)
            for (int c = 0; a + b + c <= kMaxDegree; ++c)
                r.c_[a][b][c] = c_[a][b][c] + o.c_[a][b][c];
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r;
    for (int a = 0; a <= kMaxDegree; ++a)
        for (int b = 0; a + b <= kMaxDegree; ++b)
            for (int c = 0; a + b + c <= kMaxDegree; ++c)
                r.c_[a][b][c] = c_[a][b][c] - o.c_[a][b][c];
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    if (degree() + o.degree() > kMaxDegree)
        throw std::logic_error("polynomial product exceeds degree 4");
    Poly r;
    for (int a = 0; a <= kMaxDegree; ++a)
        for (int b = 0; a + b <= kMaxDegree; ++b)
            for (int c = 0; a + b + c <= kMaxDegree; ++c) {
                double lhs = c_[a][b][c];
                if (lhs == 0.0) continue;
                for (int d = 0; a + d <= kMaxDegree; ++d)
                    for (int e = 0; a + b + d + e <= kMaxDegree; ++e)
                        for (int f = 0; a + b + c + d + e + f <= kMaxDegree; ++f) {
                            double rhs = o.c_[d][e][f];
                            if (rhs == 0.0) continue;
                            r.c_[a + d][b + e][c + f] += lhs * rhs;
                        }
            }
    return r;
}

Poly Poly::scaled(double k) const {
    Poly r;
    for (int a = 0; a <= kMaxDegree; ++a)
        for (int b = 0; a + b <= kMaxDegree; ++b)
            for (int c = 0; a + b + c <= kMaxDegree; ++c)
                r.c_[a][b][c] = k * c_[a][b][c];
    return r;
}

Poly Poly::dx() const {
    Poly r;
    for (int a = 1; a <= kMaxDegree; ++a)
        for (int b = 0; a + b <= kMaxDegree; ++b)
            for (int c = 0; a + b + c <= kMaxDegree; ++c)
                r.c_[a - 1][b][c] = a * c_[a][b][c];
    return r;
}

Poly Poly::dy() const {
    Poly r;
    for (int a = 0; a <= kMaxDegree; ++a)
        for (int b = 1; a + b <= kMaxDegree; ++b)
            for (int c = 0; a + b + c <= kMaxDegree; ++c)
                r.c_[a][b - 1][c] = b * c_[a][b][c];
    return r;
}

Poly Poly::dt() const {
    Poly r;
    for (int a = 0; a <= kMaxDegree; ++a)
        for (int b = 0; a + b <= kMaxDegree; ++b)
            for (int c = 1; a + b + c <= kMaxDegree; ++c)
                r.c_[a][b][c - 1] = c * c_[a][b][c];
    return r;
}

Poly Poly::horizontal_x() const {
    return dx() + Poly::monomial(0, 1, 0, 2.0) * dt();
}

Poly Poly::horizontal_y() const {
    return dy() - Poly::monomial(1, 0, 0, 2.0) * dt();
}

double Poly::eval(double x, double y, double t) const {
    double xp[kMaxDegree + 1], yp[kMaxDegree + 1], tp[kMaxDegree + 1];
    xp[0] = yp[0] = tp[0] = 1.0;
    for (int i = 1; i <= kMaxDegree; ++i) {
        xp[i] = xp[i - 1] * x;
        yp[i] = yp[i - 1] * y;
        tp[i] = tp[i - 1] * t;
    }
    double sum = 0.0;
    for (int a = 0; a <= kMaxDegree; ++a)
        for (int b = 0; a + b <= kMaxDegree; ++b)
            for (int c = 0; a + b + c <= kMaxDegree; ++c) {
                double v = c_[a][b][c];
                if (v != 0.0) sum += v * xp[a] * yp[b] * tp[c];
            }
    return sum;
}

int Poly::degree() const {
    int deg = 0;
    for (int a = 0; a <= kMaxDegree; ++a)
        for (int b = 0; a + b <= kMaxDegree; ++b)
            for (int c = 0; a + b + c <= kMaxDegree; ++c)
                if (c_[a][b][c] != 0.0 && a + b + c > deg) deg = a + b + c;
    return deg;
}

double Poly::max_abs_coeff() const {
    double m = 0.0;
    for (int a = 0; a <= kMaxDegree; ++a)
        for (int b = 0; a + b <= kMaxDegree; ++b)
            for (int c = 0; a + b + c <= kMaxDegree; ++c)
                m = std::max(m, std::abs(c_[a][b][c]));
    return m;
}

}  // namespace heis
