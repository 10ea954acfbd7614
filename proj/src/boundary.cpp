#include "heis/boundary.hpp"

#include <cmath>

#include "heis/errors.hpp"

namespace heis {

Complex hermitian(const C21Vector& z, const C21Vector& w) {
    return z[0] * std::conj(w[2]) + z[1] * std::conj(w[1]) + z[2] * std::conj(w[0]);
}

namespace {

double sq_norm(const C21Vector& z) {
    return std::norm(z[0]) + std::norm(z[1]) + std::norm(z[2]);
}

}  // namespace

VectorType classify_vector(const C21Vector& z) {
    const double n2 = sq_norm(z);
    if (n2 == 0.0) throw ZeroVector("cannot classify the zero vector");
    const double q = hermitian(z, z).real();
    const double tol = 1e-10 * n2;
    if (q < -tol) return VectorType::Negative;
    if (q > tol) return VectorType::Positive;
    return VectorType::Null;
}

C21Vector lift_boundary(const BoundaryPoint& b) {
    if (b.infinite) return {{Complex(1.0), Complex(0.0), Complex(0.0)}};
    const Complex z = b.p.z();
    return {{Complex(-0.5 * std::norm(z), 0.5 * b.p.t), z, Complex(1.0)}};
}

SU21Matrix SU21Matrix::identity() {
    SU21Matrix g;
    g.m[0][0] = g.m[1][1] = g.m[2][2] = 1.0;
    return g;
}

C21Vector SU21Matrix::apply(const C21Vector& z) const {
    C21Vector r;
    for (int i = 0; i < 3; ++i)
        r[i] = m[i][0] * z[0] + m[i][1] * z[1] + m[i][2] * z[2];
    return r;
}

SU21Matrix SU21Matrix::operator*(const SU21Matrix& o) const {
    SU21Matrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
    return r;
}

SU21Matrix SU21Matrix::form_inverse() const {
    // G^{-1} = H G* H with H the anti-diagonal form matrix.
    SU21Matrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i][j] = std::conj(m[2 - j][2 - i]);
    return r;
}

double SU21Matrix::max_abs() const {
    double v = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v = std::max(v, std::abs(m[i][j]));
    return v;
}

double form_defect(const SU21Matrix& g) {
    double defect = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Complex entry = 0.0;  // (G* H G)_{ij} = sum_k conj(G_{ki}) G_{(2-k) j}
            for (int k = 0; k < 3; ++k) entry += std::conj(g.m[k][i]) * g.m[2 - k][j];
            const double h = (i + j == 2) ? 1.0 : 0.0;
            defect = std::max(defect, std::abs(entry - h));
        }
    return defect;
}

SU21Matrix translation_matrix(const HeisPoint& p) {
    const Complex w = p.z();
    SU21Matrix g = SU21Matrix::identity();
    g.m[0][1] = -std::conj(w);
    g.m[0][2] = Complex(-0.5 * std::norm(w), 0.5 * p.t);
    g.m[1][2] = w;
    return g;
}

SU21Matrix rotation_matrix(double theta) {
    SU21Matrix g = SU21Matrix::identity();
    g.m[1][1] = std::polar(1.0, theta);
    return g;
}

SU21Matrix dilation_matrix(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("dilation factor must be positive");
    SU21Matrix g;
    g.m[0][0] = delta;
    g.m[1][1] = 1.0;
    g.m[2][2] = 1.0 / delta;
    return g;
}

SU21Matrix inversion_matrix() {
    SU21Matrix g;
    g.m[0][2] = 0.5;
    g.m[1][1] = 1.0;
    g.m[2][0] = 2.0;
    return g;
}

BoundaryPoint act_boundary(const SU21Matrix& g, const BoundaryPoint& b) {
    const double scale = g.max_abs();
    if (form_defect(g) > 1e-8 * std::max(1.0, scale * scale))
        throw FormViolation("matrix does not preserve the signature-(2,1) form");

    const C21Vector v = g.apply(lift_boundary(b));
    const double vn = std::sqrt(sq_norm(v));
    if (std::abs(v[2]) <= 1e-12 * vn) return BoundaryPoint::infinity();

    const Complex z1 = v[0] / v[2];
    const Complex z2 = v[1] / v[2];
    const double null_defect = std::abs(z1.real() + 0.5 * std::norm(z2));
    if (null_defect > 1e-9 * std::max(1.0, std::abs(z1) + std::norm(z2)))
        throw LiftInconsistency("image of a null lift is not null");
    return BoundaryPoint::finite({z2.real(), z2.imag(), 2.0 * z1.imag()});
}

double bergman_distance(const SiegelPoint& z, const SiegelPoint& w) {
    const auto interior = [](const SiegelPoint& s) {
        return 2.0 * s.z1.real() + std::norm(s.z2) < 0.0;
    };
    if (!interior(z) || !interior(w))
        throw NotInterior("points must satisfy 2 Re(z1) + |z2|^2 < 0");
    const C21Vector zl{{z.z1, z.z2, Complex(1.0)}};
    const C21Vector wl{{w.z1, w.z2, Complex(1.0)}};
    const double num = std::norm(hermitian(zl, wl));
    const double den = hermitian(zl, zl).real() * hermitian(wl, wl).real();
    const double ratio = std::max(1.0, num / den);
    return 2.0 * std::acosh(std::sqrt(ratio));
}

SpinalSphere spinal_from_vertices(const BoundaryPoint& v1, const BoundaryPoint& v2) {
    const C21Vector l1 = lift_boundary(v1);
    const C21Vector l2 = lift_boundary(v2);

    const Complex inner = hermitian(l1, l2);
    const double r = std::abs(inner);
    const double scale = std::sqrt(sq_norm(l1) * sq_norm(l2));
    if (r <= 1e-12 * scale) throw CoincidentVertices("spinal sphere vertices coincide");

    // Balanced rescaling with <vhat1, vhat2> = 1.
    const Complex phase = inner / r;
    const double root = std::sqrt(r);
    C21Vector vhat1, vhat2;
    for (int i = 0; i < 3; ++i) {
        vhat1[i] = l1[i] * std::conj(phase) / root;
        vhat2[i] = l2[i] / root;
    }

    // Positive direction orthogonal to both lifts: H applied to the Euclidean
    // cross product of the conjugated lifts, normalized to <n,n> = 1.
    const Complex a0 = std::conj(l1[0]), a1 = std::conj(l1[1]), a2 = std::conj(l1[2]);
    const Complex b0 = std::conj(l2[0]), b1 = std::conj(l2[1]), b2 = std::conj(l2[2]);
    const C21Vector cross{{a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0}};
    C21Vector n{{cross[2], cross[1], cross[0]}};
    const double nn = hermitian(n, n).real();
    if (!(nn > 0.0)) throw CoincidentVertices("vertex pair spans a degenerate plane");
    const double ninv = 1.0 / std::sqrt(nn);
    for (int i = 0; i < 3; ++i) n[i] *= ninv;

    SU21Matrix g_inv;
    for (int i = 0; i < 3; ++i) {
        g_inv.m[i][0] = vhat2[i];
        g_inv.m[i][1] = n[i];
        g_inv.m[i][2] = vhat1[i];
    }
    return {v1, v2, g_inv.form_inverse()};
}

double spinal_residual(const SpinalSphere& s, const BoundaryPoint& b) {
    const BoundaryPoint image = act_boundary(s.G, b);
    return image.infinite ? 0.0 : image.p.t;
}

BoundaryPoint sphere_point(const SpinalSphere& s, double x, double y) {
    return act_boundary(s.G.form_inverse(), BoundaryPoint::finite({x, y, 0.0}));
}

nlohmann::json to_json(const SU21Matrix& g) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            rows.push_back({g.m[i][j].real(), g.m[i][j].imag()});
    return rows;
}

SU21Matrix su21_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 9)
        throw std::invalid_argument("matrix JSON must be 9 row-major [re,im] pairs");
    SU21Matrix g;
    for (int k = 0; k < 9; ++k)
        g.m[k / 3][k % 3] = Complex(j[k].at(0).get<double>(), j[k].at(1).get<double>());
    return g;
}

nlohmann::json to_json(const BoundaryPoint& b) {
    if (b.infinite) return "infinity";
    return {b.p.x, b.p.y, b.p.t};
}

nlohmann::json to_json(const FitReport& r) {
    return {{"vertices", {to_json(r.sphere.v1), to_json(r.sphere.v2)}},
            {"rms", r.rms},
            {"max", r.max},
            {"iterations", r.iterations},
            {"converged", r.converged}};
}

}  // namespace heis
