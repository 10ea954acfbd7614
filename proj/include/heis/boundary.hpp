#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "heis/point.hpp"

namespace heis {

/// Vector in C^3 carrying the signature-(2,1) Hermitian form
/// <z,w> = z1 conj(w3) + z2 conj(w2) + z3 conj(w1).
struct C21Vector {
    std::array<Complex, 3> v{};

    Complex& operator[](int i) { return v[i]; }
    const Complex& operator[](int i) const { return v[i]; }
};

Complex hermitian(const C21Vector& z, const C21Vector& w);

enum class VectorType { Negative, Null, Positive };

/// Sign of <z,z> with null tolerance 1e-10 times the squared component norm.
VectorType classify_vector(const C21Vector& z);

/// Point of the boundary sphere: a Heisenberg point or the point at infinity.
struct BoundaryPoint {
    bool infinite = false;
    HeisPoint p{};

    static BoundaryPoint infinity() { return {true, {}}; }
    static BoundaryPoint finite(const HeisPoint& q) { return {false, q}; }
};

/// Null lift: infinity -> (1,0,0); (z,t) -> ((-|z|^2+it)/2, z, 1).
C21Vector lift_boundary(const BoundaryPoint& b);

/// 3x3 complex matrix expected to preserve the Hermitian form (G* H G = H).
struct SU21Matrix {
    Complex m[3][3]{};

    static SU21Matrix identity();
    C21Vector apply(const C21Vector& z) const;
    SU21Matrix operator*(const SU21Matrix& o) const;
    /// Inverse via the form identity G^{-1} = H G* H; valid for form-preserving G.
    SU21Matrix form_inverse() const;
    double max_abs() const;
};

/// Max entrywise magnitude of G* H G - H.
double form_defect(const SU21Matrix& g);

/// Standard form-preserving generators of the boundary action.
SU21Matrix translation_matrix(const HeisPoint& p);
SU21Matrix rotation_matrix(double theta);
SU21Matrix dilation_matrix(double delta);
/// Involution swapping the origin and infinity; induces the Koranyi inversion
/// (z,t) -> (-z/(|z|^2 - it), -t/(|z|^4 + t^2)) on the boundary.
SU21Matrix inversion_matrix();

/// Projective action on the boundary through null lifts.  Throws FormViolation
/// if G does not preserve the form and LiftInconsistency if the image fails the
/// null condition Re(z1') = -|z2'|^2/2 beyond a scale-aware 1e-9.
BoundaryPoint act_boundary(const SU21Matrix& g, const BoundaryPoint& b);

/// Point of the Siegel domain {2 Re(z1) + |z2|^2 < 0} with standard lift (z1,z2,1).
struct SiegelPoint {
    Complex z1{};
    Complex z2{};
};

/// Bergman distance from cosh^2(rho/2) = <z,w><w,z> / (<z,z><w,w>).
double bergman_distance(const SiegelPoint& z, const SiegelPoint& w);

/// Spinal sphere given by its two vertices plus a cached normalizing matrix G
/// taking (v1, v2) to (origin, infinity).  Membership and the signed residual
/// are read off in the normalized chart and do not depend on the choice of G.
struct SpinalSphere {
    BoundaryPoint v1;
    BoundaryPoint v2;
    SU21Matrix G;
};

SpinalSphere spinal_from_vertices(const BoundaryPoint& v1, const BoundaryPoint& v2);

/// t-coordinate of act_boundary(G, b), or 0 when the image is infinity.
double spinal_residual(const SpinalSphere& s, const BoundaryPoint& b);

/// Image of the model-sphere point (x, y, 0) under G^{-1}; sweeps out the sphere.
BoundaryPoint sphere_point(const SpinalSphere& s, double x, double y);

struct FitReport {
    SpinalSphere sphere;
    double rms = 0.0;
    double max = 0.0;
    long iterations = 0;  // objective evaluations across all starts
    bool converged = false;
};

/// Least-squares fit of a spinal sphere to a point cloud (>= 12 points) over
/// the 6 vertex parameters, by multi-start Nelder-Mead simplex search.  A
/// vertex near infinity is parameterized in the Koranyi-inverted chart, whose
/// origin is the point at infinity.  Deterministic; multi-starts may run
/// concurrently and are merged by best objective with lowest-index tie-break.
FitReport fit_spinal(const std::vector<HeisPoint>& points,
                     std::optional<std::pair<BoundaryPoint, BoundaryPoint>> initial = {});

nlohmann::json to_json(const SU21Matrix& g);
SU21Matrix su21_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BoundaryPoint& b);
nlohmann::json to_json(const FitReport& r);

}  // namespace heis
