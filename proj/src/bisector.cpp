#include "heis/bisector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "heis/errors.hpp"
#include "heis/parallel.hpp"
#include "heis/rng.hpp"

namespace heis {

namespace {

// gauge(p^{-1} * (x,y,t))^4 as a quartic polynomial in (x, y, t).
Poly gauge4_about(const HeisPoint& p) {
    const Poly wx = Poly::monomial(1, 0, 0) - Poly::constant(p.x);
    const Poly wy = Poly::monomial(0, 1, 0) - Poly::constant(p.y);
    // central part of (-z1,-t1)*(z,t): t - t1 - 2 y1 x + 2 x1 y
    const Poly wt = Poly::monomial(0, 0, 1) - Poly::constant(p.t) +
                    Poly::monomial(1, 0, 0, -2.0 * p.y) + Poly::monomial(0, 1, 0, 2.0 * p.x);
    const Poly r2 = wx * wx + wy * wy;
    return r2 * r2 + wt * wt;
}

void check_distinct(const HeisPoint& p1, const HeisPoint& p2) {
    HeisPoint d = mul(inverse(p1), p2);
    double tol = 1e-9 * std::max({1.0, gauge(p1), gauge(p2)});
    if (gauge(d) <= tol) throw DegeneratePair("bisector foci coincide");
}

}  // namespace

CubicField bisector_field(const HeisPoint& p1, const HeisPoint& p2) {
    check_distinct(p1, p2);
    Poly f = gauge4_about(p1) - gauge4_about(p2);
    const double scale = f.max_abs_coeff();
    if (scale == 0.0) throw DegeneratePair("bisector foci coincide");
    return {f.scaled(1.0 / scale), p1, p2};
}

double residual(const CubicField& field, const HeisPoint& p) {
    return field.f.eval(p);
}

std::vector<HeisPoint> sample_bisector(const HeisPoint& p1, const HeisPoint& p2,
                                       const Box& box, int n, std::uint64_t seed) {
    if (n <= 0) return {};
    const CubicField field = bisector_field(p1, p2);
    const Poly fx = field.f.dx(), fy = field.f.dy(), ft = field.f.dt();

    const int chunks = std::min(64, n);
    std::vector<std::vector<HeisPoint>> parts(chunks);
    std::vector<bool> exhausted(chunks, false);

    parallel_for_chunks(chunks, [&](int chunk) {
        const int target = n / chunks + (chunk < n % chunks ? 1 : 0);
        if (target == 0) return;
        Rng rng(seed, static_cast<std::uint64_t>(chunk));
        auto& out = parts[chunk];
        out.reserve(target);
        long budget = 100L * target;

        while (static_cast<int>(out.size()) < target && budget > 0) {
            --budget;
            const HeisPoint a = rng.in_box(box);
            const HeisPoint b = rng.in_box(box);
            double fa = field.f.eval(a), fb = field.f.eval(b);
            if (fa == 0.0) {
                if (std::abs(dist(p1, a) - dist(p2, a)) <= 1e-9) out.push_back(a);
                continue;
            }
            if (fb == 0.0) {
                if (std::abs(dist(p1, b) - dist(p2, b)) <= 1e-9) out.push_back(b);
                continue;
            }
            if ((fa < 0.0) == (fb < 0.0)) continue;

            // Bisection on the chord parameter, then a short Newton polish.
            double lo = 0.0, hi = 1.0, flo = fa;
            auto at = [&](double s) -> HeisPoint {
                return {a.x + s * (b.x - a.x), a.y + s * (b.y - a.y), a.t + s * (b.t - a.t)};
            };
            for (int it = 0; it < 80 && hi - lo > 1e-17; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = field.f.eval(at(mid));
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            double s = 0.5 * (lo + hi);
            for (int it = 0; it < 3; ++it) {
                const HeisPoint q = at(s);
                const double fq = field.f.eval(q);
                const double dq = fx.eval(q) * (b.x - a.x) + fy.eval(q) * (b.y - a.y) +
                                  ft.eval(q) * (b.t - a.t);
                if (dq == 0.0) break;
                const double step = fq / dq;
                if (!std::isfinite(step) || std::abs(step) > hi - lo + 1e-12) break;
                s -= step;
            }
            const HeisPoint q = at(std::clamp(s, 0.0, 1.0));
            if (std::abs(dist(p1, q) - dist(p2, q)) <= 1e-9) out.push_back(q);
        }
        if (static_cast<int>(out.size()) < target) exhausted[chunk] = true;
    });

    for (int i = 0; i < chunks; ++i)
        if (exhausted[i])
            throw EmptyIntersection("no bisector/box intersection found within the attempt budget");

    std::vector<HeisPoint> result;
    result.reserve(n);
    for (auto& part : parts) result.insert(result.end(), part.begin(), part.end());
    return result;
}

nlohmann::json poly_to_json(const Poly& f) {
    nlohmann::json j = nlohmann::json::object();
    for (int a = 0; a <= Poly::kMaxDegree; ++a)
        for (int b = 0; a + b <= Poly::kMaxDegree; ++b)
            for (int c = 0; a + b + c <= Poly::kMaxDegree; ++c) {
                const double v = f.coeff(a, b, c);
                if (v != 0.0)
                    j["x" + std::to_string(a) + "y" + std::to_string(b) + "t" +
                      std::to_string(c)] = v;
            }
    return j;
}

Poly poly_from_json(const nlohmann::json& j) {
    Poly f;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        int a = 0, b = 0, c = 0;
        if (std::sscanf(key.c_str(), "x%dy%dt%d", &a, &b, &c) != 3)
            throw std::invalid_argument("bad monomial key: " + key);
        f.set(a, b, c, it.value().get<double>());
    }
    return f;
}

}  // namespace heis
