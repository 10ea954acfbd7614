#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "heis/boundary.hpp"
#include "heis/errors.hpp"
#include "heis/parallel.hpp"
#include "heis/rng.hpp"

namespace heis {

namespace {

constexpr double kPenalty = 1e50;
constexpr long kEvalsPerStart = 10000;
constexpr int kStarts = 8;

// One vertex of the candidate sphere.  In the inverted chart the stored
// coordinates are the Koranyi inversion of the vertex, so (0,0,0) is infinity
// and far-away vertices stay numerically small.
struct VertexParam {
    bool inverted = false;
    HeisPoint c{};
};

BoundaryPoint realize(const VertexParam& vp) {
    if (!vp.inverted) return BoundaryPoint::finite(vp.c);
    return act_boundary(inversion_matrix(), BoundaryPoint::finite(vp.c));
}

VertexParam chart_of(const BoundaryPoint& b) {
    if (b.infinite) return {true, {}};
    if (gauge(b.p) > 1e3) {
        const BoundaryPoint inv = act_boundary(inversion_matrix(), b);
        return {true, inv.p};
    }
    return {false, b.p};
}

using Params = std::array<double, 6>;

Params pack(const VertexParam& a, const VertexParam& b) {
    return {a.c.x, a.c.y, a.c.t, b.c.x, b.c.y, b.c.t};
}

struct Objective {
    const std::vector<C21Vector>* lifts;
    bool inverted1;
    bool inverted2;
    double bound = 1e3;  // soft cap on chart-coordinate gauge

    // Chart realization without the checked boundary action: in the inverted
    // chart the vertex lift is the inversion matrix applied to the chart
    // point's lift (any scale works; the construction below renormalizes).
    static C21Vector vertex_lift(const HeisPoint& c, bool inverted) {
        const C21Vector l = lift_boundary(BoundaryPoint::finite(c));
        if (!inverted) return l;
        return {{0.5 * l[2], l[1], 2.0 * l[0]}};
    }

    double operator()(const Params& x) const {
        const C21Vector l1 =
            vertex_lift({x[0], x[1], x[2]}, inverted1);
        const C21Vector l2 =
            vertex_lift({x[3], x[4], x[5]}, inverted2);

        const Complex inner = hermitian(l1, l2);
        const double r = std::abs(inner);
        const double scale =
            std::sqrt((std::norm(l1[0]) + std::norm(l1[1]) + std::norm(l1[2])) *
                      (std::norm(l2[0]) + std::norm(l2[1]) + std::norm(l2[2])));
        if (!(r > 1e-12 * scale)) return kPenalty * (1.0 + scale / (r + 1e-300));
        const double sep = r / scale;  // scale-free vertex separation, O(1) for sane spheres

        const Complex phase = inner / r;
        const double root = std::sqrt(r);
        C21Vector vhat1, vhat2;
        for (int i = 0; i < 3; ++i) {
            vhat1[i] = l1[i] * std::conj(phase) / root;
            vhat2[i] = l2[i] / root;
        }
        // n = H (conj l1 x conj l2), the positive direction orthogonal to both.
        const Complex a0 = std::conj(l1[0]), a1 = std::conj(l1[1]), a2 = std::conj(l1[2]);
        const Complex b0 = std::conj(l2[0]), b1 = std::conj(l2[1]), b2 = std::conj(l2[2]);
        C21Vector n{{a0 * b1 - a1 * b0, a2 * b0 - a0 * b2, a1 * b2 - a2 * b1}};
        const double nn = hermitian(n, n).real();
        if (!(nn > 0.0)) return kPenalty;
        const double ninv = 1.0 / std::sqrt(nn);
        for (int i = 0; i < 3; ++i) n[i] *= ninv;

        // Projective residual per point: the image of q in the normalized
        // chart has t / |z|^2 = 2 Im(<q,v1><v2,q>) / |<q,n>|^2, which is
        // invariant under every freedom of the construction (lift scales, the
        // chart's rotation-dilation stabilizer, and the inversion swapping the
        // chart poles).  Raw t-residuals are unusable as a fitting objective:
        // they shrink uniformly when both vertices recede from the data.
        double sum = 0.0;
        for (const C21Vector& l : *lifts) {
            const Complex c1 = hermitian(l, vhat1);
            const Complex c2 = hermitian(vhat2, l);
            const Complex cn = hermitian(l, n);
            const double den = std::max(std::norm(cn), 1e-300);
            const double rho = 2.0 * (c1 * c2).imag() / den;
            sum += rho * rho;
        }

        // Soft barrier keeping chart coordinates near the data scale.  Any
        // sphere has a representation with small coordinates in one chart per
        // vertex, so this costs no generality; without it the optimizer can
        // drift toward remote vertex pairs whose chart concentrates all images
        // around a single on-model point.
        for (int v = 0; v < 6; v += 3) {
            const double g4 = gauge({x[v], x[v + 1], x[v + 2]});
            if (g4 > bound) {
                const double ex = (g4 - bound) / bound;
                sum += 1e6 * ex * ex * (1.0 + sum);
            }
        }

        // Barrier against vertex collapse: pairs closing up along planar
        // directions keep the residuals finite while the normalizing matrix
        // blows up, so plain least squares can drift into that corner.
        constexpr double kMinSep = 1e-4;
        if (sep < kMinSep) {
            const double ex = (kMinSep - sep) / kMinSep;
            sum += 1e6 * ex * ex * (1.0 + sum);
        }
        return sum;
    }
};

struct NmOut {
    Params x{};
    double f = 0.0;
    long evals = 0;
    bool converged = false;
};

NmOut nelder_mead(const std::function<double(const Params&)>& f, Params x0, double step,
                  long budget) {
    constexpr int kDim = 6;
    std::array<Params, kDim + 1> xs;
    std::array<double, kDim + 1> fs;
    long evals = 0;

    xs[0] = x0;
    fs[0] = f(x0);
    ++evals;
    for (int i = 0; i < kDim; ++i) {
        xs[i + 1] = x0;
        xs[i + 1][i] += step * std::max(1.0, std::abs(x0[i]));
        fs[i + 1] = f(xs[i + 1]);
        ++evals;
    }

    auto order = [&] {
        std::array<int, kDim + 1> idx;
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::array<Params, kDim + 1> nx;
        std::array<double, kDim + 1> nf;
        for (int i = 0; i <= kDim; ++i) {
            nx[i] = xs[idx[i]];
            nf[i] = fs[idx[i]];
        }
        xs = nx;
        fs = nf;
    };

    bool converged = false;
    while (evals < budget) {
        order();

        double diam = 0.0;
        for (int i = 1; i <= kDim; ++i)
            for (int d = 0; d < kDim; ++d)
                diam = std::max(diam, std::abs(xs[i][d] - xs[0][d]));
        const double xscale = 1.0 + std::abs(*std::max_element(
                                        xs[0].begin(), xs[0].end(),
                                        [](double a, double b) { return std::abs(a) < std::abs(b); }));
        if (diam <= 1e-10 * xscale && fs[kDim] - fs[0] <= 1e-20 + 1e-10 * std::abs(fs[0])) {
            converged = true;
            break;
        }

        Params centroid{};
        for (int i = 0; i < kDim; ++i)
            for (int d = 0; d < kDim; ++d) centroid[d] += xs[i][d] / kDim;

        auto blend = [&](double coef) {
            Params p;
            for (int d = 0; d < kDim; ++d)
                p[d] = centroid[d] + coef * (xs[kDim][d] - centroid[d]);
            return p;
        };

        const Params refl = blend(-1.0);
        const double frefl = f(refl);
        ++evals;
        if (frefl < fs[0]) {
            const Params expa = blend(-2.0);
            const double fexpa = f(expa);
            ++evals;
            if (fexpa < frefl) {
                xs[kDim] = expa;
                fs[kDim] = fexpa;
            } else {
                xs[kDim] = refl;
                fs[kDim] = frefl;
            }
        } else if (frefl < fs[kDim - 1]) {
            xs[kDim] = refl;
            fs[kDim] = frefl;
        } else {
            const bool outside = frefl < fs[kDim];
            const Params contr = blend(outside ? -0.5 : 0.5);
            const double fcontr = f(contr);
            ++evals;
            if (fcontr < (outside ? frefl : fs[kDim])) {
                xs[kDim] = contr;
                fs[kDim] = fcontr;
            } else {
                for (int i = 1; i <= kDim; ++i) {  // shrink toward the best vertex
                    for (int d = 0; d < kDim; ++d)
                        xs[i][d] = xs[0][d] + 0.5 * (xs[i][d] - xs[0][d]);
                    fs[i] = f(xs[i]);
                    ++evals;
                }
            }
        }
    }
    order();
    return {xs[0], fs[0], evals, converged};
}

NmOut minimize_with_restarts(const std::function<double(const Params&)>& f, Params x0,
                             long budget) {
    const double steps[3] = {0.25, 1e-5, 1e-8};
    NmOut best;
    best.x = x0;
    best.f = f(x0);
    best.evals = 1;
    for (double step : steps) {
        if (best.evals >= budget) break;
        NmOut out = nelder_mead(f, best.x, step, budget - best.evals);
        out.evals += best.evals;
        if (out.f <= best.f) {
            out.converged = out.converged || (out.f == best.f && best.converged);
            best = out;
        } else {
            best.evals = out.evals;
        }
    }
    return best;
}

}  // namespace

FitReport fit_spinal(const std::vector<HeisPoint>& points,
                     std::optional<std::pair<BoundaryPoint, BoundaryPoint>> initial) {
    if (points.size() < 12)
        throw std::invalid_argument("fit_spinal needs at least 12 points");

    std::vector<C21Vector> lifts;
    lifts.reserve(points.size());
    for (const HeisPoint& p : points) lifts.push_back(lift_boundary(BoundaryPoint::finite(p)));

    struct Start {
        VertexParam a, b;
    };
    std::vector<Start> starts;

    if (initial) {
        starts.push_back({chart_of(initial->first), chart_of(initial->second)});
    } else {
        // Candidate pool: geometric heuristics plus seeded pairs of data points,
        // screened by objective value down to the start budget.
        HeisPoint centroid{};
        for (const HeisPoint& p : points) {
            centroid.x += p.x;
            centroid.y += p.y;
            centroid.t += p.t;
        }
        const double inv_n = 1.0 / static_cast<double>(points.size());
        centroid = {centroid.x * inv_n, centroid.y * inv_n, centroid.t * inv_n};

        double spread = 0.0;
        for (const HeisPoint& p : points) {
            const double dx = p.x - centroid.x, dy = p.y - centroid.y, dt = p.t - centroid.t;
            spread += dx * dx + dy * dy + dt * dt;
        }
        spread = std::sqrt(spread * inv_n) + 1e-12;

        auto euclid2 = [](const HeisPoint& a, const HeisPoint& b) {
            const double dx = a.x - b.x, dy = a.y - b.y, dt = a.t - b.t;
            return dx * dx + dy * dy + dt * dt;
        };
        std::size_t ia = 0, ib = 0, imin_t = 0, imax_t = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (euclid2(points[i], centroid) > euclid2(points[ia], centroid)) ia = i;
            if (points[i].t < points[imin_t].t) imin_t = i;
            if (points[i].t > points[imax_t].t) imax_t = i;
        }
        for (std::size_t i = 0; i < points.size(); ++i)
            if (euclid2(points[i], points[ia]) > euclid2(points[ib], points[ia])) ib = i;

        std::vector<Start> pool;
        pool.push_back({{false, centroid}, {true, {}}});
        pool.push_back({{false, points[points.size() / 2]}, {true, {}}});
        pool.push_back({{false, points[ia]}, {false, points[ib]}});
        pool.push_back({{false, points[imin_t]}, {false, points[imax_t]}});
        pool.push_back({{false, {centroid.x, centroid.y, centroid.t + spread}},
                        {false, {centroid.x, centroid.y, centroid.t - spread}}});
        pool.push_back({{false, points[points.size() / 3]}, {false, points[2 * points.size() / 3]}});

        Rng rng(0x5eed0f17u);
        for (int k = 0; k < 32; ++k) {
            const std::size_t i = static_cast<std::size_t>(rng.bits() % points.size());
            const std::size_t j = static_cast<std::size_t>(rng.bits() % points.size());
            auto jitter = [&](const HeisPoint& p) -> HeisPoint {
                return {p.x + rng.uniform(-0.1, 0.1) * spread,
                        p.y + rng.uniform(-0.1, 0.1) * spread,
                        p.t + rng.uniform(-0.1, 0.1) * spread};
            };
            Start s{{false, jitter(points[i])}, {false, jitter(points[j])}};
            if (k % 4 == 3)
                s.b = {true, {rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                              rng.uniform(-0.2, 0.2)}};
            pool.push_back(s);
        }

        std::vector<std::pair<double, std::size_t>> scored;
        scored.reserve(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) {
            Objective obj{&lifts, pool[i].a.inverted, pool[i].b.inverted};
            scored.emplace_back(obj(pack(pool[i].a, pool[i].b)), i);
        }
        std::stable_sort(scored.begin(), scored.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        const int take = std::min<std::size_t>(kStarts, scored.size());
        for (int i = 0; i < take; ++i) starts.push_back(pool[scored[i].second]);
    }

    double data_scale = 1.0;
    for (const HeisPoint& p : points) data_scale = std::max(data_scale, gauge(p));
    const double bound = 4.0 * data_scale;

    std::vector<NmOut> results(starts.size());
    std::vector<Objective> objectives(starts.size());
    parallel_for_chunks(static_cast<int>(starts.size()), [&](int i) {
        objectives[i] = Objective{&lifts, starts[i].a.inverted, starts[i].b.inverted, bound};
        results[i] = minimize_with_restarts(
            [&](const Params& x) { return objectives[i](x); },
            pack(starts[i].a, starts[i].b), kEvalsPerStart);
    });

    bool any_converged = false;
    long total_evals = 0;
    for (const NmOut& out : results) {
        total_evals += out.evals;
        any_converged = any_converged || out.converged;
    }
    if (!any_converged)
        throw NoConvergence("no simplex start converged within the evaluation budget");

    // Best objective wins; lowest start index breaks ties.  A start whose
    // optimum degenerated to coincident vertices cannot be realized as a
    // sphere, so fall through to the next best.
    std::vector<std::size_t> order(results.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return results[a].f < results[b].f; });

    std::optional<SpinalSphere> sphere;
    std::size_t best = 0;
    for (std::size_t i : order) {
        const Params& x = results[i].x;
        try {
            const BoundaryPoint v1 = realize({starts[i].a.inverted, {x[0], x[1], x[2]}});
            const BoundaryPoint v2 = realize({starts[i].b.inverted, {x[3], x[4], x[5]}});
            SpinalSphere s = spinal_from_vertices(v1, v2);
            const double scale = s.G.max_abs();
            if (form_defect(s.G) > 1e-9 * std::max(1.0, scale * scale)) continue;
            sphere = s;
            best = i;
            break;
        } catch (const CoincidentVertices&) {
        }
    }
    if (!sphere) throw NoConvergence("every simplex start degenerated");

    FitReport report;
    report.sphere = *sphere;
    report.iterations = total_evals;
    report.converged = results[best].converged;
    double sum = 0.0, peak = 0.0;
    for (const HeisPoint& p : points) {
        const double r = spinal_residual(*sphere, BoundaryPoint::finite(p));
        sum += r * r;
        peak = std::max(peak, std::abs(r));
    }
    report.rms = std::sqrt(sum / static_cast<double>(points.size()));
    report.max = peak;
    return report;
}

}  // namespace heis
