#include "convdist/distance.hpp"

#include <algorithm>
#include <cmath>

#include "convdist/errors.hpp"
#include "convdist/wolfe.hpp"

namespace convdist {

namespace {

DistanceResult finish(std::vector<std::vector<double>> vertices, double tol) {
    MinNormResult mn = min_norm_point(vertices, tol);
    DistanceResult res;
    res.value = mn.norm;
    res.coeffs = std::move(mn.coeffs);

    if (mn.norm > 0.0) {
        // primal value achieved by alpha* = mu*/|mu*|; the gap to the dual
        // value |mu*| is nonnegative and bounded by the solver tolerance
        double min_dot = 0.0;
        bool first = true;
        for (const auto& v : vertices) {
            double d = 0.0;
            for (std::size_t c = 0; c < v.size(); ++c)
                d += mn.point[c] * v[c];
            d /= mn.norm;
            if (first || d < min_dot) {
                min_dot = d;
                first = false;
            }
        }
        res.duality_gap = std::max(0.0, mn.norm - min_dot);
        res.alpha_coord.resize(mn.point.size());
        for (std::size_t c = 0; c < mn.point.size(); ++c)
            res.alpha_coord[c] = mn.point[c] / mn.norm;
    } else {
        res.alpha_coord.assign(
            vertices.empty() ? 0 : vertices.front().size(), 0.0);
    }
    res.vertices = std::move(vertices);
    return res;
}

// vertices for the count-threshold hat events: the minimal disagreement
// sets. For {count <= k}: remove (m_B - k)_+ coordinates lying in B (the
// replacement can always be the deletion symbol). For {count >= k}: turn
// (k - m_B)_+ coordinates outside B into points of B.
std::vector<std::vector<double>> count_event_vertices(const HatVector& x,
                                                      const HatEventSet& a) {
    const std::size_t n = x.size();
    std::vector<std::size_t> pool;
    std::uint64_t flips = 0;
    std::uint64_t m_b = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!x.deleted[i] && a.region.contains(x.points[i])) ++m_b;

    if (a.kind == HatEventSet::Kind::CountUpper) {
        flips = m_b > a.k ? m_b - a.k : 0;
        for (std::size_t i = 0; i < n; ++i)
            if (!x.deleted[i] && a.region.contains(x.points[i]))
                pool.push_back(i);
    } else {
        if (a.k > n)
            throw config_error("count-lower hat event is empty for this n");
        flips = a.k > m_b ? a.k - m_b : 0;
        for (std::size_t i = 0; i < n; ++i)
            if (x.deleted[i] || !a.region.contains(x.points[i]))
                pool.push_back(i);
    }

    std::vector<std::vector<double>> vertices;
    if (flips == 0) {
        vertices.emplace_back(n, 0.0);  // x itself is in the event
        return vertices;
    }
    // all flip subsets of the pool of size `flips`
    std::vector<std::size_t> pick(flips);
    auto emit = [&](auto&& self, std::size_t from, std::size_t depth) -> void {
        if (depth == flips) {
            std::vector<double> u(n, 0.0);
            for (auto i : pick) u[i] = 1.0;
            vertices.push_back(std::move(u));
            return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            pick[depth] = pool[i];
            self(self, i + 1, depth + 1);
        }
    };
    emit(emit, 0, 0);
    return vertices;
}

}  // namespace

DistanceResult d_T_classical(const HatVector& x, const HatEventSet& a,
                             double tol) {
    std::vector<std::vector<double>> vertices;
    if (a.kind == HatEventSet::Kind::Explicit) {
        if (a.vectors.empty())
            throw config_error("classical distance: empty event");
        const std::size_t n = x.size();
        for (const auto& y : a.vectors) {
            if (y.size() != n)
                throw config_error("classical distance: length mismatch");
            std::vector<double> u(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const bool same = x.deleted[i]
                                      ? y.deleted[i]
                                      : (!y.deleted[i] && x.points[i] == y.points[i]);
                u[i] = same ? 0.0 : 1.0;
            }
            vertices.push_back(std::move(u));
        }
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()),
                       vertices.end());
    } else {
        vertices = count_event_vertices(x, a);
    }
    return finish(std::move(vertices), tol);
}

DistanceResult d_T_pi(const CountingMeasure& xi, const EventSet& a,
                      const ReductionOptions& opts, double tol) {
    const auto reps = representative_reduction(xi, a, opts);
    std::vector<std::vector<double>> vertices;
    vertices.reserve(reps.size());
    for (const auto& r : reps)
        vertices.push_back(difference_vector(xi, r.dropped));

    DistanceResult res = finish(std::move(vertices), tol);
    if (res.value > 0.0) {
        std::vector<GroundPoint> atoms;
        std::vector<double> weights;
        std::size_t i = 0;
        for (const auto& [p, k] : xi.atoms()) {
            atoms.push_back(p);
            weights.push_back(res.alpha_coord[i++] /
                              std::sqrt(static_cast<double>(k)));
        }
        res.alpha_star = WeightFunction(std::move(atoms), std::move(weights));
    }
    return res;
}

DistanceResult d_T_binomial(const CountingMeasure& xi, const EventSet& a,
                            std::uint64_t n, const ReductionOptions& opts,
                            double tol) {
    const std::uint64_t mass = xi.total_mass();
    if (mass > n)
        throw config_error("binomial distance: xi(E) exceeds parameter n");
    const auto reps = representative_reduction(xi, a, opts);

    const double denom = n > mass
                             ? std::sqrt(static_cast<double>(n - mass))
                             : 0.0;
    std::vector<std::vector<double>> vertices;
    vertices.reserve(reps.size());
    for (const auto& r : reps) {
        if (r.min_mass > n)
            throw config_error(
                "binomial distance: event not representable with parameter n "
                "(a representative needs mass " +
                std::to_string(r.min_mass) + " > n)");
        std::vector<double> v = difference_vector(xi, r.dropped);
        // excess completion mass; 0/0 at n = xi(E) resolves to 0 because the
        // feasibility check above already forced min_mass <= n = xi(E)
        const double c =
            r.min_mass > mass
                ? static_cast<double>(r.min_mass - mass) / denom
                : 0.0;
        v.push_back(c);
        vertices.push_back(std::move(v));
    }

    DistanceResult res = finish(std::move(vertices), tol);
    if (res.value > 0.0) {
        std::vector<GroundPoint> atoms;
        std::vector<double> weights;
        std::size_t i = 0;
        for (const auto& [p, k] : xi.atoms()) {
            atoms.push_back(p);
            weights.push_back(res.alpha_coord[i++] /
                              std::sqrt(static_cast<double>(k)));
        }
        res.alpha_star = WeightFunction(std::move(atoms), std::move(weights));
        res.extra_weight = res.alpha_coord.back();
    }
    return res;
}

double convergence_gap_bound(const CountingMeasure& xi, const EventSet& a,
                             std::uint64_t n, const ReductionOptions& opts) {
    const std::uint64_t mass = xi.total_mass();
    if (n <= mass)
        throw config_error("gap bound needs n > xi(E)");
    const auto reps = representative_reduction(xi, a, opts);
    std::uint64_t max_mass = 0;
    for (const auto& r : reps) max_mass = std::max(max_mass, r.min_mass);
    const std::uint64_t exc = max_mass > mass ? max_mass - mass : 0;
    return static_cast<double>(exc) /
           std::sqrt(static_cast<double>(n - mass));
}

ProjectionCheck check_projection_compatibility(const HatVector& x,
                                               const HatEventSet& a,
                                               double tol) {
    ProjectionCheck out;
    out.lhs = d_T_classical(x, a, tol).value;
    const CountingMeasure xi = project_hat(x);
    const EventSet projected = a.project();
    out.rhs = d_T_binomial(xi, projected, x.size(), ReductionOptions{}, tol).value;
    out.gap = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace convdist
