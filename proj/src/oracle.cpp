#include "convdist/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>

#include "convdist/errors.hpp"

namespace convdist {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

// alpha from spherical angles in [0, pi/2]^(dim-1)
void angles_to_unit(const std::vector<double>& phi, std::vector<double>& alpha) {
    const std::size_t dim = phi.size() + 1;
    double prod = 1.0;
    for (std::size_t j = 0; j + 1 < dim; ++j) {
        alpha[j] = prod * std::cos(phi[j]);
        prod *= std::sin(phi[j]);
    }
    alpha[dim - 1] = prod;
}

double min_dot(const std::vector<std::vector<double>>& vecs,
               const std::vector<double>& alpha) {
    double best = 0.0;
    bool first = true;
    for (const auto& v : vecs) {
        double d = 0.0;
        for (std::size_t c = 0; c < alpha.size(); ++c) d += alpha[c] * v[c];
        if (first || d < best) {
            best = d;
            first = false;
        }
    }
    return best;
}

void validate(const std::vector<std::vector<double>>& vecs, std::size_t max_dim) {
    if (vecs.empty()) throw config_error("sphere oracle: empty vector set");
    const std::size_t dim = vecs.front().size();
    if (dim > max_dim) throw config_error("sphere oracle: dimension too large");
    for (const auto& v : vecs)
        if (v.size() != dim) throw config_error("sphere oracle: mixed dimensions");
}

double grid_sweep(const std::vector<std::vector<double>>& vecs, int resolution,
                  bool parallel) {
    const std::size_t dim = vecs.front().size();
    if (dim == 0) return 0.0;
    if (dim == 1) {
        std::vector<double> one{1.0};
        return min_dot(vecs, one);
    }
    if (resolution < 2) throw config_error("sphere oracle: resolution < 2");

    const std::size_t angles = dim - 1;
    const double h = kHalfPi / (resolution - 1);
    std::int64_t total = 1;
    for (std::size_t j = 0; j < angles; ++j) {
        total *= resolution;
        if (total > (std::int64_t{1} << 40))
            throw config_error("sphere oracle: grid too large");
    }

    double best = -1.0;
    // odometer over the flattened grid; max-reduction is order-insensitive,
    // so the parallel sweep is bit-identical to the serial one
#pragma omp parallel reduction(max : best) if (parallel)
    {
        std::vector<double> phi(angles), alpha(dim);
#pragma omp for schedule(static)
        for (std::int64_t flat = 0; flat < total; ++flat) {
            std::int64_t rem = flat;
            for (std::size_t j = 0; j < angles; ++j) {
                phi[j] = h * static_cast<double>(rem % resolution);
                rem /= resolution;
            }
            angles_to_unit(phi, alpha);
            best = std::max(best, min_dot(vecs, alpha));
        }
    }
    return best;
}

// Per-coordinate ranges of alpha over an angle box. Every factor of the
// spherical map is monotone on [0, pi/2] (cos falling, sin rising), so the
// coordinate-wise extrema come from the matching interval ends.
void coordinate_ranges(const std::vector<double>& lo_ang,
                       const std::vector<double>& hi_ang,
                       std::vector<double>& lo_coord,
                       std::vector<double>& hi_coord) {
    const std::size_t dim = lo_ang.size() + 1;
    double sin_hi_prod = 1.0, sin_lo_prod = 1.0;
    for (std::size_t j = 0; j + 1 < dim; ++j) {
        hi_coord[j] = sin_hi_prod * std::cos(lo_ang[j]);
        lo_coord[j] = sin_lo_prod * std::cos(hi_ang[j]);
        sin_hi_prod *= std::sin(hi_ang[j]);
        sin_lo_prod *= std::sin(lo_ang[j]);
    }
    hi_coord[dim - 1] = sin_hi_prod;
    lo_coord[dim - 1] = sin_lo_prod;
}

// max <alpha, v> subject to |alpha| <= 1 and lo <= alpha <= hi, for v >= 0.
// The maximizer is alpha_j = clamp(t v_j, lo_j, hi_j) with t chosen so the
// norm hits 1 (or the hi corner when it already fits inside the ball);
// monotone in t, solved by bisection. This sees the norm constraint, so the
// bound contracts quadratically along flat directions of the patch.
double clipped_dot_max(const std::vector<double>& v,
                       const std::vector<double>& lo,
                       const std::vector<double>& hi,
                       std::vector<double>& argmax) {
    const std::size_t dim = v.size();
    auto norm_sq_at = [&](double t) {
        double s = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double a = std::clamp(t * v[j], lo[j], hi[j]);
            s += a * a;
        }
        return s;
    };
    double t_star;
    double t_hi = 1.0;
    int guard = 0;
    while (norm_sq_at(t_hi) < 1.0 && guard++ < 80) t_hi *= 2.0;
    if (norm_sq_at(t_hi) < 1.0) {
        // the whole box sits inside the ball; take the hi corner
        t_star = t_hi;
        argmax = hi;
        double s = 0.0;
        for (std::size_t j = 0; j < dim; ++j) s += v[j] * hi[j];
        return s;
    }
    double t_lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (t_lo + t_hi);
        (norm_sq_at(mid) < 1.0 ? t_lo : t_hi) = mid;
    }
    t_star = t_hi;
    double s = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
        argmax[j] = std::clamp(t_star * v[j], lo[j], hi[j]);
        s += v[j] * argmax[j];
    }
    return s;
}

}  // namespace

double sphere_grid_oracle(const std::vector<std::vector<double>>& vecs,
                          int resolution) {
    validate(vecs, 6);
    return grid_sweep(vecs, resolution, true);
}

double sphere_grid_oracle_serial(const std::vector<std::vector<double>>& vecs,
                                 int resolution) {
    validate(vecs, 6);
    return grid_sweep(vecs, resolution, false);
}

SphereBounds sphere_max_certified(const std::vector<std::vector<double>>& vecs,
                                  double target, std::size_t node_cap) {
    validate(vecs, 6);
    const std::size_t dim = vecs.front().size();
    SphereBounds out;
    if (dim == 0) {
        out.certified = true;
        return out;
    }
    if (dim == 1) {
        std::vector<double> one{1.0};
        out.lower = out.upper = min_dot(vecs, one);
        out.certified = true;
        out.nodes = 1;
        return out;
    }

    const std::size_t angles = dim - 1;
    struct Node {
        std::vector<double> lo, hi;  // angle box
        double ub;
        double width;         // total angle width; ub ties refine small boxes
        std::uint64_t order;  // final tiebreak, keeps the queue deterministic
    };
    auto cmp = [](const Node& a, const Node& b) {
        if (a.ub != b.ub) return a.ub < b.ub;
        if (a.width != b.width) return a.width > b.width;
        return a.order > b.order;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(cmp)> queue(cmp);

    std::vector<double> center(angles), alpha(dim), lo_coord(dim), hi_coord(dim);
    std::vector<double> argmax(dim), candidate(dim);
    std::uint64_t order = 0;
    auto push_node = [&](std::vector<double> lo, std::vector<double> hi) {
        for (std::size_t j = 0; j < angles; ++j)
            center[j] = 0.5 * (lo[j] + hi[j]);
        angles_to_unit(center, alpha);
        out.lower = std::max(out.lower, min_dot(vecs, alpha));

        coordinate_ranges(lo, hi, lo_coord, hi_coord);
        double ub = 0.0;
        bool first = true;
        for (const auto& v : vecs) {
            const double bound = clipped_dot_max(v, lo_coord, hi_coord, argmax);
            if (first || bound < ub) {
                ub = bound;
                first = false;
                candidate = argmax;
            }
        }
        // the normalized argmax of the binding vector is a strong incumbent
        // candidate once the box closes in on the optimum
        double cnorm = 0.0;
        for (double c : candidate) cnorm += c * c;
        if (cnorm > 0.0) {
            cnorm = std::sqrt(cnorm);
            for (auto& c : candidate) c /= cnorm;
            out.lower = std::max(out.lower, min_dot(vecs, candidate));
        }

        double width = 0.0;
        for (std::size_t j = 0; j < angles; ++j) width += hi[j] - lo[j];
        queue.push(Node{std::move(lo), std::move(hi), ub, width, order++});
        ++out.nodes;
    };

    push_node(std::vector<double>(angles, 0.0),
              std::vector<double>(angles, kHalfPi));

    while (!queue.empty()) {
        if (queue.top().ub - out.lower <= target) {
            out.upper = std::max(queue.top().ub, out.lower);
            out.certified = true;
            return out;
        }
        if (out.nodes >= node_cap) break;
        Node box = queue.top();
        queue.pop();
        std::size_t axis = 0;
        double widest = box.hi[0] - box.lo[0];
        for (std::size_t j = 1; j < angles; ++j)
            if (box.hi[j] - box.lo[j] > widest) {
                widest = box.hi[j] - box.lo[j];
                axis = j;
            }
        const double mid = 0.5 * (box.lo[axis] + box.hi[axis]);
        for (int side = 0; side < 2; ++side) {
            auto lo = box.lo;
            auto hi = box.hi;
            (side == 0 ? hi : lo)[axis] = mid;
            push_node(std::move(lo), std::move(hi));
        }
    }
    out.upper = queue.empty() ? out.lower : std::max(queue.top().ub, out.lower);
    out.certified = (out.upper - out.lower <= target);
    return out;
}

}  // namespace convdist
