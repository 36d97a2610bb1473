#include "convdist/wolfe.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "convdist/errors.hpp"

namespace convdist {

namespace {

constexpr double kZeroWeight = 1e-12;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm_sq(const std::vector<double>& a) { return dot(a, a); }

// Solves the bordered corral system
//   [ G   1 ] [ a  ]   [ 0 ]
//   [ 1^T 0 ] [ -g ] = [ 1 ]
// for the affine minimizer coefficients a (G = Gram matrix of the corral).
// Gaussian elimination with partial pivoting; k stays tiny (<= dim + 1).
bool solve_affine(std::vector<std::vector<double>> m, std::vector<double>& rhs) {
    const std::size_t k = m.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-300) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = m[r][col] / m[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < k; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t col = k; col-- > 0;) {
        double s = rhs[col];
        for (std::size_t c = col + 1; c < k; ++c) s -= m[col][c] * rhs[c];
        rhs[col] = s / m[col][col];
    }
    return true;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<std::vector<double>>& vecs,
                             double tol) {
    if (vecs.empty()) throw config_error("min_norm_point: empty vector set");
    const std::size_t dim = vecs.front().size();
    for (const auto& v : vecs) {
        if (v.size() != dim)
            throw config_error("min_norm_point: mixed dimensions");
        for (double c : v)
            if (c < 0.0)
                throw config_error("min_norm_point: negative component");
    }

    MinNormResult res;
    res.coeffs.assign(vecs.size(), 0.0);
    if (dim == 0) {
        res.coeffs[0] = 1.0;
        return res;
    }

    // start from the minimum-norm input vector (ties: lexicographic)
    std::size_t start = 0;
    double best = norm_sq(vecs[0]);
    for (std::size_t i = 1; i < vecs.size(); ++i) {
        const double n2 = norm_sq(vecs[i]);
        if (n2 < best || (n2 == best && vecs[i] < vecs[start])) {
            best = n2;
            start = i;
        }
    }

    std::vector<std::size_t> corral{start};
    std::vector<double> lambda{1.0};
    std::vector<double> x = vecs[start];

    const long it_cap =
        10 * static_cast<long>(vecs.size()) * static_cast<long>(dim) + 1000;
    long iter = 0;

    auto rebuild_x = [&] {
        x.assign(dim, 0.0);
        for (std::size_t j = 0; j < corral.size(); ++j)
            for (std::size_t c = 0; c < dim; ++c)
                x[c] += lambda[j] * vecs[corral[j]][c];
    };

    while (iter++ < it_cap) {
        const double x2 = norm_sq(x);

        // major cycle: most violating vertex, deterministic tie-breaking
        std::size_t q = 0;
        double qdot = dot(x, vecs[0]);
        for (std::size_t i = 1; i < vecs.size(); ++i) {
            const double d = dot(x, vecs[i]);
            if (d < qdot || (d == qdot && vecs[i] < vecs[q])) {
                qdot = d;
                q = i;
            }
        }
        if (qdot >= x2 - tol * (1.0 + x2)) break;  // Wolfe optimality
        if (std::find(corral.begin(), corral.end(), q) != corral.end())
            break;  // numerical stall; certificate checked below
        corral.push_back(q);
        lambda.push_back(0.0);

        // minor cycles: pull x to the affine minimizer of the corral,
        // dropping vertices whose weight hits zero on the way
        while (iter++ < it_cap) {
            const std::size_t k = corral.size();
            std::vector<std::vector<double>> m(k + 1,
                                               std::vector<double>(k + 1, 0.0));
            std::vector<double> a(k + 1, 0.0);
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t c = 0; c <= r; ++c) {
                    const double g = dot(vecs[corral[r]], vecs[corral[c]]);
                    m[r][c] = g;
                    m[c][r] = g;
                }
                m[r][k] = 1.0;
                m[k][r] = 1.0;
            }
            a[k] = 1.0;
            if (!solve_affine(m, a)) {
                // degenerate Gram matrix: retry with a tiny ridge
                double trace = 0.0;
                for (std::size_t r = 0; r < k; ++r)
                    m[r][r] = dot(vecs[corral[r]], vecs[corral[r]]);
                for (std::size_t r = 0; r < k; ++r) trace += m[r][r];
                std::vector<std::vector<double>> m2(
                    k + 1, std::vector<double>(k + 1, 0.0));
                for (std::size_t r = 0; r < k; ++r) {
                    for (std::size_t c = 0; c < k; ++c)
                        m2[r][c] = dot(vecs[corral[r]], vecs[corral[c]]);
                    m2[r][r] += 1e-12 * (trace / k + 1.0);
                    m2[r][k] = 1.0;
                    m2[k][r] = 1.0;
                }
                a.assign(k + 1, 0.0);
                a[k] = 1.0;
                if (!solve_affine(std::move(m2), a))
                    throw solver_error("min_norm_point: singular corral system");
            }

            bool interior = true;
            for (std::size_t j = 0; j < k; ++j)
                if (a[j] <= kZeroWeight) {
                    interior = false;
                    break;
                }
            if (interior) {
                lambda.assign(a.begin(), a.begin() + static_cast<long>(k));
                rebuild_x();
                break;
            }

            // step to the simplex boundary along x -> affine minimizer
            double theta = 1.0;
            for (std::size_t j = 0; j < k; ++j)
                if (a[j] <= kZeroWeight && lambda[j] > a[j])
                    theta = std::min(theta, lambda[j] / (lambda[j] - a[j]));
            theta = std::clamp(theta, 0.0, 1.0);

            double min_w = 2.0;
            std::size_t min_j = 0;
            for (std::size_t j = 0; j < k; ++j) {
                lambda[j] = (1.0 - theta) * lambda[j] + theta * a[j];
                if (lambda[j] < min_w) {
                    min_w = lambda[j];
                    min_j = j;
                }
            }
            // remove every vanished vertex (at least one must go)
            std::vector<std::size_t> keep;
            for (std::size_t j = 0; j < k; ++j)
                if (lambda[j] > kZeroWeight && j != min_j) keep.push_back(j);
            if (keep.size() == k) keep.pop_back();
            std::vector<std::size_t> new_corral;
            std::vector<double> new_lambda;
            double wsum = 0.0;
            for (auto j : keep) {
                new_corral.push_back(corral[j]);
                new_lambda.push_back(lambda[j]);
                wsum += lambda[j];
            }
            if (new_corral.empty() || wsum <= 0.0)
                throw solver_error("min_norm_point: corral collapsed");
            for (auto& w : new_lambda) w /= wsum;
            corral = std::move(new_corral);
            lambda = std::move(new_lambda);
            rebuild_x();
        }
    }

    const double x2 = norm_sq(x);
    double cert = 0.0;
    for (const auto& v : vecs) cert = std::max(cert, x2 - dot(x, v));
    if (cert > tol * (1.0 + x2))
        throw solver_error("min_norm_point: failed to converge");

    res.point = x;
    res.norm = std::sqrt(x2);
    res.certificate = cert;
    res.iterations = static_cast<int>(iter);
    for (std::size_t j = 0; j < corral.size(); ++j)
        res.coeffs[corral[j]] += lambda[j];
    return res;
}

}  // namespace convdist
