#pragma once

#include <vector>

namespace convdist {

struct MinNormResult {
    std::vector<double> point;   // mu*, the minimum-norm point of conv(V)
    double norm = 0.0;           // |mu*|
    std::vector<double> coeffs;  // convex coefficients over the input order
    double certificate = 0.0;    // max_v (|mu*|^2 - <mu*, v>)
    int iterations = 0;
};

// Wolfe's minimum-norm-point algorithm over the convex hull of a finite
// vector set. Terminates when the Wolfe certificate satisfies
//     max_v (|x|^2 - <x, v>) <= tol * (1 + |x|^2).
// Vertex selection ties break on canonical (lexicographic) vector order, so
// results are bit-reproducible for a fixed input list.
//
// By the minimax identity, for V in the nonnegative orthant the returned
// norm equals  sup{ min_v <a, v> : a >= 0, |a| <= 1 }  and mu*/|mu*| is the
// maximizing direction.
MinNormResult min_norm_point(const std::vector<std::vector<double>>& vecs,
                             double tol = 1e-9);

}  // namespace convdist
