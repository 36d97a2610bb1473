#pragma once

#include <cstddef>
#include <vector>

namespace convdist {

// Brute-force check of sup-min over the nonnegative part of the unit sphere:
//     max over grid alphas of  min_v <alpha, v>
// with `resolution` points per angular coordinate of the spherical
// parametrization. Always a lower bound of the true supremum, converging as
// resolution grows. Dimension capped at 6.
double sphere_grid_oracle(const std::vector<std::vector<double>>& vecs,
                          int resolution);

// serial reference for the OpenMP grid sweep (identical result)
double sphere_grid_oracle_serial(const std::vector<std::vector<double>>& vecs,
                                 int resolution);

struct SphereBounds {
    double lower = 0.0;   // best evaluated point (rigorous lower bound)
    double upper = 0.0;   // Lipschitz bound on the global max
    std::size_t nodes = 0;
    bool certified = false;  // upper - lower <= target reached under node cap
};

// Branch-and-bound refinement of the same grid search: recursively splits
// angle boxes, bounding each by f(center) + L * sum(halfwidths) where L is
// the largest vector norm (each spherical partial derivative has norm <= 1).
// Stops once upper - lower <= target. Independent of the min-norm solver.
SphereBounds sphere_max_certified(const std::vector<std::vector<double>>& vecs,
                                  double target,
                                  std::size_t node_cap = 5000000);

}  // namespace convdist
