#pragma once

#include <cstdint>
#include <vector>

#include "convdist/events.hpp"
#include "convdist/measure.hpp"
#include "convdist/reduction.hpp"

namespace convdist {

struct DistanceResult {
    double value = 0.0;

    // primal witness: optimal weights. Measure distances fill alpha_star
    // (per atom of xi); the classical distance fills alpha_coord (per
    // coordinate). extra_weight is the coefficient of the
    // (1 - |alpha|^2)^(1/2) direction; zero except for the binomial distance.
    WeightFunction alpha_star;
    std::vector<double> alpha_coord;
    double extra_weight = 0.0;

    // dual witness: the polytope handed to the solver and the convex
    // combination realizing the minimum-norm point
    std::vector<std::vector<double>> vertices;
    std::vector<double> coeffs;
    double duality_gap = 0.0;
};

inline constexpr double kDefaultSolverTol = 1e-9;

// Talagrand's convex distance on the hat space: sup over nonnegative unit
// weight vectors of the smallest weighted count of coordinates where x
// disagrees with a member of the event. Solved as the minimum-norm point of
// the disagreement-indicator polytope.
DistanceResult d_T_classical(const HatVector& x, const HatEventSet& a,
                             double tol = kDefaultSolverTol);

// The projection distance on counting measures (no mass-excess term).
DistanceResult d_T_pi(const CountingMeasure& xi, const EventSet& a,
                      const ReductionOptions& opts = {},
                      double tol = kDefaultSolverTol);

// The binomial-process distance with parameter n: each representative's
// vector is augmented by (min_mass - xi(E))_+ / sqrt(n - xi(E)), and the
// optimizer's last coordinate plays the (1 - |alpha|^2)^(1/2) role.
// Requires xi(E) <= n and every representative's min_mass <= n; when
// xi(E) = n the augmented coordinate is identically zero.
DistanceResult d_T_binomial(const CountingMeasure& xi, const EventSet& a,
                            std::uint64_t n, const ReductionOptions& opts = {},
                            double tol = kDefaultSolverTol);

// (max_i min_mass_i - xi(E))_+ / sqrt(n - xi(E)); the binomial distance
// exceeds the projection distance by at most this much.
double convergence_gap_bound(const CountingMeasure& xi, const EventSet& a,
                             std::uint64_t n, const ReductionOptions& opts = {});

struct ProjectionCheck {
    double lhs = 0.0;  // d_T(x, A-hat)
    double rhs = 0.0;  // d_T^n(pi(x), pi(A-hat)) with n = x.size()
    double gap = 0.0;
};

// Computes both routes independently; their equality is the compatibility
// statement under test, never assumed.
ProjectionCheck check_projection_compatibility(const HatVector& x,
                                               const HatEventSet& a,
                                               double tol = kDefaultSolverTol);

}  // namespace convdist
