#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace convdist::selftest {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Exhaustive projection-compatibility sweep: every x in E-hat^n up to
// permutation, `events_per_combo` random symmetric events per (|E|, n)
// combination. Checks |d_T - d_T^n| <= gap_tol on each instance, plus the
// dominance and sandwich relations between the two measure distances.
SuiteResult theorem2_suite(const std::vector<std::uint32_t>& alphabet_sizes,
                           const std::vector<std::size_t>& ns,
                           int events_per_combo, std::uint64_t seed,
                           double gap_tol, bool parallel);

// Randomized instances (mass <= 5, <= 4 distinct atoms, <= 20
// representatives): solver value against the certified sphere oracle at the
// given gap target, plus duality certificates and dominance/sandwich.
// Candidates outside the size limits are skipped; at least min_used must
// survive for the suite to pass.
SuiteResult oracle_suite(int instances, std::uint64_t seed, double target,
                         bool parallel, std::uint64_t min_used = 0);

// d_T^pi(xi, {nu(B) <= k}) = (xi(B)-k)_+ / sqrt(xi(B)) for simple xi
// supported in B, all 1 <= k < xi(B) <= max_mass; the value is cross-derived
// from the exhaustive (unpruned) reduction and, in low dimension, the
// certified oracle before the closed form is trusted.
SuiteResult closed_form_suite(std::uint64_t max_mass, bool parallel);

// Distributional batteries: binomial/Poisson counts against exact pmfs
// (chi-square), disjoint-region Poisson independence, hat deletion counts.
SuiteResult sampler_suite(std::uint64_t trials, std::uint64_t seed);

// Binomial(n, t/n) total-count histogram against the Poisson(t) pmf: total
// variation distance must decrease along the n grid.
SuiteResult tv_decrease_suite(std::uint64_t trials, double t,
                              const std::vector<std::uint64_t>& n_grid,
                              std::uint64_t seed);

}  // namespace convdist::selftest
