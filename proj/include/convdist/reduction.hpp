#pragma once

#include <cstdint>
#include <vector>

#include "convdist/events.hpp"
#include "convdist/measure.hpp"

namespace convdist {

// One achievable value D = xi \ nu over nu in A, together with the minimal
// total mass nu(E) among the measures realizing it.
struct Representative {
    CountingMeasure dropped;
    std::uint64_t min_mass = 0;
};

struct ReductionOptions {
    // cap on xi(E) for exhaustive sub-multiset enumeration (count-lower and
    // unpruned count-upper paths); explicit events and the pruned count-upper
    // generator are polynomial and bounded by rep_cap alone
    std::uint64_t mass_cap = 16;
    std::size_t rep_cap = std::size_t{1} << 20;
    bool prune = true;  // dominance pruning (never changes distance values)
};

// Enumerates the finitely many values of nu -> xi \ nu over nu in A.
//   Explicit:   one representative per distinct xi \ member, min over nu(E).
//   CountUpper: drops D <= xi with D(B) >= (xi(B)-k)_+; the minimal
//               completion keeps every undropped atom, min_mass = xi(E)-D(E).
//   CountLower: any D <= xi; the minimal completion adds
//               (k - (xi(B)-D(B)))_+ atoms inside B, which must contain a
//               point free of dropped mass (otherwise D is unachievable).
std::vector<Representative> representative_reduction(
    const CountingMeasure& xi, const EventSet& a,
    const ReductionOptions& opts = {});

// v(D) indexed by the atoms of xi in canonical order: D(x) / sqrt(xi(x)).
// With beta(x) = alpha(x) sqrt(xi(x)) this turns integral against xi \ nu
// into <beta, v(D)> and |alpha|_{2,xi} into the Euclidean norm of beta.
std::vector<double> difference_vector(const CountingMeasure& xi,
                                      const CountingMeasure& d);

}  // namespace convdist
