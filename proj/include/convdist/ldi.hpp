#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "convdist/distance.hpp"
#include "convdist/events.hpp"
#include "convdist/samplers.hpp"
#include "convdist/stats.hpp"

namespace convdist {

enum class DistanceKind { Classical, Binomial, PoissonPi };

// membership tolerance of the s-parallel set; absorbs solver error in the
// conservative direction for testing an upper-bound inequality
inline constexpr double kParallelSetTol = 1e-9;

struct LdiExperiment {
    ProcessSpec process;
    EventSet event;         // counting-measure event (Binomial / PoissonPi)
    HatEventSet hat_event;  // hat-space event (Classical)
    DistanceKind distance = DistanceKind::Binomial;
    std::vector<double> s_grid;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    double confidence = 0.99;
    ReductionOptions reduction;
    bool parallel = true;

    void validate() const;
};

struct LdiRow {
    double s = 0.0;
    double p_a = 0.0, p_a_lo = 0.0, p_a_hi = 1.0;
    double p_not_as = 0.0, p_not_as_lo = 0.0, p_not_as_hi = 1.0;
    double product_hi = 0.0;
    double bound = 1.0;
    bool violated = false;
    // raw hit counts, kept for matched-seed comparisons
    std::uint64_t a_hits = 0, not_as_hits = 0;
};

// p-hat with a Wilson score interval; trial j runs the predicate on a fresh
// generator seeded by derive_seed(master, stream, j), so the estimate is
// independent of evaluation order and parallel arrangement.
Interval estimate_probability(const std::function<bool(Rng&)>& predicate,
                              std::uint64_t trials, std::uint64_t master,
                              std::uint64_t stream, double confidence,
                              bool parallel = true);

// order-insensitive hit counters; the parallel one is the OpenMP kernel and
// the serial one is the reference it is tested against
std::uint64_t count_hits_serial(
    const std::function<bool(std::uint64_t)>& trial_hits, std::uint64_t trials);
std::uint64_t count_hits_parallel(
    const std::function<bool(std::uint64_t)>& trial_hits, std::uint64_t trials);

// true iff the chosen distance from xi to the event is at most s (within
// kParallelSetTol); n is the binomial parameter, ignored for PoissonPi
bool in_parallel_set(const CountingMeasure& xi, const EventSet& event, double s,
                     DistanceKind kind, std::uint64_t n,
                     const ReductionOptions& opts = {});

// One row per s value: both probabilities estimated on independent trial
// streams; a row is flagged violated only when even the lower confidence
// bounds multiply above exp(-s^2/4).
std::vector<LdiRow> run_ldi(const LdiExperiment& exp);

struct IidLdiResult {
    std::vector<LdiRow> rows;
    // per-trial parallel-set indicators of the hat route vs the projected
    // route disagreed this many times (the compatibility theorem says zero)
    std::uint64_t indicator_disagreements = 0;
};

// Same experiment on hat vectors with the classical distance; every trial
// also evaluates the projected (binomial-distance) indicator on pi(X) and
// counts disagreements.
IidLdiResult run_iid_ldi(const LdiExperiment& exp);

struct ConvergenceRow {
    std::uint64_t n = 0;
    double d_pi = 0.0;
    double d_n = 0.0;
    double gap = 0.0;
    double bound = 0.0;
};

// binomial -> projection distance convergence along the n grid
std::vector<ConvergenceRow> run_convergence(const CountingMeasure& xi,
                                            const EventSet& event,
                                            const std::vector<std::uint64_t>& n_grid,
                                            const ReductionOptions& opts = {},
                                            double tol = kDefaultSolverTol);

// trial-stream identifiers (stream = purpose base + row index)
inline constexpr std::uint64_t kStreamEventProb = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kStreamParallelProb = std::uint64_t{2} << 32;

}  // namespace convdist
