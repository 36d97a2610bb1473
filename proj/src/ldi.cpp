#include "convdist/ldi.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "convdist/errors.hpp"

namespace convdist {

namespace {

using DistanceCache = std::unordered_map<std::string, double>;

// Exact memoization key. For count-upper events the distance depends only on
// the multiset of multiplicities inside B (vector components vanish outside
// B and the mass-excess term is identically zero), which collides heavily
// across sampled measures. Everything else keys on the full canonical form.
std::string memo_key(const CountingMeasure& xi, const EventSet& event) {
    if (event.kind == EventSet::Kind::CountUpper) {
        std::vector<std::uint64_t> mults;
        for (const auto& [p, k] : xi.atoms())
            if (event.region.contains(p)) mults.push_back(k);
        std::sort(mults.begin(), mults.end());
        std::string key = "u|";
        for (auto m : mults) {
            key += std::to_string(m);
            key += ',';
        }
        return key;
    }
    return xi.to_string();
}

double distance_value(const CountingMeasure& xi, const EventSet& event,
                      DistanceKind kind, std::uint64_t n,
                      const ReductionOptions& opts, DistanceCache& cache) {
    std::string key = memo_key(xi, event);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const double d = kind == DistanceKind::Binomial
                         ? d_T_binomial(xi, event, n, opts).value
                         : d_T_pi(xi, event, opts).value;
    cache.emplace(std::move(key), d);
    return d;
}

template <typename TrialFn>
std::uint64_t count_hits(TrialFn&& fn, std::uint64_t trials, bool parallel) {
    std::uint64_t hits = 0;
    if (parallel) {
#pragma omp parallel
        {
            DistanceCache cache;
            std::uint64_t local = 0;
#pragma omp for schedule(static) nowait
            for (long long j = 0; j < static_cast<long long>(trials); ++j)
                if (fn(static_cast<std::uint64_t>(j), cache)) ++local;
#pragma omp atomic
            hits += local;
        }
    } else {
        DistanceCache cache;
        for (std::uint64_t j = 0; j < trials; ++j)
            if (fn(j, cache)) ++hits;
    }
    return hits;
}

double ldi_bound(double s) { return std::exp(-s * s / 4.0); }

void fill_row(LdiRow& row, std::uint64_t a_hits, std::uint64_t not_hits,
              std::uint64_t trials, double confidence) {
    const Interval pa = wilson_interval(a_hits, trials, confidence);
    const Interval pn = wilson_interval(not_hits, trials, confidence);
    row.p_a = pa.estimate;
    row.p_a_lo = pa.lo;
    row.p_a_hi = pa.hi;
    row.p_not_as = pn.estimate;
    row.p_not_as_lo = pn.lo;
    row.p_not_as_hi = pn.hi;
    row.product_hi = pa.hi * pn.hi;
    row.bound = ldi_bound(row.s);
    row.violated = pa.lo * pn.lo > row.bound;
    row.a_hits = a_hits;
    row.not_as_hits = not_hits;
}

}  // namespace

void LdiExperiment::validate() const {
    process.validate();
    if (trials < 1) throw config_error("experiment needs trials >= 1");
    if (s_grid.empty()) throw config_error("experiment needs a non-empty s grid");
    for (double s : s_grid)
        if (!(s >= 0.0)) throw config_error("s values must be >= 0");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw config_error("confidence must lie in (0,1)");
    switch (distance) {
        case DistanceKind::Classical:
            if (process.kind != ProcessSpec::Kind::Hat)
                throw config_error("classical distance needs the hat process");
            break;
        case DistanceKind::Binomial:
            if (process.kind != ProcessSpec::Kind::Binomial)
                throw config_error("binomial distance needs a binomial process");
            break;
        case DistanceKind::PoissonPi:
            if (process.kind == ProcessSpec::Kind::Hat)
                throw config_error(
                    "projection distance runs on counting-measure processes");
            break;
    }
}

Interval estimate_probability(const std::function<bool(Rng&)>& predicate,
                              std::uint64_t trials, std::uint64_t master,
                              std::uint64_t stream, double confidence,
                              bool parallel) {
    if (trials < 1) throw config_error("estimate_probability: trials >= 1");
    const auto hits = count_hits(
        [&](std::uint64_t j, DistanceCache&) {
            Rng rng(derive_seed(master, stream, j));
            return predicate(rng);
        },
        trials, parallel);
    return wilson_interval(hits, trials, confidence);
}

std::uint64_t count_hits_serial(
    const std::function<bool(std::uint64_t)>& trial_hits, std::uint64_t trials) {
    return count_hits(
        [&](std::uint64_t j, DistanceCache&) { return trial_hits(j); }, trials,
        false);
}

std::uint64_t count_hits_parallel(
    const std::function<bool(std::uint64_t)>& trial_hits, std::uint64_t trials) {
    return count_hits(
        [&](std::uint64_t j, DistanceCache&) { return trial_hits(j); }, trials,
        true);
}

bool in_parallel_set(const CountingMeasure& xi, const EventSet& event, double s,
                     DistanceKind kind, std::uint64_t n,
                     const ReductionOptions& opts) {
    if (kind == DistanceKind::Classical)
        throw config_error("in_parallel_set: use the hat-vector route");
    const double d = kind == DistanceKind::Binomial
                         ? d_T_binomial(xi, event, n, opts).value
                         : d_T_pi(xi, event, opts).value;
    return d <= s + kParallelSetTol;
}

std::vector<LdiRow> run_ldi(const LdiExperiment& exp) {
    exp.validate();
    if (exp.distance == DistanceKind::Classical)
        throw config_error("run_ldi handles counting-measure distances; "
                           "use run_iid_ldi for the classical one");

    std::vector<double> grid = exp.s_grid;
    std::sort(grid.begin(), grid.end());

    std::vector<LdiRow> rows(grid.size());
    for (std::size_t r = 0; r < grid.size(); ++r) {
        const double s = grid[r];
        rows[r].s = s;

        const auto a_hits = count_hits(
            [&](std::uint64_t j, DistanceCache&) {
                Rng rng(derive_seed(exp.seed, kStreamEventProb + r, j));
                return event_contains(exp.event, sample_process(exp.process, rng));
            },
            exp.trials, exp.parallel);

        const auto not_hits = count_hits(
            [&](std::uint64_t j, DistanceCache& cache) {
                Rng rng(derive_seed(exp.seed, kStreamParallelProb + r, j));
                const CountingMeasure xi = sample_process(exp.process, rng);
                const double d = distance_value(xi, exp.event, exp.distance,
                                                exp.process.n, exp.reduction,
                                                cache);
                return !(d <= s + kParallelSetTol);
            },
            exp.trials, exp.parallel);

        fill_row(rows[r], a_hits, not_hits, exp.trials, exp.confidence);
    }
    return rows;
}

IidLdiResult run_iid_ldi(const LdiExperiment& exp) {
    exp.validate();
    if (exp.distance != DistanceKind::Classical)
        throw config_error("run_iid_ldi runs the classical distance");

    // projected event for the per-trial compatibility cross-check
    EventSet projected;
    switch (exp.hat_event.kind) {
        case HatEventSet::Kind::Explicit:
            projected = exp.hat_event.project();
            break;
        case HatEventSet::Kind::CountUpper:
            projected = EventSet::count_upper(exp.hat_event.region, exp.hat_event.k);
            break;
        case HatEventSet::Kind::CountLower:
            projected = EventSet::count_lower(exp.hat_event.region, exp.hat_event.k);
            break;
    }

    std::vector<double> grid = exp.s_grid;
    std::sort(grid.begin(), grid.end());

    IidLdiResult out;
    out.rows.resize(grid.size());
    std::uint64_t disagreements = 0;

    for (std::size_t r = 0; r < grid.size(); ++r) {
        const double s = grid[r];
        out.rows[r].s = s;

        const auto a_hits = count_hits(
            [&](std::uint64_t j, DistanceCache&) {
                Rng rng(derive_seed(exp.seed, kStreamEventProb + r, j));
                return hat_event_contains(
                    exp.hat_event,
                    sample_hat(exp.process.ground, exp.process.n, exp.process.t,
                               rng));
            },
            exp.trials, exp.parallel);

        std::uint64_t row_disagree = 0;
        std::uint64_t not_hits = 0;
        auto not_trial = [&](std::uint64_t j, DistanceCache& cache,
                             std::uint64_t& local_disagree) {
            Rng rng(derive_seed(exp.seed, kStreamParallelProb + r, j));
            const HatVector x = sample_hat(exp.process.ground, exp.process.n,
                                           exp.process.t, rng);
            // for count events the classical distance depends only on the
            // number of coordinates inside B, so trials collide heavily
            std::string hat_key = "h|";
            if (exp.hat_event.kind == HatEventSet::Kind::Explicit) {
                hat_key += x.to_string();
            } else {
                std::uint64_t m_b = 0;
                for (std::size_t i = 0; i < x.size(); ++i)
                    if (!x.deleted[i] && exp.hat_event.region.contains(x.points[i]))
                        ++m_b;
                hat_key += std::to_string(m_b);
            }
            double d_hat;
            if (auto it = cache.find(hat_key); it != cache.end()) {
                d_hat = it->second;
            } else {
                d_hat = d_T_classical(x, exp.hat_event).value;
                cache.emplace(std::move(hat_key), d_hat);
            }
            const bool not_in_hat = !(d_hat <= s + kParallelSetTol);

            const CountingMeasure xi = project_hat(x);
            const double d_proj =
                distance_value(xi, projected, DistanceKind::Binomial,
                               exp.process.n, exp.reduction, cache);
            const bool not_in_proj = !(d_proj <= s + kParallelSetTol);
            if (not_in_hat != not_in_proj) ++local_disagree;
            return not_in_hat;
        };
        if (exp.parallel) {
#pragma omp parallel
            {
                DistanceCache cache;
                std::uint64_t local_hits = 0, local_dis = 0;
#pragma omp for schedule(static) nowait
                for (long long j = 0; j < static_cast<long long>(exp.trials); ++j)
                    if (not_trial(static_cast<std::uint64_t>(j), cache, local_dis))
                        ++local_hits;
#pragma omp atomic
                not_hits += local_hits;
#pragma omp atomic
                row_disagree += local_dis;
            }
        } else {
            DistanceCache cache;
            for (std::uint64_t j = 0; j < exp.trials; ++j)
                if (not_trial(j, cache, row_disagree)) ++not_hits;
        }
        disagreements += row_disagree;

        fill_row(out.rows[r], a_hits, not_hits, exp.trials, exp.confidence);
    }
    out.indicator_disagreements = disagreements;
    return out;
}

std::vector<ConvergenceRow> run_convergence(
    const CountingMeasure& xi, const EventSet& event,
    const std::vector<std::uint64_t>& n_grid, const ReductionOptions& opts,
    double tol) {
    if (n_grid.empty()) throw config_error("convergence needs an n grid");
    for (auto n : n_grid)
        if (n <= xi.total_mass())
            throw config_error("convergence grid needs n > xi(E)");

    std::vector<std::uint64_t> grid = n_grid;
    std::sort(grid.begin(), grid.end());

    const double d_pi = d_T_pi(xi, event, opts, tol).value;
    std::vector<ConvergenceRow> rows;
    rows.reserve(grid.size());
    for (auto n : grid) {
        ConvergenceRow row;
        row.n = n;
        row.d_pi = d_pi;
        row.d_n = d_T_binomial(xi, event, n, opts, tol).value;
        row.gap = row.d_n - d_pi;
        row.bound = convergence_gap_bound(xi, event, n, opts);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace convdist
