#include "convdist/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "convdist/distance.hpp"
#include "convdist/errors.hpp"
#include "convdist/oracle.hpp"
#include "convdist/rng.hpp"
#include "convdist/samplers.hpp"
#include "convdist/stats.hpp"
#include "convdist/wolfe.hpp"

namespace convdist::selftest {

namespace {

std::string format_detail(const char* fmt, double a, double b = 0.0,
                          double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), fmt, a, b, c);
    return buf;
}

// all multisets of size n over {0, ..., m} as nondecreasing index vectors
void enumerate_multisets(std::size_t n, std::uint32_t m,
                         std::vector<std::vector<std::uint32_t>>& out) {
    std::vector<std::uint32_t> cur(n, 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = n;
        while (i > 0 && cur[i - 1] == m) --i;
        if (i == 0) return;
        const std::uint32_t v = cur[i - 1] + 1;
        for (std::size_t j = i - 1; j < n; ++j) cur[j] = v;
    }
}

HatVector hat_from_indices(const std::vector<std::uint32_t>& idx,
                           std::uint32_t delta_index) {
    HatVector x;
    for (auto v : idx) {
        if (v == delta_index) {
            x.points.emplace_back();
            x.deleted.push_back(true);
        } else {
            x.points.push_back(GroundPoint::symbol(v));
            x.deleted.push_back(false);
        }
    }
    return x;
}

HatEventSet random_symmetric_event(std::uint32_t alphabet, std::size_t n,
                                   Rng& rng) {
    const std::size_t count = 1 + rng.bounded(6);
    std::vector<HatVector> seeds;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint32_t> idx(n);
        for (auto& v : idx)
            v = static_cast<std::uint32_t>(rng.bounded(alphabet + 1));
        seeds.push_back(hat_from_indices(idx, alphabet));
    }
    return HatEventSet::explicit_set(std::move(seeds));
}

struct InstanceChecks {
    double max_gap = 0.0;        // |d_T - d_T^n|
    double max_dominance = 0.0;  // (d_pi - d_n)_+
    double max_sandwich = 0.0;   // (d_n - d_pi - bound)_+
    std::uint64_t failures = 0;
};

void check_measure_relations(const CountingMeasure& xi, const EventSet& event,
                             std::uint64_t n, const ReductionOptions& opts,
                             InstanceChecks& acc) {
    const double d_pi = d_T_pi(xi, event, opts).value;
    const double d_n = d_T_binomial(xi, event, n, opts).value;
    acc.max_dominance = std::max(acc.max_dominance, d_pi - d_n);
    if (n > xi.total_mass()) {
        const double bound = convergence_gap_bound(xi, event, n, opts);
        acc.max_sandwich = std::max(acc.max_sandwich, (d_n - d_pi) - bound);
    } else {
        acc.max_sandwich = std::max(acc.max_sandwich, std::abs(d_n - d_pi));
    }
}

}  // namespace

SuiteResult theorem2_suite(const std::vector<std::uint32_t>& alphabet_sizes,
                           const std::vector<std::size_t>& ns,
                           int events_per_combo, std::uint64_t seed,
                           double gap_tol, bool parallel) {
    struct Task {
        std::uint32_t alphabet;
        std::size_t n;
        std::vector<std::uint32_t> x_indices;
        int event_index;
    };
    std::vector<Task> tasks;
    for (auto m : alphabet_sizes) {
        for (auto n : ns) {
            std::vector<std::vector<std::uint32_t>> multisets;
            enumerate_multisets(n, m, multisets);  // index m encodes deletion
            for (const auto& idx : multisets)
                for (int e = 0; e < events_per_combo; ++e)
                    tasks.push_back(Task{m, n, idx, e});
        }
    }

    double max_gap = 0.0;
    double max_dom = 0.0;
    double max_sand = 0.0;
    std::uint64_t failures = 0;

#pragma omp parallel for schedule(dynamic, 8) reduction(max : max_gap, max_dom, max_sand) reduction(+ : failures) if (parallel)
    for (long long ti = 0; ti < static_cast<long long>(tasks.size()); ++ti) {
        const Task& task = tasks[static_cast<std::size_t>(ti)];
        Rng rng(derive_seed(seed,
                            (static_cast<std::uint64_t>(task.alphabet) << 16) |
                                task.n,
                            static_cast<std::uint64_t>(task.event_index)));
        const HatEventSet event =
            random_symmetric_event(task.alphabet, task.n, rng);
        const HatVector x = hat_from_indices(task.x_indices, task.alphabet);
        try {
            const ProjectionCheck chk = check_projection_compatibility(x, event);
            max_gap = std::max(max_gap, chk.gap);
            if (chk.gap > gap_tol) ++failures;

            InstanceChecks acc;
            check_measure_relations(project_hat(x), event.project(), x.size(),
                                    ReductionOptions{}, acc);
            max_dom = std::max(max_dom, acc.max_dominance);
            max_sand = std::max(max_sand, acc.max_sandwich);
            if (acc.max_dominance > 1e-9 || acc.max_sandwich > 1e-9) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }

    SuiteResult res;
    res.name = "projection-compatibility";
    res.pass = failures == 0;
    res.detail = format_detail(
        "max |d_T - d_T^n| = %.3g, max dominance excess = %.3g, "
        "max sandwich excess = %.3g",
        max_gap, max_dom, max_sand);
    res.detail += " over " + std::to_string(tasks.size()) + " instances";
    return res;
}

SuiteResult oracle_suite(int instances, std::uint64_t seed, double target,
                         bool parallel, std::uint64_t min_used) {
    double max_above = 0.0;   // value - oracle_lower (should be <= target)
    double max_below = 0.0;   // oracle_lower - value (should be <= 1e-9)
    double max_dual = 0.0;    // duality certificate residuals
    double max_dom = 0.0, max_sand = 0.0;
    std::uint64_t failures = 0;
    std::uint64_t used = 0;

#pragma omp parallel for schedule(dynamic) reduction(max : max_above, max_below, max_dual, max_dom, max_sand) reduction(+ : failures, used) if (parallel)
    for (int i = 0; i < instances; ++i) {
        Rng rng(derive_seed(seed, 0xa11ce, static_cast<std::uint64_t>(i)));
        const GroundSpace ground = GroundSpace::finite_alphabet(4);

        // xi with <= 4 distinct atoms and xi(E) <= 5
        const std::size_t natoms = 1 + rng.bounded(4);
        std::uint32_t symbols[4] = {0, 1, 2, 3};
        for (std::size_t j = 3; j > 0; --j)
            std::swap(symbols[j], symbols[rng.bounded(j + 1)]);
        std::vector<CountingMeasure::Atom> atoms;
        std::uint64_t mass = 0;
        for (std::size_t j = 0; j < natoms; ++j) {
            const std::uint64_t mult =
                1 + rng.bounded((5 - natoms) / natoms + 1);
            atoms.emplace_back(GroundPoint::symbol(symbols[j]), mult);
            mass += mult;
        }
        const CountingMeasure xi{std::move(atoms)};

        // random event over a random region
        std::vector<std::uint32_t> region_symbols;
        for (std::uint32_t s = 0; s < 4; ++s)
            if (rng.bounded(2) == 0) region_symbols.push_back(s);
        if (region_symbols.empty())
            region_symbols.push_back(static_cast<std::uint32_t>(rng.bounded(4)));
        const Region b = Region::alphabet_subset(region_symbols);

        EventSet event;
        switch (rng.bounded(3)) {
            case 0:
                event = EventSet::count_upper(b, rng.bounded(count(xi, b) + 1));
                break;
            case 1:
                event = EventSet::count_lower(b, 1 + rng.bounded(mass + 2));
                break;
            default: {
                std::vector<CountingMeasure> members;
                const std::size_t count_members = 1 + rng.bounded(4);
                for (std::size_t mI = 0; mI < count_members; ++mI) {
                    std::vector<CountingMeasure::Atom> ms;
                    for (std::uint32_t s = 0; s < 4; ++s) {
                        const std::uint64_t mult = rng.bounded(3);
                        if (mult > 0) ms.emplace_back(GroundPoint::symbol(s), mult);
                    }
                    members.emplace_back(std::move(ms));
                }
                event = EventSet::explicit_set(std::move(members));
            }
        }

        try {
            const ReductionOptions opts;
            const auto reps = representative_reduction(xi, event, opts);
            if (reps.empty() || reps.size() > 20) continue;
            std::uint64_t max_min_mass = 0;
            for (const auto& r : reps)
                max_min_mass = std::max(max_min_mass, r.min_mass);

            const bool use_binomial = rng.bounded(2) == 0;
            const std::uint64_t n =
                std::max(mass + 1, max_min_mass) + rng.bounded(8);
            const DistanceResult res = use_binomial
                                           ? d_T_binomial(xi, event, n, opts)
                                           : d_T_pi(xi, event, opts);
            if (res.vertices.front().size() > 5) continue;
            ++used;

            const SphereBounds bb = sphere_max_certified(res.vertices, target);
            if (!bb.certified) {
                ++failures;
                continue;
            }
            max_above = std::max(max_above, res.value - bb.lower);
            max_below = std::max(max_below, bb.lower - res.value);
            if (res.value < bb.lower - 1e-9 || res.value > bb.lower + target ||
                res.value > bb.upper + 1e-9)
                ++failures;

            // duality: coefficients form a convex combination whose norm is
            // the value, and alpha* attains the value on the polytope
            double csum = 0.0;
            std::vector<double> mu(res.vertices.front().size(), 0.0);
            for (std::size_t vI = 0; vI < res.vertices.size(); ++vI) {
                csum += res.coeffs[vI];
                if (res.coeffs[vI] < 0.0) ++failures;
                for (std::size_t cI = 0; cI < mu.size(); ++cI)
                    mu[cI] += res.coeffs[vI] * res.vertices[vI][cI];
            }
            double mu_norm = 0.0;
            for (double v : mu) mu_norm += v * v;
            mu_norm = std::sqrt(mu_norm);
            max_dual = std::max(
                {max_dual, std::abs(csum - 1.0), std::abs(mu_norm - res.value),
                 res.duality_gap});
            if (std::abs(csum - 1.0) > 1e-10 ||
                std::abs(mu_norm - res.value) > 1e-7 ||
                res.duality_gap > 1e-7)
                ++failures;

            InstanceChecks acc;
            check_measure_relations(xi, event, n, opts, acc);
            max_dom = std::max(max_dom, acc.max_dominance);
            max_sand = std::max(max_sand, acc.max_sandwich);
            if (acc.max_dominance > 1e-9 || acc.max_sandwich > 1e-9) ++failures;
        } catch (const std::exception&) {
            ++failures;
        }
    }

    SuiteResult res;
    res.name = "oracle-equivalence";
    res.pass = failures == 0 &&
               used >= std::max(min_used,
                                static_cast<std::uint64_t>(instances) / 2);
    res.detail = format_detail(
        "value-oracle in [-%.3g, %.3g], max duality residual %.3g", max_below,
        max_above, max_dual);
    res.detail += ", " + std::to_string(used) + " certified instances";
    return res;
}

SuiteResult closed_form_suite(std::uint64_t max_mass, bool parallel) {
    double max_err = 0.0;
    double max_route_diff = 0.0;
    double max_oracle_excess = 0.0;
    std::uint64_t failures = 0;

    struct Case {
        std::uint64_t m, k;
    };
    std::vector<Case> cases;
    for (std::uint64_t m = 2; m <= max_mass; ++m)
        for (std::uint64_t k = 1; k < m; ++k) cases.push_back({m, k});

#pragma omp parallel for schedule(dynamic) reduction(max : max_err, max_route_diff, max_oracle_excess) reduction(+ : failures) if (parallel)
    for (long long ci = 0; ci < static_cast<long long>(cases.size()); ++ci) {
        const auto [m, k] = cases[static_cast<std::size_t>(ci)];
        // simple xi: m unit atoms, all inside B
        std::vector<CountingMeasure::Atom> atoms;
        std::vector<std::uint32_t> region_symbols;
        for (std::uint64_t s = 0; s < m; ++s) {
            atoms.emplace_back(GroundPoint::symbol(static_cast<std::uint32_t>(s)), 1);
            region_symbols.push_back(static_cast<std::uint32_t>(s));
        }
        const CountingMeasure xi{std::move(atoms)};
        const EventSet event =
            EventSet::count_upper(Region::alphabet_subset(region_symbols), k);

        try {
            const double expected = static_cast<double>(m - k) /
                                    std::sqrt(static_cast<double>(m));
            const double fast = d_T_pi(xi, event).value;

            ReductionOptions exhaustive;
            exhaustive.prune = false;
            const double full = d_T_pi(xi, event, exhaustive).value;

            max_err = std::max(
                {max_err, std::abs(fast - expected), std::abs(full - expected)});
            max_route_diff = std::max(max_route_diff, std::abs(fast - full));
            if (std::abs(fast - expected) > 1e-9 ||
                std::abs(full - expected) > 1e-9)
                ++failures;

            if (m <= 5) {
                const auto res = d_T_pi(xi, event);
                const SphereBounds bb = sphere_max_certified(res.vertices, 2e-3);
                if (!bb.certified || res.value < bb.lower - 1e-9 ||
                    res.value > bb.lower + 2e-3)
                    ++failures;
                max_oracle_excess =
                    std::max(max_oracle_excess, res.value - bb.lower);
            }
        } catch (const std::exception&) {
            ++failures;
        }
    }

    SuiteResult res;
    res.name = "count-upper-closed-form";
    res.pass = failures == 0;
    res.detail = format_detail(
        "max |value - (xi(B)-k)/sqrt(xi(B))| = %.3g, max route diff = %.3g, "
        "max value-oracle = %.3g",
        max_err, max_route_diff, max_oracle_excess);
    return res;
}

SuiteResult sampler_suite(std::uint64_t trials, std::uint64_t seed) {
    SuiteResult res;
    res.name = "sampler-distributions";
    std::string detail;
    bool pass = true;

    const GroundSpace ground = GroundSpace::finite_alphabet(10);
    const Region b = Region::alphabet_subset({0, 1, 2, 3});  // mu(B) = 0.4

    {  // binomial counts on B ~ Binomial(n, t mu(B))
        const std::uint64_t n = 50;
        const double t = 0.5;
        std::vector<std::uint64_t> hist(n + 1, 0);
        for (std::uint64_t j = 0; j < trials; ++j) {
            Rng rng(derive_seed(seed, 0xb1, j));
            ++hist[count(sample_binomial(ground, n, t, rng), b)];
        }
        std::vector<double> pmf(n + 1);
        for (std::uint64_t c = 0; c <= n; ++c)
            pmf[c] = binomial_pmf(c, n, t * b.mu_mass(ground));
        const double p = chi_square_gof_pvalue(hist, pmf, trials);
        pass = pass && p > 0.001;
        detail += format_detail("binomial chi2 p=%.4g", p);
    }

    {  // Poisson counts on B ~ Poisson(t mu(B))
        const double t = 8.0;
        std::vector<std::uint64_t> hist(64, 0);
        for (std::uint64_t j = 0; j < trials; ++j) {
            Rng rng(derive_seed(seed, 0xb2, j));
            const auto c = count(sample_poisson(ground, t, rng), b);
            ++hist[std::min<std::uint64_t>(c, 63)];
        }
        std::vector<double> pmf(64);
        for (std::uint64_t c = 0; c < 64; ++c)
            pmf[c] = poisson_pmf(c, t * b.mu_mass(ground));
        const double p = chi_square_gof_pvalue(hist, pmf, trials);
        pass = pass && p > 0.001;
        detail += format_detail(", poisson chi2 p=%.4g", p);
    }

    {  // disjoint-region Poisson counts are uncorrelated
        const Region b2 = Region::alphabet_subset({4, 5, 6});
        std::vector<double> c1, c2;
        c1.reserve(trials);
        c2.reserve(trials);
        for (std::uint64_t j = 0; j < trials; ++j) {
            Rng rng(derive_seed(seed, 0xb3, j));
            const CountingMeasure m = sample_poisson(ground, 8.0, rng);
            c1.push_back(static_cast<double>(count(m, b)));
            c2.push_back(static_cast<double>(count(m, b2)));
        }
        const double rho = pearson_correlation(c1, c2);
        pass = pass && std::abs(rho) < 0.01;
        detail += format_detail(", poisson disjoint corr=%.4g", rho);
    }

    {  // hat deletion counts within 4 sigma
        const std::uint64_t n = 100000;
        const double t = 0.3;
        Rng rng(derive_seed(seed, 0xb4, 0));
        const HatVector x = sample_hat(ground, n, t, rng);
        std::uint64_t kept = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!x.deleted[i]) ++kept;
        const double mean = static_cast<double>(n) * t;
        const double sigma = std::sqrt(static_cast<double>(n) * t * (1 - t));
        pass = pass && std::abs(static_cast<double>(kept) - mean) < 4 * sigma;
        detail += format_detail(", hat kept z=%.3g",
                                (static_cast<double>(kept) - mean) / sigma);
    }

    res.pass = pass;
    res.detail = detail;
    return res;
}

SuiteResult tv_decrease_suite(std::uint64_t trials, double t,
                              const std::vector<std::uint64_t>& n_grid,
                              std::uint64_t seed) {
    const GroundSpace ground = GroundSpace::finite_alphabet(10);
    std::vector<double> ref;
    for (std::uint64_t c = 0; c < 128; ++c) ref.push_back(poisson_pmf(c, t));

    std::vector<double> tvs;
    for (auto n : n_grid) {
        std::vector<std::uint64_t> hist(n + 1, 0);
        for (std::uint64_t j = 0; j < trials; ++j) {
            Rng rng(derive_seed(seed, 0xc0 + n, j));
            ++hist[sample_binomial(ground, n, t / static_cast<double>(n), rng)
                       .total_mass()];
        }
        tvs.push_back(tv_distance(hist, trials, ref));
    }

    bool pass = true;
    std::string detail = "tv:";
    for (std::size_t i = 0; i < tvs.size(); ++i) {
        if (i > 0 && tvs[i] >= tvs[i - 1]) pass = false;
        detail += format_detail(" %.4g", tvs[i]);
    }

    SuiteResult res;
    res.name = "binomial-to-poisson-tv";
    res.pass = pass;
    res.detail = detail;
    return res;
}

}  // namespace convdist::selftest
